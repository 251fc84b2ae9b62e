#pragma once

#include <stdexcept>
#include <string>

namespace canonram
{
    class Error : public std::runtime_error
    {
    public:
        explicit Error(const std::string & message) :
            std::runtime_error(message)
        {
        }
    };

#define CANONRAM_ERROR(Name)                        \
    class Name : public Error                       \
    {                                               \
    public:                                         \
        explicit Name(const std::string & message) : \
            Error(#Name ": " + message)             \
        {                                           \
        }                                           \
    }

    CANONRAM_ERROR(InvalidInput);
    CANONRAM_ERROR(InstanceTooLarge);
    CANONRAM_ERROR(UnknownName);
    CANONRAM_ERROR(MalformedCopy);
    CANONRAM_ERROR(NotATree);
    CANONRAM_ERROR(CacheCorrupt);
    CANONRAM_ERROR(PartsMismatch);
    CANONRAM_ERROR(StepFailed);
    CANONRAM_ERROR(HypothesisUnmet);
    CANONRAM_ERROR(NotATournament);
    CANONRAM_ERROR(ConnectorsExhausted);
    CANONRAM_ERROR(PreconditionFailed);
    CANONRAM_ERROR(VerificationFailed);

#undef CANONRAM_ERROR

    // Raised by the text parsers; carries the 1-based line that failed.
    class ParseError : public Error
    {
    public:
        ParseError(int line, const std::string & message) :
            Error("line " + std::to_string(line) + ": " + message),
            _line(line)
        {
        }

        auto line() const -> int { return _line; }

    private:
        int _line;
    };
}
