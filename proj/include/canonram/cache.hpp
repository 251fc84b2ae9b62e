#pragma once

#include <canonram/er_search.hpp>

#include <mutex>
#include <optional>
#include <string>

namespace canonram
{
    // Persistent ER / f results in one JSON file, keyed by er_key / f_key.
    class ResultCache
    {
    public:
        explicit ResultCache(std::string path);

        // Path from the given flag value, else $CANONRAM_CACHE, else empty.
        static auto resolve_path(const std::string & flag) -> std::string;

        // An exact value answers any n_max at or above value - 1; a lower
        // bound answers only the n_max it was computed for.
        auto lookup(const std::string & key, int n_max) -> std::optional<ErResult>;
        auto store(const ErResult & result, int pattern_n) -> void;

        // Set when the file existed but could not be parsed.
        auto corrupt_message() const -> const std::string & { return _corrupt; }

    private:
        std::string _path;
        std::string _corrupt;
        std::mutex _mutex;
    };
}
