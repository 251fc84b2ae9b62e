#include <canonram/errors.hpp>
#include <canonram/io.hpp>

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

using std::vector;

namespace canonram
{
    namespace
    {
        struct LineReader
        {
            std::istream & in;
            int line = 0;

            // Next non-blank line split into integers; false at end of input.
            auto next(vector<long long> & fields) -> bool
            {
                std::string text;
                while (std::getline(in, text)) {
                    ++line;
                    auto hash = text.find('#');
                    if (hash != std::string::npos)
                        text.erase(hash);
                    std::istringstream words(text);
                    fields.clear();
                    std::string word;
                    while (words >> word) {
                        try {
                            std::size_t used = 0;
                            long long v = std::stoll(word, &used);
                            if (used != word.size())
                                throw std::invalid_argument(word);
                            fields.push_back(v);
                        }
                        catch (const std::logic_error &) {
                            throw ParseError(line, "expected an integer, got '" + word + "'");
                        }
                    }
                    if (! fields.empty())
                        return true;
                }
                return false;
            }
        };

        auto open(const std::string & path) -> std::ifstream
        {
            std::ifstream in(path);
            if (! in)
                throw InvalidInput("cannot open '" + path + "'");
            return in;
        }
    }

    auto parse_graph(std::istream & in) -> Graph
    {
        LineReader reader{in};
        vector<long long> f;
        if (! reader.next(f))
            throw ParseError(reader.line + 1, "missing header 'n m'");
        if (f.size() != 2 || f[0] < 0 || f[1] < 0)
            throw ParseError(reader.line, "header must be 'n m' with non-negative values");
        long long n = f[0], m = f[1];
        if (n > 1'000'000)
            throw ParseError(reader.line, "vertex count too large");

        vector<Edge> edges;
        std::set<Edge> seen;
        for (long long i = 0; i < m; ++i) {
            if (! reader.next(f))
                throw ParseError(reader.line + 1, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
            if (f.size() != 2)
                throw ParseError(reader.line, "edge line must be 'u v'");
            long long u = f[0], v = f[1];
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw ParseError(reader.line, "endpoint out of range");
            if (u == v)
                throw ParseError(reader.line, "self-loop");
            if (u > v)
                throw ParseError(reader.line, "edge must be written with u < v");
            Edge e{static_cast<int>(u), static_cast<int>(v)};
            if (! seen.insert(e).second)
                throw ParseError(reader.line, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
            edges.push_back(e);
        }
        if (reader.next(f))
            throw ParseError(reader.line, "unexpected content after the edge list");
        return Graph(static_cast<int>(n), edges);
    }

    auto read_graph(const std::string & path) -> Graph
    {
        auto in = open(path);
        return parse_graph(in);
    }

    auto write_graph(std::ostream & out, const Graph & g) -> void
    {
        out << g.n() << " " << g.m() << "\n";
        for (auto [u, v] : g.edges())
            out << u << " " << v << "\n";
    }

    auto parse_coloring(std::istream & in) -> EdgeColoring
    {
        LineReader reader{in};
        vector<long long> f;
        if (! reader.next(f))
            throw ParseError(reader.line + 1, "missing header 'N'");
        if (f.size() != 1 || f[0] < 0)
            throw ParseError(reader.line, "header must be a single non-negative 'N'");
        if (f[0] > 20000)
            throw ParseError(reader.line, "N too large for a dense colouring");
        int n = static_cast<int>(f[0]);
        auto c = EdgeColoring::dense(n);
        long long pairs = static_cast<long long>(n) * (n - 1) / 2;
        for (long long i = 0; i < pairs; ++i) {
            if (! reader.next(f))
                throw ParseError(reader.line + 1, "expected " + std::to_string(pairs) + " pairs, found " + std::to_string(i));
            if (f.size() != 3)
                throw ParseError(reader.line, "pair line must be 'u v c'");
            long long u = f[0], v = f[1], col = f[2];
            if (u < 0 || v < 0 || u >= n || v >= n || u == v)
                throw ParseError(reader.line, "bad pair " + std::to_string(u) + " " + std::to_string(v));
            if (col < 1 || col > std::numeric_limits<Color>::max())
                throw ParseError(reader.line, "colour must be a positive 32-bit integer");
            if (c.color(static_cast<int>(u), static_cast<int>(v)) != 0)
                throw ParseError(reader.line, "pair " + std::to_string(u) + " " + std::to_string(v) + " coloured twice");
            c.set(static_cast<int>(u), static_cast<int>(v), static_cast<Color>(col));
        }
        if (reader.next(f))
            throw ParseError(reader.line, "unexpected content after the pair list");
        return c;
    }

    auto read_coloring(const std::string & path) -> EdgeColoring
    {
        auto in = open(path);
        return parse_coloring(in);
    }

    auto write_coloring(std::ostream & out, const EdgeColoring & c) -> void
    {
        out << c.n() << "\n";
        for (int u = 0; u < c.n(); ++u)
            for (int v = u + 1; v < c.n(); ++v)
                out << u << " " << v << " " << c.color(u, v) << "\n";
    }
}
