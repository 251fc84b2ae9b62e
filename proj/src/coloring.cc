#include <canonram/coloring.hpp>
#include <canonram/errors.hpp>

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_map>

using std::vector;

namespace canonram
{
    auto EdgeColoring::dense(int n, Color fill) -> EdgeColoring
    {
        if (n < 0)
            throw InvalidInput("negative vertex count");
        EdgeColoring c;
        c._n = n;
        c._storage = Storage::Dense;
        c._dense.assign(static_cast<std::size_t>(n) * n, fill);
        for (int v = 0; v < n; ++v)
            c._dense[static_cast<std::size_t>(v) * n + v] = 0;
        return c;
    }

    auto EdgeColoring::hypercube(int r) -> EdgeColoring
    {
        EdgeColoring c;
        c._n = 1 << r;
        c._r = r;
        c._storage = Storage::Hypercube;
        return c;
    }

    auto EdgeColoring::lexicographic(int n) -> EdgeColoring
    {
        EdgeColoring c;
        c._n = n;
        c._storage = Storage::Lexicographic;
        return c;
    }

    auto EdgeColoring::set(int u, int v, Color c) -> void
    {
        if (_storage != Storage::Dense)
            throw InvalidInput("only dense colourings can be modified");
        if (u == v || u < 0 || v < 0 || u >= _n || v >= _n)
            throw InvalidInput("bad pair " + std::to_string(u) + " " + std::to_string(v));
        _dense[static_cast<std::size_t>(u) * _n + v] = c;
        _dense[static_cast<std::size_t>(v) * _n + u] = c;
    }

    auto EdgeColoring::palette() const -> vector<Color>
    {
        if (_n < 2)
            return {};
        switch (_storage) {
            case Storage::Hypercube: {
                vector<Color> p(_r);
                for (int i = 0; i < _r; ++i)
                    p[i] = i + 1;
                return p;
            }
            case Storage::Lexicographic: {
                vector<Color> p(_n - 1);
                for (int i = 0; i < _n - 1; ++i)
                    p[i] = i + 1;
                return p;
            }
            case Storage::Dense:
            default: {
                vector<Color> p;
                for (int u = 0; u < _n; ++u)
                    for (int v = u + 1; v < _n; ++v)
                        p.push_back(color(u, v));
                std::sort(p.begin(), p.end());
                p.erase(std::unique(p.begin(), p.end()), p.end());
                return p;
            }
        }
    }

    auto EdgeColoring::palette_size() const -> int
    {
        return static_cast<int>(palette().size());
    }

    auto EdgeColoring::complete() const -> bool
    {
        if (_storage != Storage::Dense)
            return true;
        for (int u = 0; u < _n; ++u)
            for (int v = u + 1; v < _n; ++v)
                if (color(u, v) <= 0)
                    return false;
        return true;
    }

    auto EdgeColoring::normalized() const -> EdgeColoring
    {
        auto p = palette();
        std::unordered_map<Color, Color> rank;
        for (std::size_t i = 0; i < p.size(); ++i)
            rank[p[i]] = static_cast<Color>(i + 1);
        auto out = dense(_n);
        for (int u = 0; u < _n; ++u)
            for (int v = u + 1; v < _n; ++v)
                out.set(u, v, rank.at(color(u, v)));
        return out;
    }

    auto EdgeColoring::restricted(const vector<int> & vertices) const -> EdgeColoring
    {
        int k = static_cast<int>(vertices.size());
        auto out = dense(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                out.set(i, j, color(vertices[i], vertices[j]));
        return out;
    }

    auto EdgeColoring::color_class(Color c) const -> Graph
    {
        vector<Edge> es;
        for (int u = 0; u < _n; ++u)
            for (int v = u + 1; v < _n; ++v)
                if (color(u, v) == c)
                    es.emplace_back(u, v);
        return Graph(_n, es);
    }

    auto operator==(const EdgeColoring & a, const EdgeColoring & b) -> bool
    {
        if (a._n != b._n)
            return false;
        for (int u = 0; u < a._n; ++u)
            for (int v = u + 1; v < a._n; ++v)
                if (a.color(u, v) != b.color(u, v))
                    return false;
        return true;
    }

    auto hypercube_coloring(int r) -> EdgeColoring
    {
        if (r < 1)
            throw InvalidInput("hypercube dimension must be at least 1");
        if (r > 20)
            throw InstanceTooLarge("hypercube dimension is limited to 20, got " + std::to_string(r));
        return EdgeColoring::hypercube(r);
    }

    auto random_coloring(int n, std::int64_t palette, std::uint64_t seed) -> EdgeColoring
    {
        if (palette < 1)
            throw InvalidInput("palette must be at least 1");
        if (palette > std::numeric_limits<Color>::max())
            throw InvalidInput("palette exceeds the colour id range");
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> pick(1, palette);
        auto c = EdgeColoring::dense(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                c.set(u, v, static_cast<Color>(pick(rng)));
        return c;
    }

    auto lexicographic_coloring(int n) -> EdgeColoring
    {
        if (n < 2)
            throw InvalidInput("lexicographic colouring needs at least 2 vertices");
        return EdgeColoring::lexicographic(n);
    }

    auto monochromatic_coloring(int n, Color c) -> EdgeColoring
    {
        return EdgeColoring::dense(n, c);
    }

    auto distinct_coloring(int n) -> EdgeColoring
    {
        auto c = EdgeColoring::dense(n);
        Color next = 1;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                c.set(u, v, next++);
        return c;
    }
}
