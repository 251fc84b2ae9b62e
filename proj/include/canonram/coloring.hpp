#pragma once

#include <canonram/graph.hpp>

#include <cstdint>
#include <vector>

namespace canonram
{
    using Color = std::int32_t;

    // Edge-colouring of the complete graph on n vertices. Colours are
    // positive; 0 marks an unset pair while building a dense colouring.
    class EdgeColoring
    {
    public:
        enum class Storage
        {
            Dense,
            Hypercube,
            Lexicographic
        };

        EdgeColoring() = default;

        static auto dense(int n, Color fill = 0) -> EdgeColoring;
        static auto hypercube(int r) -> EdgeColoring;
        static auto lexicographic(int n) -> EdgeColoring;

        auto n() const -> int { return _n; }
        auto storage() const -> Storage { return _storage; }

        auto color(int u, int v) const -> Color
        {
            switch (_storage) {
                case Storage::Hypercube: {
                    unsigned x = static_cast<unsigned>(u ^ v);
                    return _r - (31 - __builtin_clz(x));
                }
                case Storage::Lexicographic:
                    return (u < v ? u : v) + 1;
                case Storage::Dense:
                default:
                    return _dense[static_cast<std::size_t>(u) * _n + v];
            }
        }

        auto set(int u, int v, Color c) -> void;

        // Distinct colours in increasing order.
        auto palette() const -> std::vector<Color>;
        auto palette_size() const -> int;

        // True once every pair carries a positive colour.
        auto complete() const -> bool;

        // Order-preserving relabel of the palette onto 1..k.
        auto normalized() const -> EdgeColoring;

        // Same colouring on the given vertices, renumbered 0..k-1.
        auto restricted(const std::vector<int> & vertices) const -> EdgeColoring;

        // Spanning subgraph of the edges with colour c.
        auto color_class(Color c) const -> Graph;

        friend auto operator==(const EdgeColoring & a, const EdgeColoring & b) -> bool;

    private:
        int _n = 0;
        int _r = 0;
        Storage _storage = Storage::Dense;
        std::vector<Color> _dense;
    };

    auto hypercube_coloring(int r) -> EdgeColoring;
    auto random_coloring(int n, std::int64_t palette, std::uint64_t seed) -> EdgeColoring;
    auto lexicographic_coloring(int n) -> EdgeColoring;
    auto monochromatic_coloring(int n, Color c = 1) -> EdgeColoring;
    auto distinct_coloring(int n) -> EdgeColoring;
}
