#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace canonram
{
    using Edge = std::pair<int, int>;

    // Simple undirected graph on vertices 0..n-1. Immutable once built.
    class Graph
    {
    public:
        Graph() = default;
        Graph(int n, const std::vector<Edge> & edges);

        auto n() const -> int { return _n; }
        auto m() const -> int { return static_cast<int>(_edges.size()); }
        auto edges() const -> const std::vector<Edge> & { return _edges; }
        auto neighbours(int v) const -> const std::vector<int> & { return _adj[v]; }
        auto degree(int v) const -> int { return static_cast<int>(_adj[v].size()); }
        auto adjacent(int u, int v) const -> bool { return _matrix[static_cast<std::size_t>(u) * _n + v] != 0; }
        auto max_degree() const -> int;

        auto induced(const std::vector<int> & vertices) const -> Graph;
        auto relabelled(const std::vector<int> & perm) const -> Graph;

        friend auto operator==(const Graph & a, const Graph & b) -> bool
        {
            return a._n == b._n && a._edges == b._edges;
        }

    private:
        int _n = 0;
        std::vector<Edge> _edges;
        std::vector<std::vector<int>> _adj;
        std::vector<std::uint8_t> _matrix;
    };

    using Rational = boost::rational<std::int64_t>;

    struct DegeneracyResult
    {
        std::vector<int> order;
        int degeneracy = 0;
    };

    struct GraphStats
    {
        int n = 0;
        int edge_count = 0;
        Rational avg_degree{0};
        int max_degree = 0;
        bool is_bipartite = true;
    };

    auto degeneracy_ordering(const Graph & g) -> DegeneracyResult;

    // Exact, branch and bound. Both throw InstanceTooLarge above 32 vertices.
    auto chromatic_number(const Graph & g) -> int;
    auto optimal_colouring(const Graph & g) -> std::vector<int>;
    auto vertex_cover_number(const Graph & g) -> int;

    auto stats(const Graph & g) -> GraphStats;

    // Two-colouring by BFS; empty if the graph has an odd cycle.
    auto bipartition(const Graph & g) -> std::vector<int>;
    auto is_connected(const Graph & g) -> bool;
    auto is_tree(const Graph & g) -> bool;

    // Isomorphism-invariant certificate: the lexicographically least upper
    // triangle over labellings that sort vertices by degree.
    auto canonical_form(const Graph & g) -> std::vector<std::uint8_t>;
    auto canonical_key(const Graph & g) -> std::string;

    auto complete_graph(int n) -> Graph;
    auto path_graph(int n) -> Graph;
    auto cycle_graph(int n) -> Graph;
    auto star_graph(int leaves) -> Graph;
    auto complete_bipartite(int a, int b) -> Graph;
}
