#include <canonram/errors.hpp>
#include <canonram/graph.hpp>

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

using std::vector;

namespace canonram
{
    Graph::Graph(int n, const vector<Edge> & edges) :
        _n(n)
    {
        if (n < 0)
            throw InvalidInput("negative vertex count");
        _adj.resize(n);
        _matrix.assign(static_cast<std::size_t>(n) * n, 0);
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw InvalidInput("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
            if (u == v)
                throw InvalidInput("self-loop at vertex " + std::to_string(u));
            if (u > v)
                std::swap(u, v);
            if (_matrix[static_cast<std::size_t>(u) * n + v])
                throw InvalidInput("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
            _matrix[static_cast<std::size_t>(u) * n + v] = 1;
            _matrix[static_cast<std::size_t>(v) * n + u] = 1;
            _edges.emplace_back(u, v);
        }
        std::sort(_edges.begin(), _edges.end());
        for (auto [u, v] : _edges) {
            _adj[u].push_back(v);
            _adj[v].push_back(u);
        }
        for (auto & a : _adj)
            std::sort(a.begin(), a.end());
    }

    auto Graph::max_degree() const -> int
    {
        int best = 0;
        for (int v = 0; v < _n; ++v)
            best = std::max(best, degree(v));
        return best;
    }

    auto Graph::induced(const vector<int> & vertices) const -> Graph
    {
        vector<int> index(_n, -1);
        for (std::size_t i = 0; i < vertices.size(); ++i)
            index[vertices[i]] = static_cast<int>(i);
        vector<Edge> es;
        for (auto [u, v] : _edges)
            if (index[u] >= 0 && index[v] >= 0)
                es.emplace_back(index[u], index[v]);
        return Graph(static_cast<int>(vertices.size()), es);
    }

    auto Graph::relabelled(const vector<int> & perm) const -> Graph
    {
        vector<Edge> es;
        es.reserve(_edges.size());
        for (auto [u, v] : _edges)
            es.emplace_back(perm[u], perm[v]);
        return Graph(_n, es);
    }

    auto degeneracy_ordering(const Graph & g) -> DegeneracyResult
    {
        int n = g.n();
        vector<int> deg(n);
        vector<bool> removed(n, false);
        for (int v = 0; v < n; ++v)
            deg[v] = g.degree(v);

        DegeneracyResult result;
        vector<int> peel;
        for (int step = 0; step < n; ++step) {
            int best = -1;
            for (int v = 0; v < n; ++v)
                if (! removed[v] && (best == -1 || deg[v] < deg[best]))
                    best = v;
            result.degeneracy = std::max(result.degeneracy, deg[best]);
            removed[best] = true;
            peel.push_back(best);
            for (int w : g.neighbours(best))
                if (! removed[w])
                    --deg[w];
        }
        result.order.assign(peel.rbegin(), peel.rend());
        return result;
    }

    namespace
    {
        auto masks_of(const Graph & g) -> vector<std::uint32_t>
        {
            vector<std::uint32_t> adj(g.n(), 0);
            for (auto [u, v] : g.edges()) {
                adj[u] |= 1u << v;
                adj[v] |= 1u << u;
            }
            return adj;
        }

        struct Colourer
        {
            int n;
            vector<std::uint32_t> adj;
            vector<int> colour;
            vector<int> best_colouring;
            int best;

            auto search(int coloured, int used) -> void
            {
                if (used >= best)
                    return;
                if (coloured == n) {
                    best = used;
                    best_colouring = colour;
                    return;
                }

                // DSATUR branching: most saturated, then highest degree.
                int pick = -1, pick_sat = -1, pick_deg = -1;
                for (int v = 0; v < n; ++v) {
                    if (colour[v] >= 0)
                        continue;
                    std::uint32_t seen = 0;
                    int deg = 0;
                    for (std::uint32_t m = adj[v]; m; m &= m - 1) {
                        int w = std::countr_zero(m);
                        if (colour[w] >= 0)
                            seen |= 1u << colour[w];
                        else
                            ++deg;
                    }
                    int sat = std::popcount(seen);
                    if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                        pick = v;
                        pick_sat = sat;
                        pick_deg = deg;
                    }
                }

                for (int c = 0; c <= used; ++c) {
                    bool ok = true;
                    for (std::uint32_t m = adj[pick]; m; m &= m - 1)
                        if (colour[std::countr_zero(m)] == c) {
                            ok = false;
                            break;
                        }
                    if (! ok)
                        continue;
                    colour[pick] = c;
                    search(coloured + 1, std::max(used, c + 1));
                    colour[pick] = -1;
                }
            }
        };

        auto max_independent(std::uint32_t candidates, const vector<std::uint32_t> & adj, int size, int & best) -> void
        {
            if (candidates == 0) {
                best = std::max(best, size);
                return;
            }
            if (size + std::popcount(candidates) <= best)
                return;
            int pick = -1, pick_deg = -1;
            for (std::uint32_t m = candidates; m; m &= m - 1) {
                int v = std::countr_zero(m);
                int d = std::popcount(adj[v] & candidates);
                if (d > pick_deg) {
                    pick = v;
                    pick_deg = d;
                }
            }
            if (pick_deg == 0) {
                best = std::max(best, size + std::popcount(candidates));
                return;
            }
            max_independent(candidates & ~(1u << pick) & ~adj[pick], adj, size + 1, best);
            max_independent(candidates & ~(1u << pick), adj, size, best);
        }
    }

    auto optimal_colouring(const Graph & g) -> vector<int>
    {
        if (g.n() > 32)
            throw InstanceTooLarge("exact colouring is limited to 32 vertices, got " + std::to_string(g.n()));
        Colourer c{g.n(), masks_of(g), vector<int>(g.n(), -1), {}, g.n() + 1};
        c.search(0, 0);
        if (g.n() == 0)
            return {};
        return c.best_colouring;
    }

    auto chromatic_number(const Graph & g) -> int
    {
        auto colouring = optimal_colouring(g);
        int k = 0;
        for (int c : colouring)
            k = std::max(k, c + 1);
        return k;
    }

    auto vertex_cover_number(const Graph & g) -> int
    {
        if (g.n() > 32)
            throw InstanceTooLarge("exact vertex cover is limited to 32 vertices, got " + std::to_string(g.n()));
        auto adj = masks_of(g);
        std::uint32_t all = g.n() == 32 ? ~0u : ((1u << g.n()) - 1);
        int best = 0;
        max_independent(all, adj, 0, best);
        return g.n() - best;
    }

    auto bipartition(const Graph & g) -> vector<int>
    {
        vector<int> side(g.n(), -1);
        for (int s = 0; s < g.n(); ++s) {
            if (side[s] >= 0)
                continue;
            side[s] = 0;
            std::queue<int> q;
            q.push(s);
            while (! q.empty()) {
                int v = q.front();
                q.pop();
                for (int w : g.neighbours(v)) {
                    if (side[w] < 0) {
                        side[w] = 1 - side[v];
                        q.push(w);
                    }
                    else if (side[w] == side[v])
                        return {};
                }
            }
        }
        return side;
    }

    auto stats(const Graph & g) -> GraphStats
    {
        GraphStats s;
        s.n = g.n();
        s.edge_count = g.m();
        s.avg_degree = g.n() == 0 ? Rational(0) : Rational(2 * g.m(), g.n());
        s.max_degree = g.max_degree();
        s.is_bipartite = g.n() == 0 || ! bipartition(g).empty();
        return s;
    }

    auto is_connected(const Graph & g) -> bool
    {
        if (g.n() == 0)
            return true;
        vector<bool> seen(g.n(), false);
        vector<int> stack{0};
        seen[0] = true;
        int count = 1;
        while (! stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbours(v))
                if (! seen[w]) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == g.n();
    }

    auto is_tree(const Graph & g) -> bool
    {
        return g.n() >= 1 && g.m() == g.n() - 1 && is_connected(g);
    }

    auto canonical_form(const Graph & g) -> vector<std::uint8_t>
    {
        int n = g.n();
        if (n > 12)
            throw InstanceTooLarge("canonical labelling is limited to 12 vertices");

        // Invariant cell key: degree, then the sorted neighbour degrees.
        vector<vector<int>> key(n);
        for (int v = 0; v < n; ++v) {
            key[v].push_back(g.degree(v));
            vector<int> nd;
            for (int w : g.neighbours(v))
                nd.push_back(g.degree(w));
            std::sort(nd.begin(), nd.end());
            key[v].insert(key[v].end(), nd.begin(), nd.end());
        }
        vector<int> by_key(n);
        std::iota(by_key.begin(), by_key.end(), 0);
        std::stable_sort(by_key.begin(), by_key.end(), [&](int a, int b) { return key[a] < key[b]; });

        // Position p may take any vertex whose key equals the key at rank p.
        vector<vector<int>> allowed(n);
        for (int p = 0; p < n; ++p)
            for (int v = 0; v < n; ++v)
                if (key[v] == key[by_key[p]])
                    allowed[p].push_back(v);

        // Bits are laid out column by column: for p = 1..n-1, rows 0..p-1.
        std::size_t total = static_cast<std::size_t>(n) * (n - (n > 0 ? 1 : 0)) / 2;
        vector<std::uint8_t> best(total, 2), current(total, 0);
        vector<int> placed(n, -1);
        vector<bool> used(n, false);
        bool have_best = false;

        std::function<void(int, std::size_t, bool)> go = [&](int p, std::size_t offset, bool tight) {
            if (p == n) {
                if (! have_best || current < best) {
                    best = current;
                    have_best = true;
                }
                return;
            }
            for (int v : allowed[p]) {
                if (used[v])
                    continue;
                bool now_tight = tight;
                bool worse = false;
                for (int q = 0; q < p; ++q) {
                    std::uint8_t bit = g.adjacent(placed[q], v) ? 1 : 0;
                    current[offset + q] = bit;
                    if (now_tight && have_best) {
                        if (bit > best[offset + q]) {
                            worse = true;
                            break;
                        }
                        if (bit < best[offset + q])
                            now_tight = false;
                    }
                }
                if (worse)
                    continue;
                used[v] = true;
                placed[p] = v;
                go(p + 1, offset + p, now_tight && have_best);
                used[v] = false;
            }
        };
        go(0, 0, true);
        return best;
    }

    auto canonical_key(const Graph & g) -> std::string
    {
        std::ostringstream out;
        if (g.n() <= 10) {
            auto bits = canonical_form(g);
            out << "g" << g.n() << ":";
            unsigned acc = 0;
            int k = 0;
            const char * hex = "0123456789abcdef";
            for (auto b : bits) {
                acc = (acc << 1) | b;
                if (++k == 4) {
                    out << hex[acc];
                    acc = 0;
                    k = 0;
                }
            }
            if (k > 0)
                out << hex[acc << (4 - k)];
        }
        else {
            out << "raw" << g.n() << ":";
            for (auto [u, v] : g.edges())
                out << u << "-" << v << ",";
        }
        return out.str();
    }

    auto complete_graph(int n) -> Graph
    {
        vector<Edge> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                es.emplace_back(u, v);
        return Graph(n, es);
    }

    auto path_graph(int n) -> Graph
    {
        vector<Edge> es;
        for (int v = 0; v + 1 < n; ++v)
            es.emplace_back(v, v + 1);
        return Graph(n, es);
    }

    auto cycle_graph(int n) -> Graph
    {
        if (n < 3)
            throw InvalidInput("a cycle needs at least 3 vertices");
        vector<Edge> es;
        for (int v = 0; v < n; ++v)
            es.emplace_back(v, (v + 1) % n);
        return Graph(n, es);
    }

    auto star_graph(int leaves) -> Graph
    {
        vector<Edge> es;
        for (int v = 1; v <= leaves; ++v)
            es.emplace_back(0, v);
        return Graph(leaves + 1, es);
    }

    auto complete_bipartite(int a, int b) -> Graph
    {
        vector<Edge> es;
        for (int u = 0; u < a; ++u)
            for (int v = 0; v < b; ++v)
                es.emplace_back(u, a + v);
        return Graph(a + b, es);
    }
}
