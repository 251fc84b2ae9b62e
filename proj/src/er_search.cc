#include <canonram/detect.hpp>
#include <canonram/er_search.hpp>
#include <canonram/errors.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <set>
#include <thread>

using std::optional;
using std::vector;

namespace canonram
{
    namespace
    {
        enum KindMask : unsigned
        {
            MonoBit = 1,
            LexBit = 2,
            RainbowBit = 4
        };

        // One injected copy of a pattern, as edge indices plus its local
        // structure for the lexicographic test.
        struct Copy
        {
            unsigned kinds = 0;
            int vertices = 0;
            vector<int> edge_index;
            vector<std::pair<int, int>> local_edges;
        };

        struct Target
        {
            Graph pattern;
            unsigned kinds;
        };

        using Assignment = vector<std::int8_t>;

        auto check_cap(int n) -> void
        {
            if (n > max_search_n)
                throw InstanceTooLarge("exhaustive colouring search is capped at N = " + std::to_string(max_search_n)
                                       + " (got " + std::to_string(n) + "); larger instances need a distributed search");
            if (n < 1)
                throw InvalidInput("N must be at least 1");
        }

        class Engine
        {
        public:
            Engine(const vector<Target> & targets, int n, const ErOptions & opts) :
                _n(n),
                _symmetry(opts.symmetry)
            {
                build_edge_order();
                build_copies(targets);
            }

            auto edge_count() const -> int { return static_cast<int>(_edges.size()); }

            auto to_coloring(const Assignment & a) const -> EdgeColoring
            {
                auto c = EdgeColoring::dense(_n);
                for (std::size_t i = 0; i < _edges.size(); ++i)
                    c.set(_edges[i].first, _edges[i].second, a[i] + 1);
                return c;
            }

            // Every copy completed at edge e is non-canonical.
            auto clean_at(const Assignment & a, int e) const -> bool
            {
                for (int id : _completing[e])
                    if (canonical(_copies[id], a))
                        return false;
                return true;
            }

            auto allowed_max(const Assignment & a, int e, int used) const -> int
            {
                if (_symmetry && e < _star) {
                    if (e == 0)
                        return 0;
                    return a[e - 1] + 1;
                }
                return used;
            }

            // Lexicographically least clean completion of the prefix a[0..depth).
            auto extend(Assignment & a, int depth, int used) const -> bool
            {
                if (depth == edge_count())
                    return true;
                int hi = allowed_max(a, depth, used);
                int lo = (_symmetry && depth < _star && depth > 0) ? a[depth - 1] : 0;
                for (int col = lo; col <= hi; ++col) {
                    a[depth] = static_cast<std::int8_t>(col);
                    if (clean_at(a, depth) && extend(a, depth + 1, std::max(used, col + 1)))
                        return true;
                }
                return false;
            }

            // All clean prefixes of the given length, in lexicographic order.
            auto prefixes(int length) const -> vector<Assignment>
            {
                vector<Assignment> out;
                Assignment a(edge_count(), 0);
                std::function<void(int, int)> walk = [&](int depth, int used) {
                    if (depth == length) {
                        out.push_back(a);
                        return;
                    }
                    int hi = allowed_max(a, depth, used);
                    int lo = (_symmetry && depth < _star && depth > 0) ? a[depth - 1] : 0;
                    for (int col = lo; col <= hi; ++col) {
                        a[depth] = static_cast<std::int8_t>(col);
                        if (clean_at(a, depth))
                            walk(depth + 1, std::max(used, col + 1));
                    }
                };
                walk(0, 0);
                return out;
            }

            auto used_colours(const Assignment & a, int length) const -> int
            {
                int used = 0;
                for (int i = 0; i < length; ++i)
                    used = std::max(used, a[i] + 1);
                return used;
            }

            // Next restricted-growth string in lexicographic order.
            auto naive_next(Assignment & a) const -> bool
            {
                int m = edge_count();
                for (int i = m - 1; i >= 0; --i) {
                    int hi = allowed_max(a, i, used_colours(a, i));
                    if (a[i] < hi) {
                        ++a[i];
                        for (int j = i + 1; j < m; ++j)
                            a[j] = static_cast<std::int8_t>((_symmetry && j < _star) ? a[j - 1] : 0);
                        return true;
                    }
                }
                return false;
            }

        private:
            int _n;
            bool _symmetry;
            int _star = 0;
            vector<Edge> _edges;
            vector<vector<int>> _index;
            vector<Copy> _copies;
            vector<vector<int>> _completing;

            auto build_edge_order() -> void
            {
                // Colex order (by larger endpoint, then smaller); the
                // symmetry option moves the star of vertex 0 to the front.
                if (_symmetry)
                    for (int v = 1; v < _n; ++v)
                        _edges.emplace_back(0, v);
                _star = static_cast<int>(_edges.size());
                for (int v = 1; v < _n; ++v)
                    for (int u = 0; u < v; ++u)
                        if (! (_symmetry && u == 0))
                            _edges.emplace_back(u, v);
                _index.assign(_n, vector<int>(_n, -1));
                for (std::size_t i = 0; i < _edges.size(); ++i) {
                    _index[_edges[i].first][_edges[i].second] = static_cast<int>(i);
                    _index[_edges[i].second][_edges[i].first] = static_cast<int>(i);
                }
            }

            auto build_copies(const vector<Target> & targets) -> void
            {
                _completing.assign(_edges.size(), {});
                for (const auto & target : targets) {
                    const auto & h = target.pattern;
                    if (h.n() > _n || h.m() == 0)
                        continue;
                    std::set<vector<int>> seen;
                    vector<int> image(h.n(), -1);
                    vector<bool> used(_n, false);
                    std::function<void(int)> inject = [&](int v) {
                        if (v == h.n()) {
                            Copy copy;
                            copy.kinds = target.kinds;
                            copy.vertices = h.n();
                            for (auto [a, b] : h.edges()) {
                                copy.edge_index.push_back(_index[image[a]][image[b]]);
                                copy.local_edges.emplace_back(a, b);
                            }
                            auto key = copy.edge_index;
                            std::sort(key.begin(), key.end());
                            if (! seen.insert(key).second)
                                return;
                            int last = *std::max_element(copy.edge_index.begin(), copy.edge_index.end());
                            _completing[last].push_back(static_cast<int>(_copies.size()));
                            _copies.push_back(std::move(copy));
                            return;
                        }
                        for (int x = 0; x < _n; ++x) {
                            if (used[x])
                                continue;
                            used[x] = true;
                            image[v] = x;
                            inject(v + 1);
                            used[x] = false;
                        }
                    };
                    inject(0);
                }
            }

            static auto canonical(const Copy & copy, const Assignment & a) -> bool
            {
                if (copy.kinds & MonoBit) {
                    bool mono = true;
                    for (int e : copy.edge_index)
                        if (a[e] != a[copy.edge_index[0]]) {
                            mono = false;
                            break;
                        }
                    if (mono)
                        return true;
                }
                if (copy.kinds & RainbowBit) {
                    std::uint64_t seen = 0;
                    bool rainbow = true;
                    for (int e : copy.edge_index) {
                        auto bit = 1ull << a[e];
                        if (seen & bit) {
                            rainbow = false;
                            break;
                        }
                        seen |= bit;
                    }
                    if (rainbow)
                        return true;
                }
                if (copy.kinds & LexBit)
                    return lex(copy, a, (1u << copy.vertices) - 1, 0);
                return false;
            }

            // Peel a vertex whose remaining star is monochromatic in an unused
            // colour; vertices with empty stars cost nothing.
            static auto lex(const Copy & copy, const Assignment & a, unsigned alive, std::uint64_t used) -> bool
            {
                int k = copy.vertices;
                vector<int> star(k, -1);
                vector<bool> mixed(k, false);
                bool any_edge = false;
                for (std::size_t i = 0; i < copy.local_edges.size(); ++i) {
                    auto [x, y] = copy.local_edges[i];
                    if (! ((alive >> x) & 1) || ! ((alive >> y) & 1))
                        continue;
                    any_edge = true;
                    int col = a[copy.edge_index[i]];
                    for (int z : {x, y}) {
                        if (star[z] == -1)
                            star[z] = col;
                        else if (star[z] != col)
                            mixed[z] = true;
                    }
                }
                if (! any_edge)
                    return true;
                for (int v = 0; v < k; ++v) {
                    if (! ((alive >> v) & 1) || star[v] == -1 || mixed[v])
                        continue;
                    auto bit = 1ull << star[v];
                    if (used & bit)
                        continue;
                    if (lex(copy, a, alive & ~(1u << v), used | bit))
                        return true;
                }
                return false;
            }
        };

        auto pruned_search(const Engine & engine, const ErOptions & opts) -> optional<Assignment>
        {
            int m = engine.edge_count();
            if (opts.threads <= 1 || m < 4) {
                Assignment a(m, 0);
                if (engine.extend(a, 0, 0))
                    return a;
                return std::nullopt;
            }

            int depth = (m + 3) / 4;
            auto work = engine.prefixes(depth);
            vector<optional<Assignment>> found(work.size());
            std::atomic<std::size_t> next{0};
            std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};

            auto worker = [&]() {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= work.size() || i > best.load())
                        return;
                    Assignment a = work[i];
                    if (engine.extend(a, depth, engine.used_colours(a, depth))) {
                        found[i] = a;
                        std::size_t cur = best.load();
                        while (i < cur && ! best.compare_exchange_weak(cur, i)) {
                        }
                    }
                }
            };
            vector<std::thread> pool;
            for (int t = 0; t < opts.threads; ++t)
                pool.emplace_back(worker);
            for (auto & t : pool)
                t.join();

            // Prefixes are in lexicographic order, so the least index wins.
            for (auto & f : found)
                if (f)
                    return f;
            return std::nullopt;
        }

        auto naive_search(const Engine & engine, const std::function<bool(const EdgeColoring &)> & canonical) -> optional<Assignment>
        {
            Assignment a(engine.edge_count(), 0);
            do {
                if (! canonical(engine.to_coloring(a)))
                    return a;
            } while (engine.naive_next(a));
            return std::nullopt;
        }

        auto search(const vector<Target> & targets, int n, const ErOptions & opts,
                    const std::function<bool(const EdgeColoring &)> & canonical) -> optional<EdgeColoring>
        {
            check_cap(n);
            Engine engine(targets, n, opts);
            auto a = opts.strategy == Strategy::Naive ? naive_search(engine, canonical) : pruned_search(engine, opts);
            if (! a)
                return std::nullopt;
            return engine.to_coloring(*a);
        }

        auto run_number(const std::string & key, int n_max, const std::function<optional<EdgeColoring>(int)> & avoid) -> ErResult
        {
            check_cap(n_max);
            auto start = std::chrono::steady_clock::now();
            ErResult result;
            result.key = key;
            result.n_max = n_max;
            for (int n = 1; n <= n_max; ++n) {
                auto witness = avoid(n);
                if (! witness) {
                    result.exact = true;
                    result.value = n;
                    break;
                }
                result.witness = std::move(witness);
            }
            if (! result.exact)
                result.value = n_max + 1;
            result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return result;
        }

        auto tree_path_targets(const Graph & tree, int t) -> vector<Target>
        {
            return {Target{tree, MonoBit}, Target{path_graph(t), RainbowBit}};
        }

        auto tree_path_detector(const Graph & tree, int t)
        {
            auto path = path_graph(t);
            return [tree, path](const EdgeColoring & c) {
                return find_copy(tree, c, Kind::Mono).has_value() || find_copy(path, c, Kind::Rainbow).has_value();
            };
        }

        auto check_tree(const Graph & tree, int t) -> void
        {
            if (! is_tree(tree))
                throw NotATree("the pattern is not a tree");
            if (t < 2)
                throw InvalidInput("t must be at least 2");
        }
    }

    auto exists_avoiding_coloring(const Graph & h, int n, const ErOptions & opts) -> optional<EdgeColoring>
    {
        if (h.n() == 0)
            throw InvalidInput("empty pattern");
        check_cap(n);
        // A pattern without edges is trivially monochromatic once it fits.
        if (h.m() == 0)
            return h.n() <= n ? std::nullopt : optional<EdgeColoring>(EdgeColoring::dense(n, 1));
        vector<Target> targets{{h, MonoBit | LexBit | RainbowBit}};
        return search(targets, n, opts, [&](const EdgeColoring & c) { return find_any_canonical(h, c).has_value(); });
    }

    auto exists_tree_path_avoider(const Graph & tree, int t, int n, const ErOptions & opts) -> optional<EdgeColoring>
    {
        check_tree(tree, t);
        check_cap(n);
        if (tree.n() <= n && tree.m() == 0)
            return std::nullopt;
        return search(tree_path_targets(tree, t), n, opts, tree_path_detector(tree, t));
    }

    auto er_number(const Graph & h, int n_max, const ErOptions & opts) -> ErResult
    {
        return run_number(er_key(h, opts), n_max, [&](int n) { return exists_avoiding_coloring(h, n, opts); });
    }

    auto f_number(const Graph & tree, int t, int n_max, const ErOptions & opts) -> ErResult
    {
        check_tree(tree, t);
        return run_number(f_key(tree, t, opts), n_max, [&](int n) { return exists_tree_path_avoider(tree, t, n, opts); });
    }

    auto er_key(const Graph & h, const ErOptions & opts) -> std::string
    {
        return std::string("er:") + (opts.symmetry ? "sym:" : "") + canonical_key(h);
    }

    auto f_key(const Graph & tree, int t, const ErOptions & opts) -> std::string
    {
        return std::string("f:") + (opts.symmetry ? "sym:" : "") + canonical_key(tree) + ":t" + std::to_string(t);
    }
}
