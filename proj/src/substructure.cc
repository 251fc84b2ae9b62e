#include <canonram/errors.hpp>
#include <canonram/substructure.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace canonram
{
    using std::optional;
    using std::vector;

    namespace
    {
        auto pair_text(int x, int y) -> std::string
        {
            return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
        }

        // Partial substructure grown one vertex at a time. Every state it
        // reaches satisfies clauses ii and iii and the part-size and |R| < t
        // parts of clause i; only |U| > N/10 is left to the caller.
        class Builder
        {
        public:
            Builder(const EdgeColoring & c, int s, int t) :
                _c(&c), _s(s), _t(t), _part_of(c.n(), -1)
            {
            }

            auto size() const -> int { return static_cast<int>(_members.size()); }
            auto part_count() const -> int { return static_cast<int>(_parts.size()); }
            auto part_size(int p) const -> int { return static_cast<int>(_parts[p].size()); }

            auto used_colour(Color col) const -> bool
            {
                return std::find(_colours.begin(), _colours.end(), col) != _colours.end() || _rogue.count(col);
            }

            // Adds v to part p (p == part_count() opens a new part of colour col).
            auto added(int v, int p, Color col) const -> optional<Builder>
            {
                const auto & c = *_c;
                Builder b = *this;
                if (p == part_count()) {
                    if (used_colour(col))
                        return std::nullopt;
                    b._parts.emplace_back();
                    b._colours.push_back(col);
                }
                else if (part_size(p) + 1 >= 2 * _s)
                    return std::nullopt;
                Color cv = b._colours[p];

                for (int y : _members) {
                    int q = _part_of[y];
                    if (q == p)
                        continue;
                    Color e = c.color(v, y);
                    if (e == cv || e == b._colours[q])
                        continue;
                    if (std::find(b._colours.begin(), b._colours.end(), e) != b._colours.end())
                        return std::nullopt;
                    b._rogue.insert(e);
                }
                if (static_cast<int>(b._rogue.size()) >= _t)
                    return std::nullopt;

                // v leaves the pool of connectors for the existing pairs.
                int m = size();
                for (int i = 0; i < m; ++i) {
                    int x = _members[i];
                    if (c.color(x, v) != _colours[_part_of[x]])
                        continue;
                    for (int j = i; j < m; ++j) {
                        int y = _members[j];
                        if (c.color(y, v) != _colours[_part_of[y]])
                            continue;
                        if (--b._count[i][j] < _t)
                            return std::nullopt;
                    }
                }

                b._part_of[v] = p;
                b._parts[p].push_back(v);
                b._members.push_back(v);
                for (auto & row : b._count)
                    row.push_back(0);
                b._count.emplace_back(m + 1, 0);
                for (int i = 0; i <= m; ++i) {
                    int x = b._members[i];
                    Color cx = b._colours[b._part_of[x]];
                    int k = 0;
                    for (int z = 0; z < c.n(); ++z)
                        if (b._part_of[z] < 0 && c.color(x, z) == cx && c.color(v, z) == cv)
                            ++k;
                    if (k < _t)
                        return std::nullopt;
                    b._count[i][m] = k;
                }
                return b;
            }

            auto build() const -> Substructure
            {
                return make_substructure(*_c, _parts, _colours, vector<Color>(_rogue.begin(), _rogue.end()));
            }

        private:
            const EdgeColoring * _c;
            int _s;
            int _t;
            vector<int> _part_of;
            vector<int> _members;
            vector<vector<int>> _parts;
            vector<Color> _colours;
            std::set<Color> _rogue;
            // _count[i][j], i <= j: connectors outside U for members i and j.
            vector<vector<int>> _count;
        };

        auto colour_degrees(const EdgeColoring & c, int v) -> vector<std::pair<int, Color>>
        {
            std::map<Color, int> count;
            for (int w = 0; w < c.n(); ++w)
                if (w != v)
                    ++count[c.color(v, w)];
            vector<std::pair<int, Color>> out;
            for (auto [col, k] : count)
                out.emplace_back(-k, col);
            std::sort(out.begin(), out.end());
            return out;
        }

        auto large_enough(int u, int n) -> bool
        {
            return u > 0 && 10 * u > n;
        }
    }

    Orientation::Orientation(int n) :
        _n(n), _m(static_cast<std::size_t>(n) * n, 0)
    {
    }

    auto Orientation::set(int x, int y, int d) -> void
    {
        _m[static_cast<std::size_t>(x) * _n + y] = static_cast<std::int8_t>(d);
        _m[static_cast<std::size_t>(y) * _n + x] = static_cast<std::int8_t>(-d);
    }

    auto Substructure::united() const -> vector<int>
    {
        vector<int> u;
        for (const auto & p : parts)
            u.insert(u.end(), p.begin(), p.end());
        std::sort(u.begin(), u.end());
        return u;
    }

    auto Substructure::is_rogue_color(Color c) const -> bool
    {
        return std::binary_search(rogue_colors.begin(), rogue_colors.end(), c);
    }

    auto make_substructure(const EdgeColoring & host, const vector<vector<int>> & parts, const vector<Color> & part_colors,
                           const vector<Color> & rogue_colors) -> Substructure
    {
        if (parts.size() != part_colors.size())
            throw InvalidInput("one colour is needed per part");
        Substructure sub;
        sub.host = host;
        sub.parts = parts;
        sub.part_colors = part_colors;
        sub.rogue_colors = rogue_colors;
        std::sort(sub.rogue_colors.begin(), sub.rogue_colors.end());
        sub.rogue_colors.erase(std::unique(sub.rogue_colors.begin(), sub.rogue_colors.end()), sub.rogue_colors.end());
        sub.part_of.assign(host.n(), -1);
        for (std::size_t p = 0; p < parts.size(); ++p)
            for (int v : parts[p]) {
                if (v < 0 || v >= host.n())
                    throw InvalidInput("part vertex " + std::to_string(v) + " is outside the host");
                if (sub.part_of[v] >= 0)
                    throw InvalidInput("vertex " + std::to_string(v) + " lies in two parts");
                sub.part_of[v] = static_cast<int>(p);
            }
        sub.orientation = Orientation(host.n());
        auto u = sub.united();
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = i + 1; j < u.size(); ++j) {
                int x = u[i];
                int y = u[j];
                if (! sub.cross(x, y))
                    continue;
                Color e = host.color(x, y);
                if (e == part_colors[sub.part_of[x]])
                    sub.orientation.set(x, y, 1);
                else if (e == part_colors[sub.part_of[y]])
                    sub.orientation.set(x, y, -1);
            }
        return sub;
    }

    auto restrict_substructure(const Substructure & sub, const vector<int> & keep) -> Substructure
    {
        std::set<int> kept(keep.begin(), keep.end());
        Substructure out;
        out.host = sub.host;
        out.rogue_colors = sub.rogue_colors;
        out.orientation = sub.orientation;
        out.part_of.assign(sub.host.n(), -1);
        for (std::size_t p = 0; p < sub.parts.size(); ++p) {
            vector<int> part;
            for (int v : sub.parts[p])
                if (kept.count(v))
                    part.push_back(v);
            if (part.empty())
                continue;
            for (int v : part)
                out.part_of[v] = static_cast<int>(out.parts.size());
            out.parts.push_back(part);
            out.part_colors.push_back(sub.part_colors[p]);
        }
        return out;
    }

    auto verify_substructure(const Substructure & sub, int s, int t) -> CheckReport
    {
        CheckReport r;
        const auto & c = sub.host;
        int n = c.n();
        auto u = sub.united();

        if (! large_enough(static_cast<int>(u.size()), n))
            r.add("i", "|U| = " + std::to_string(u.size()) + " is not above N/10 for N = " + std::to_string(n));
        if (static_cast<int>(sub.rogue_colors.size()) >= t)
            r.add("i", "|R| = " + std::to_string(sub.rogue_colors.size()) + " is not below t = " + std::to_string(t));
        for (std::size_t p = 0; p < sub.parts.size(); ++p) {
            if (sub.parts[p].empty())
                r.add("i", "part " + std::to_string(p) + " is empty");
            if (static_cast<int>(sub.parts[p].size()) >= 2 * s)
                r.add("i", "part " + std::to_string(p) + " has " + std::to_string(sub.parts[p].size()) + " vertices, not below 2s");
        }
        if (std::adjacent_find(u.begin(), u.end()) != u.end())
            r.add("i", "a vertex lies in two parts");
        for (std::size_t p = 0; p < sub.part_colors.size(); ++p) {
            Color col = sub.part_colors[p];
            if (sub.is_rogue_color(col))
                r.add("ii", "part colour " + std::to_string(col) + " is also rogue");
            for (std::size_t q = p + 1; q < sub.part_colors.size(); ++q)
                if (sub.part_colors[q] == col)
                    r.add("ii", "parts " + std::to_string(p) + " and " + std::to_string(q) + " share colour " + std::to_string(col));
        }

        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                int d = sub.orientation.dir(x, y);
                if (! sub.cross(x, y)) {
                    if (d != 0)
                        r.add("ii", "pair " + pair_text(x, y) + " is oriented but not a cross-part pair");
                    continue;
                }
                Color e = c.color(x, y);
                Color cx = sub.part_colors[sub.part_of[x]];
                Color cy = sub.part_colors[sub.part_of[y]];
                if (d > 0 && e != cx)
                    r.add("ii", pair_text(x, y) + " is directed x -> y but has colour " + std::to_string(e));
                else if (d < 0 && e != cy)
                    r.add("ii", pair_text(x, y) + " is directed y -> x but has colour " + std::to_string(e));
                else if (d == 0 && ! sub.is_rogue_color(e))
                    r.add("ii", pair_text(x, y) + " is undirected but colour " + std::to_string(e) + " is not rogue");
            }

        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = i; j < u.size(); ++j) {
                int x = u[i];
                int y = u[j];
                Color cx = sub.part_colors[sub.part_of[x]];
                Color cy = sub.part_colors[sub.part_of[y]];
                int k = 0;
                for (int z = 0; z < n; ++z)
                    if (! sub.in_u(z) && c.color(x, z) == cx && c.color(y, z) == cy)
                        ++k;
                if (k < t)
                    r.add("iii", "pair " + pair_text(x, y) + " has " + std::to_string(k) + " connectors, fewer than t");
            }
        return r;
    }

    auto find_substructure(const EdgeColoring & c, int s, int t, SearchMode mode) -> optional<Substructure>
    {
        if (s < 1 || t < 1)
            throw InvalidInput("find_substructure needs s >= 1 and t >= 1");
        int n = c.n();
        auto palette = c.palette();

        auto accept = [&](const Builder & b) -> optional<Substructure> {
            if (! large_enough(b.size(), n))
                return std::nullopt;
            auto sub = b.build();
            if (! verify_substructure(sub, s, t).ok())
                throw VerificationFailed("substructure search produced an instance that does not verify");
            return sub;
        };

        if (mode == SearchMode::Exhaustive) {
            if (n > 10)
                throw InstanceTooLarge("exhaustive substructure search is limited to N <= 10");
            std::int64_t budget = 2'000'000;
            std::function<optional<Substructure>(const Builder &, int)> dfs = [&](const Builder & b, int v) -> optional<Substructure> {
                if (--budget < 0)
                    return std::nullopt;
                if (v == n)
                    return accept(b);
                for (int p = 0; p < b.part_count(); ++p)
                    if (auto next = b.added(v, p, 0))
                        if (auto found = dfs(*next, v + 1))
                            return found;
                for (Color col : palette)
                    if (auto next = b.added(v, b.part_count(), col))
                        if (auto found = dfs(*next, v + 1))
                            return found;
                return dfs(b, v + 1);
            };
            return dfs(Builder(c, s, t), 0);
        }

        vector<std::pair<int, int>> ranked;
        for (int v = 0; v < n; ++v) {
            auto degs = colour_degrees(c, v);
            ranked.emplace_back(degs.empty() ? 0 : degs.front().first, v);
        }
        std::sort(ranked.begin(), ranked.end());
        Builder b(c, s, t);
        for (auto [key, v] : ranked) {
            optional<Builder> next;
            for (int p = 0; p < b.part_count() && ! next; ++p)
                next = b.added(v, p, 0);
            for (auto [k, col] : colour_degrees(c, v)) {
                if (next)
                    break;
                next = b.added(v, b.part_count(), col);
            }
            if (next)
                b = *next;
        }
        return accept(b);
    }

    auto rogue_degree(int v, const vector<int> & within, const Substructure & sub) -> int
    {
        int d = 0;
        for (int w : within)
            if (w != v && sub.rogue(v, w))
                ++d;
        return d;
    }

    auto max_rogue(const vector<int> & within, const Substructure & sub) -> int
    {
        int best = 0;
        for (int v : within)
            best = std::max(best, rogue_degree(v, within, sub));
        return best;
    }

    auto conflict_set(const vector<int> & vertices, const Substructure & sub) -> vector<int>
    {
        std::set<int> parts;
        for (int v : vertices)
            if (sub.in_u(v))
                parts.insert(sub.part_of[v]);
        vector<int> out;
        for (int p : parts)
            out.insert(out.end(), sub.parts[p].begin(), sub.parts[p].end());
        std::sort(out.begin(), out.end());
        return out;
    }

    auto RainbowCollection::length() const -> int
    {
        int total = 0;
        for (const auto & p : paths)
            total += static_cast<int>(p.size());
        return total;
    }

    auto RainbowCollection::vertices() const -> vector<int>
    {
        vector<int> out;
        for (const auto & p : paths)
            out.insert(out.end(), p.begin(), p.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    auto collection_conflicts(const RainbowCollection & coll, const Substructure & sub) -> vector<int>
    {
        return conflict_set(coll.vertices(), sub);
    }

    auto check_collection(const RainbowCollection & coll, const Substructure & sub) -> CheckReport
    {
        CheckReport r;
        const auto & c = sub.host;
        std::map<int, int> part_owner;
        for (const auto & path : coll.paths)
            for (int v : path) {
                if (v < 0 || v >= c.n() || ! sub.in_u(v)) {
                    r.add("conflict", "vertex " + std::to_string(v) + " is not in U");
                    continue;
                }
                auto [it, fresh] = part_owner.emplace(sub.part_of[v], v);
                if (! fresh)
                    r.add("conflict", "vertices " + std::to_string(it->second) + " and " + std::to_string(v) + " share a part");
            }
        if (! r.ok())
            return r;

        std::map<Color, int> first_colours;
        for (std::size_t i = 0; i < coll.paths.size(); ++i) {
            const auto & path = coll.paths[i];
            auto name = "path " + std::to_string(i);
            if (path.empty()) {
                r.add("first edge", name + " is empty");
                continue;
            }
            if (path.size() < 2) {
                if (i > 0)
                    r.add("first edge", name + " has no rogue first edge");
                continue;
            }
            int a = path[0];
            int b = path[1];
            if (sub.rogue(a, b)) {
                Color col = c.color(a, b);
                if (! sub.is_rogue_color(col))
                    r.add("first edge", name + " starts on an undirected edge of non-rogue colour " + std::to_string(col));
                auto [it, fresh] = first_colours.emplace(col, static_cast<int>(i));
                if (! fresh)
                    r.add("first edge", name + " repeats rogue colour " + std::to_string(col) + " of path " + std::to_string(it->second));
            }
            else if (i > 0 || ! sub.directed(a, b))
                r.add("first edge", name + " does not start on a rogue edge");
            for (std::size_t k = 1; k + 1 < path.size(); ++k)
                if (! sub.directed(path[k], path[k + 1]))
                    r.add("direction", name + " edge " + pair_text(path[k], path[k + 1]) + " is not directed forward");
        }
        return r;
    }

    auto forward_count(const vector<int> & order, const Orientation & o) -> std::int64_t
    {
        std::int64_t k = 0;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = i + 1; j < order.size(); ++j)
                k += o.dir(order[i], order[j]) > 0;
        return k;
    }

    namespace
    {
        // gain[q]: forward pairs involving v when v sits at slot q of `rest`.
        auto slot_gains(int v, const vector<int> & rest, const Orientation & o) -> vector<int>
        {
            vector<int> gain(rest.size() + 1);
            int g = 0;
            for (int y : rest)
                g += o.dir(v, y) > 0;
            gain[0] = g;
            for (std::size_t q = 0; q < rest.size(); ++q) {
                g += (o.dir(rest[q], v) > 0) - (o.dir(v, rest[q]) > 0);
                gain[q + 1] = g;
            }
            return gain;
        }
    }

    auto median_ordering(const vector<int> & vertices, const Orientation & o, std::uint64_t seed) -> vector<int>
    {
        vector<int> order = vertices;
        std::mt19937_64 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);

        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t i = 0; i < vertices.size(); ++i) {
                int v = vertices[i];
                auto at = std::find(order.begin(), order.end(), v);
                auto p = static_cast<std::size_t>(at - order.begin());
                order.erase(at);
                auto gain = slot_gains(v, order, o);
                auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
                if (gain[best] > gain[p]) {
                    improved = true;
                    p = best;
                }
                order.insert(order.begin() + static_cast<std::ptrdiff_t>(p), v);
            }
        }
        return order;
    }

    auto relocation_optimal(const vector<int> & order, const Orientation & o) -> bool
    {
        for (std::size_t p = 0; p < order.size(); ++p) {
            vector<int> rest = order;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
            auto gain = slot_gains(order[p], rest, o);
            if (*std::max_element(gain.begin(), gain.end()) > gain[p])
                return false;
        }
        return true;
    }

    auto tournament_ham_path(const vector<int> & vertices, const Orientation & o) -> vector<int>
    {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                if (o.dir(vertices[i], vertices[j]) == 0)
                    throw NotATournament("pair " + pair_text(vertices[i], vertices[j]) + " is not oriented");
        vector<int> path;
        for (int v : vertices) {
            std::size_t q = 0;
            while (q < path.size() && o.dir(path[q], v) > 0)
                ++q;
            path.insert(path.begin() + static_cast<std::ptrdiff_t>(q), v);
        }
        return path;
    }

    auto is_rainbow_path(const vector<int> & path, const EdgeColoring & c) -> bool
    {
        vector<int> seen = path;
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            return false;
        for (int v : path)
            if (v < 0 || v >= c.n())
                return false;
        vector<Color> colours;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            colours.push_back(c.color(path[i], path[i + 1]));
        std::sort(colours.begin(), colours.end());
        return std::adjacent_find(colours.begin(), colours.end()) == colours.end();
    }

    auto glue_collection(const RainbowCollection & coll, const Substructure & sub) -> vector<int>
    {
        const auto & c = sub.host;
        vector<int> path;
        vector<char> used(c.n(), 0);
        for (std::size_t i = 0; i < coll.paths.size(); ++i) {
            const auto & p = coll.paths[i];
            if (i > 0) {
                int w = path.back();
                int u = p.front();
                Color cw = sub.part_colors[sub.part_of[w]];
                Color cu = sub.part_colors[sub.part_of[u]];
                int z = 0;
                while (z < c.n() && (sub.in_u(z) || used[z] || c.color(w, z) != cw || c.color(z, u) != cu))
                    ++z;
                if (z == c.n())
                    throw ConnectorsExhausted("no unused connector between " + std::to_string(w) + " and " + std::to_string(u) +
                                              " after " + std::to_string(i - 1) + " joins");
                used[z] = 1;
                path.push_back(z);
            }
            path.insert(path.end(), p.begin(), p.end());
        }
        if (! is_rainbow_path(path, c))
            throw VerificationFailed("glued path is not rainbow");
        return path;
    }
}
