#include <canonram/detect.hpp>
#include <canonram/errors.hpp>

#include <algorithm>
#include <map>

using std::optional;
using std::vector;

namespace canonram
{
    auto kind_name(Kind k) -> std::string
    {
        switch (k) {
            case Kind::Mono: return "mono";
            case Kind::Lex: return "lex";
            case Kind::WeakLex: return "weaklex";
            case Kind::Rainbow: return "rainbow";
        }
        return "?";
    }

    auto parse_kind(const std::string & s) -> Kind
    {
        if (s == "mono")
            return Kind::Mono;
        if (s == "lex")
            return Kind::Lex;
        if (s == "weaklex")
            return Kind::WeakLex;
        if (s == "rainbow")
            return Kind::Rainbow;
        throw UnknownName("no copy kind named '" + s + "'");
    }

    namespace
    {
        auto check_embedding(const Graph & h, const EdgeColoring & c, const vector<int> & embedding) -> void
        {
            if (static_cast<int>(embedding.size()) != h.n())
                throw MalformedCopy("embedding has " + std::to_string(embedding.size()) + " entries for a pattern on " + std::to_string(h.n()) + " vertices");
            vector<bool> hit(c.n(), false);
            for (int x : embedding) {
                if (x < 0 || x >= c.n())
                    throw MalformedCopy("embedding target " + std::to_string(x) + " out of range");
                if (hit[x])
                    throw MalformedCopy("embedding is not injective at host vertex " + std::to_string(x));
                hit[x] = true;
            }
        }

        auto check_order(const Graph & h, const optional<vector<int>> & order) -> vector<int>
        {
            if (! order)
                throw MalformedCopy("lexicographic copy without a vertex order");
            if (static_cast<int>(order->size()) != h.n())
                throw MalformedCopy("vertex order has the wrong length");
            vector<int> pos(h.n(), -1);
            for (int i = 0; i < h.n(); ++i) {
                int v = (*order)[i];
                if (v < 0 || v >= h.n() || pos[v] >= 0)
                    throw MalformedCopy("vertex order is not a permutation");
                pos[v] = i;
            }
            return pos;
        }

        // Pattern vertices in an order where each vertex has as many earlier
        // neighbours as possible; keeps candidate sets small.
        auto connected_order(const Graph & h) -> vector<int>
        {
            int n = h.n();
            vector<int> order;
            vector<int> placed_nbrs(n, 0);
            vector<bool> placed(n, false);
            for (int step = 0; step < n; ++step) {
                int best = -1;
                for (int v = 0; v < n; ++v) {
                    if (placed[v])
                        continue;
                    if (best == -1 || placed_nbrs[v] > placed_nbrs[best]
                        || (placed_nbrs[v] == placed_nbrs[best] && h.degree(v) > h.degree(best)))
                        best = v;
                }
                placed[best] = true;
                order.push_back(best);
                for (int w : h.neighbours(best))
                    ++placed_nbrs[w];
            }
            return order;
        }

        struct MonoSearch
        {
            const Graph & h;
            int big_n;
            int words;
            vector<std::uint64_t> rows;
            vector<int> class_degree;
            vector<int> porder;
            vector<vector<int>> earlier;
            vector<int> image;
            vector<std::uint64_t> used;
            vector<std::uint64_t> scratch;

            MonoSearch(const Graph & pattern, int host_n) :
                h(pattern),
                big_n(host_n),
                words((host_n + 63) / 64),
                rows(static_cast<std::size_t>(host_n) * ((host_n + 63) / 64)),
                class_degree(host_n),
                porder(connected_order(pattern)),
                earlier(pattern.n()),
                image(pattern.n(), -1),
                used((host_n + 63) / 64),
                scratch(static_cast<std::size_t>(pattern.n() + 1) * ((host_n + 63) / 64))
            {
                vector<int> pos(h.n());
                for (int i = 0; i < h.n(); ++i)
                    pos[porder[i]] = i;
                for (int i = 0; i < h.n(); ++i)
                    for (int w : h.neighbours(porder[i]))
                        if (pos[w] < i)
                            earlier[i].push_back(w);
            }

            auto load(const EdgeColoring & c, Color colour) -> void
            {
                std::fill(rows.begin(), rows.end(), 0);
                std::fill(class_degree.begin(), class_degree.end(), 0);
                for (int u = 0; u < big_n; ++u)
                    for (int v = u + 1; v < big_n; ++v)
                        if (c.color(u, v) == colour) {
                            rows[static_cast<std::size_t>(u) * words + v / 64] |= 1ull << (v % 64);
                            rows[static_cast<std::size_t>(v) * words + u / 64] |= 1ull << (u % 64);
                            ++class_degree[u];
                            ++class_degree[v];
                        }
            }

            auto go(int depth) -> bool
            {
                if (depth == h.n())
                    return true;
                int v = porder[depth];
                std::uint64_t * cand = &scratch[static_cast<std::size_t>(depth) * words];
                for (int w = 0; w < words; ++w)
                    cand[w] = ~used[w];
                if (big_n % 64)
                    cand[words - 1] &= (1ull << (big_n % 64)) - 1;
                for (int p : earlier[depth]) {
                    const std::uint64_t * row = &rows[static_cast<std::size_t>(image[p]) * words];
                    for (int w = 0; w < words; ++w)
                        cand[w] &= row[w];
                }
                for (int w = 0; w < words; ++w) {
                    for (std::uint64_t m = cand[w]; m; m &= m - 1) {
                        int x = w * 64 + __builtin_ctzll(m);
                        if (class_degree[x] < h.degree(v))
                            continue;
                        image[v] = x;
                        used[w] |= 1ull << (x % 64);
                        bool found = go(depth + 1);
                        used[w] &= ~(1ull << (x % 64));
                        if (found)
                            return true;
                        image[v] = -1;
                    }
                }
                return false;
            }
        };

        auto find_mono(const Graph & h, const EdgeColoring & c) -> optional<CanonicalCopy>
        {
            int big_n = c.n();
            std::map<Color, int> class_size;
            for (int u = 0; u < big_n; ++u)
                for (int v = u + 1; v < big_n; ++v)
                    ++class_size[c.color(u, v)];

            MonoSearch search(h, big_n);
            for (auto [colour, size] : class_size) {
                if (size < h.m())
                    continue;
                search.load(c, colour);
                if (*std::max_element(search.class_degree.begin(), search.class_degree.end()) < h.max_degree())
                    continue;
                if (search.go(0))
                    return CanonicalCopy{search.image, Kind::Mono, std::nullopt, {colour}};
            }
            return std::nullopt;
        }

        struct RainbowSearch
        {
            const Graph & h;
            const EdgeColoring & c;
            vector<int> porder;
            vector<vector<int>> earlier;
            vector<int> image;
            vector<bool> used;
            vector<Color> colours;

            auto go(int depth) -> bool
            {
                if (depth == h.n())
                    return true;
                int v = porder[depth];
                for (int x = 0; x < c.n(); ++x) {
                    if (used[x])
                        continue;
                    std::size_t mark = colours.size();
                    bool ok = true;
                    for (int p : earlier[depth]) {
                        Color col = c.color(image[p], x);
                        if (std::find(colours.begin(), colours.end(), col) != colours.end()) {
                            ok = false;
                            break;
                        }
                        colours.push_back(col);
                    }
                    if (ok) {
                        image[v] = x;
                        used[x] = true;
                        if (go(depth + 1))
                            return true;
                        used[x] = false;
                        image[v] = -1;
                    }
                    colours.resize(mark);
                }
                return false;
            }
        };

        auto find_rainbow(const Graph & h, const EdgeColoring & c) -> optional<CanonicalCopy>
        {
            RainbowSearch s{h, c, connected_order(h), vector<vector<int>>(h.n()), vector<int>(h.n(), -1), vector<bool>(c.n(), false), {}};
            vector<int> pos(h.n());
            for (int i = 0; i < h.n(); ++i)
                pos[s.porder[i]] = i;
            for (int i = 0; i < h.n(); ++i)
                for (int w : h.neighbours(s.porder[i]))
                    if (pos[w] < i)
                        s.earlier[i].push_back(w);
            if (! s.go(0))
                return std::nullopt;
            vector<Color> per_edge;
            for (auto [a, b] : h.edges())
                per_edge.push_back(c.color(s.image[a], s.image[b]));
            return CanonicalCopy{s.image, Kind::Rainbow, std::nullopt, per_edge};
        }

        // Places (pattern vertex, host vertex) pairs; the placement order is
        // the lexicographic order. A vertex's forward colour is fixed by the
        // first later neighbour placed.
        struct LexSearch
        {
            const Graph & h;
            const EdgeColoring & c;
            bool strict;
            vector<int> image;
            vector<int> order;
            vector<Color> forward;
            vector<bool> used;

            auto colour_taken(Color col) const -> bool
            {
                for (int w = 0; w < h.n(); ++w)
                    if (forward[w] == col)
                        return true;
                return false;
            }

            // Can pattern vertex u still go somewhere given the fixed colours?
            auto has_room(int u) const -> bool
            {
                for (int y = 0; y < c.n(); ++y) {
                    if (used[y])
                        continue;
                    bool ok = true;
                    vector<Color> fresh;
                    for (int w : h.neighbours(u)) {
                        if (image[w] < 0)
                            continue;
                        Color col = c.color(image[w], y);
                        if (forward[w] != 0) {
                            if (col != forward[w]) {
                                ok = false;
                                break;
                            }
                        }
                        else if (strict) {
                            if (colour_taken(col) || std::find(fresh.begin(), fresh.end(), col) != fresh.end()) {
                                ok = false;
                                break;
                            }
                            fresh.push_back(col);
                        }
                    }
                    if (ok)
                        return true;
                }
                return false;
            }

            auto go() -> bool
            {
                int depth = static_cast<int>(order.size());
                if (depth == h.n())
                    return true;
                for (int v = 0; v < h.n(); ++v) {
                    if (image[v] >= 0)
                        continue;
                    for (int x = 0; x < c.n(); ++x) {
                        if (used[x])
                            continue;
                        vector<int> fixed;
                        bool ok = true;
                        for (int w : h.neighbours(v)) {
                            if (image[w] < 0)
                                continue;
                            Color col = c.color(image[w], x);
                            if (forward[w] != 0) {
                                if (col != forward[w]) {
                                    ok = false;
                                    break;
                                }
                            }
                            else {
                                if (strict && colour_taken(col)) {
                                    ok = false;
                                    break;
                                }
                                forward[w] = col;
                                fixed.push_back(w);
                            }
                        }
                        if (ok) {
                            image[v] = x;
                            used[x] = true;
                            order.push_back(v);
                            bool room = true;
                            for (int u = 0; u < h.n() && room; ++u)
                                if (image[u] < 0)
                                    room = has_room(u);
                            if (room && go())
                                return true;
                            order.pop_back();
                            used[x] = false;
                            image[v] = -1;
                        }
                        for (int w : fixed)
                            forward[w] = 0;
                    }
                }
                return false;
            }
        };

        auto find_lex(const Graph & h, const EdgeColoring & c, bool strict) -> optional<CanonicalCopy>
        {
            LexSearch s{h, c, strict, vector<int>(h.n(), -1), {}, vector<Color>(h.n(), 0), vector<bool>(c.n(), false)};
            if (! s.go())
                return std::nullopt;
            return CanonicalCopy{s.image, strict ? Kind::Lex : Kind::WeakLex, s.order, s.forward};
        }
    }

    auto verify_copy(const Graph & h, const EdgeColoring & c, const CanonicalCopy & copy) -> bool
    {
        check_embedding(h, c, copy.embedding);
        const auto & img = copy.embedding;
        auto colour = [&](int a, int b) { return c.color(img[a], img[b]); };

        switch (copy.kind) {
            case Kind::Mono: {
                for (auto [a, b] : h.edges())
                    if (colour(a, b) != colour(h.edges()[0].first, h.edges()[0].second))
                        return false;
                return true;
            }
            case Kind::Rainbow: {
                vector<Color> seen;
                for (auto [a, b] : h.edges())
                    seen.push_back(colour(a, b));
                std::sort(seen.begin(), seen.end());
                return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
            }
            case Kind::Lex:
            case Kind::WeakLex: {
                auto pos = check_order(h, copy.order);
                vector<Color> star_colours;
                for (int v = 0; v < h.n(); ++v) {
                    Color fc = 0;
                    for (int w : h.neighbours(v)) {
                        if (pos[w] < pos[v])
                            continue;
                        if (fc == 0)
                            fc = colour(v, w);
                        else if (colour(v, w) != fc)
                            return false;
                    }
                    if (fc != 0)
                        star_colours.push_back(fc);
                }
                if (copy.kind == Kind::Lex) {
                    std::sort(star_colours.begin(), star_colours.end());
                    if (std::adjacent_find(star_colours.begin(), star_colours.end()) != star_colours.end())
                        return false;
                }
                return true;
            }
        }
        return false;
    }

    auto find_copy(const Graph & h, const EdgeColoring & c, Kind kind) -> optional<CanonicalCopy>
    {
        if (h.n() > c.n())
            return std::nullopt;

        optional<CanonicalCopy> result;
        if (h.m() == 0) {
            vector<int> identity(h.n());
            for (int v = 0; v < h.n(); ++v)
                identity[v] = v;
            CanonicalCopy copy{identity, kind, std::nullopt, {}};
            if (kind == Kind::Lex || kind == Kind::WeakLex) {
                copy.order = identity;
                copy.colors.assign(h.n(), 0);
            }
            result = copy;
        }
        else {
            switch (kind) {
                case Kind::Mono:
                    result = find_mono(h, c);
                    break;
                case Kind::Rainbow:
                    if (c.palette_size() >= h.m())
                        result = find_rainbow(h, c);
                    break;
                case Kind::Lex:
                    if (c.palette_size() >= vertex_cover_number(h))
                        result = find_lex(h, c, true);
                    break;
                case Kind::WeakLex:
                    result = find_lex(h, c, false);
                    break;
            }
        }

        if (result && ! verify_copy(h, c, *result))
            throw VerificationFailed("detector produced a copy that does not verify");
        return result;
    }

    auto find_any_canonical(const Graph & h, const EdgeColoring & c) -> optional<CanonicalCopy>
    {
        for (auto kind : {Kind::Mono, Kind::Lex, Kind::Rainbow})
            if (auto copy = find_copy(h, c, kind))
                return copy;
        return std::nullopt;
    }

    auto lex_color_count(const Graph & h, const vector<int> & order) -> int
    {
        vector<int> pos(h.n(), -1);
        for (int i = 0; i < static_cast<int>(order.size()); ++i)
            pos[order[i]] = i;
        int count = 0;
        for (int v = 0; v < h.n(); ++v)
            for (int w : h.neighbours(v))
                if (pos[w] > pos[v]) {
                    ++count;
                    break;
                }
        return count;
    }
}
