#include <canonram/bounds.hpp>
#include <canonram/embed.hpp>
#include <canonram/errors.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <tuple>

namespace canonram
{
    using std::optional;
    using std::vector;

    namespace
    {
        using Rows = vector<vector<std::uint64_t>>;

        auto step_seed(std::uint64_t seed, std::uint64_t i) -> std::uint64_t
        {
            return seed ^ (0x9E3779B97F4A7C15ULL * (i + 1));
        }

        auto adjacency_rows(const Graph & g) -> Rows
        {
            std::size_t words = (static_cast<std::size_t>(g.n()) + 63) / 64;
            Rows rows(g.n(), vector<std::uint64_t>(words, 0));
            for (auto [u, v] : g.edges()) {
                rows[u][v / 64] |= 1ULL << (v % 64);
                rows[v][u / 64] |= 1ULL << (u % 64);
            }
            return rows;
        }

        auto binomial_capped(std::int64_t n, std::int64_t k, std::int64_t cap) -> std::int64_t
        {
            if (k < 0 || k > n)
                return 0;
            std::int64_t r = 1;
            for (std::int64_t i = 1; i <= k; ++i) {
                r = r * (n - k + i) / i;
                if (r > cap)
                    return cap + 1;
            }
            return r;
        }

        auto integer_sqrt_ceil(std::int64_t x) -> std::int64_t
        {
            std::int64_t r = 0;
            while (r * r < x)
                ++r;
            return r;
        }

        auto checked(const Graph & h, const EdgeColoring & c, CanonicalCopy copy) -> CanonicalCopy
        {
            if (! verify_copy(h, c, copy))
                throw VerificationFailed("engine assembled a " + kind_name(copy.kind) + " copy that does not verify");
            return copy;
        }

        // Places the pattern vertices listed in `order` one at a time. Each
        // vertex draws from pool(v) and must agree with every placed neighbour.
        template <typename Pool, typename Ok>
        auto backtrack_embed(const Graph & h, const vector<int> & order, Pool pool, Ok ok, std::int64_t budget)
            -> optional<vector<int>>
        {
            vector<int> img(h.n(), -1);
            vector<char> used;
            std::int64_t spent = 0;
            std::function<bool(std::size_t)> place = [&](std::size_t at) -> bool {
                if (at == order.size())
                    return true;
                int v = order[at];
                for (int x : pool(v)) {
                    if (++spent > budget)
                        return false;
                    if (x >= static_cast<int>(used.size()))
                        used.resize(x + 1, 0);
                    if (used[x])
                        continue;
                    bool fits = true;
                    for (int w : h.neighbours(v))
                        if (img[w] >= 0 && ! ok(v, x, w, img[w])) {
                            fits = false;
                            break;
                        }
                    if (! fits)
                        continue;
                    img[v] = x;
                    used[x] = 1;
                    if (place(at + 1))
                        return true;
                    img[v] = -1;
                    used[x] = 0;
                }
                return false;
            };
            if (place(0))
                return img;
            return std::nullopt;
        }

        auto bfs_order(const Graph & h) -> vector<int>
        {
            vector<int> order;
            vector<char> seen(h.n(), 0);
            for (int r = 0; r < h.n(); ++r) {
                if (seen[r])
                    continue;
                std::deque<int> q{r};
                seen[r] = 1;
                while (! q.empty()) {
                    int v = q.front();
                    q.pop_front();
                    order.push_back(v);
                    for (int w : h.neighbours(v))
                        if (! seen[w]) {
                            seen[w] = 1;
                            q.push_back(w);
                        }
                }
            }
            return order;
        }
    }

    auto parse_relax(const std::string & text) -> Relax
    {
        using boost::multiprecision::cpp_int;
        auto bad = [&] { return InvalidInput("relax '" + text + "' is not a positive number"); };
        auto digits_only = [](const std::string & s) {
            return ! s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
        };

        Relax r;
        if (auto slash = text.find('/'); slash != std::string::npos) {
            auto p = text.substr(0, slash);
            auto q = text.substr(slash + 1);
            if (! digits_only(p) || ! digits_only(q) || cpp_int(q) == 0)
                throw bad();
            r = Relax(cpp_int(p), cpp_int(q));
        }
        else {
            std::string mantissa = text;
            long exponent = 0;
            if (auto e = text.find_first_of("eE"); e != std::string::npos) {
                mantissa = text.substr(0, e);
                auto ex = text.substr(e + 1);
                bool neg = ! ex.empty() && (ex[0] == '-' || ex[0] == '+');
                if (! digits_only(neg ? ex.substr(1) : ex) || ex.size() > 6)
                    throw bad();
                exponent = std::stol(ex);
            }
            std::string whole = mantissa;
            std::string frac;
            if (auto dot = mantissa.find('.'); dot != std::string::npos) {
                whole = mantissa.substr(0, dot);
                frac = mantissa.substr(dot + 1);
            }
            if (whole.empty())
                whole = "0";
            if (! digits_only(whole) || (! frac.empty() && ! digits_only(frac)))
                throw bad();
            // A leading zero would make cpp_int read octal.
            auto digits = (whole + frac).substr(std::min((whole + frac).find_first_not_of('0'), (whole + frac).size() - 1));
            cpp_int num(digits);
            cpp_int den = big_pow(10, frac.size());
            if (exponent > 0)
                num *= big_pow(10, static_cast<std::uint64_t>(exponent));
            else if (exponent < 0)
                den *= big_pow(10, static_cast<std::uint64_t>(-exponent));
            r = Relax(num, den);
        }
        if (r <= 0)
            throw bad();
        return r;
    }

    auto relax_text(const Relax & r) -> std::string
    {
        auto num = boost::multiprecision::numerator(r);
        auto den = boost::multiprecision::denominator(r);
        if (den == 1)
            return num.str();
        return num.str() + "/" + den.str();
    }

    auto step_kind_name(StepKind k) -> std::string
    {
        return k == StepKind::Star ? "star" : "drc";
    }

    auto embed_tree_min_degree(const Graph & tree, const Graph & host) -> optional<vector<int>>
    {
        if (! is_tree(tree))
            throw NotATree("pattern has " + std::to_string(tree.n()) + " vertices and " + std::to_string(tree.m()) + " edges");
        int s = tree.n();
        int n = host.n();

        vector<int> deg(n);
        vector<char> alive(n, 1);
        std::deque<int> low;
        for (int v = 0; v < n; ++v) {
            deg[v] = host.degree(v);
            if (deg[v] < s - 1)
                low.push_back(v);
        }
        while (! low.empty()) {
            int v = low.front();
            low.pop_front();
            if (! alive[v])
                continue;
            alive[v] = 0;
            for (int w : host.neighbours(v))
                if (alive[w] && --deg[w] < s - 1)
                    low.push_back(w);
        }
        auto root = std::find(alive.begin(), alive.end(), 1);
        if (root == alive.end())
            return std::nullopt;

        vector<int> img(s, -1);
        vector<char> used(n, 0);
        img[0] = static_cast<int>(root - alive.begin());
        used[img[0]] = 1;
        std::deque<int> q{0};
        while (! q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : tree.neighbours(v)) {
                if (img[w] >= 0)
                    continue;
                // Core vertices have at least s - 1 core neighbours, more than
                // the tree can have used besides this branch.
                for (int x : host.neighbours(img[v]))
                    if (alive[x] && ! used[x]) {
                        img[w] = x;
                        used[x] = 1;
                        break;
                    }
                if (img[w] < 0)
                    throw VerificationFailed("core vertex ran out of unused neighbours");
                q.push_back(w);
            }
        }
        return img;
    }

    auto sample_rainbow_embedding(const Graph & h, const vector<vector<int>> & parts, const EdgeColoring & c, int tries,
                                  std::uint64_t seed) -> SampleResult
    {
        if (static_cast<int>(parts.size()) != h.n())
            throw PartsMismatch(std::to_string(parts.size()) + " parts for a pattern on " + std::to_string(h.n()) + " vertices");
        vector<char> seen(c.n(), 0);
        for (const auto & p : parts) {
            if (p.empty() || p.size() != parts[0].size())
                throw PartsMismatch("parts must be nonempty and of equal size");
            for (int v : p) {
                if (v < 0 || v >= c.n())
                    throw PartsMismatch("vertex " + std::to_string(v) + " is outside the host");
                if (seen[v])
                    throw PartsMismatch("vertex " + std::to_string(v) + " lies in two parts");
                seen[v] = 1;
            }
        }

        SampleResult r;
        std::mt19937_64 rng(seed);
        const auto & edges = h.edges();
        vector<int> img(h.n());
        vector<Color> col(edges.size());
        for (int attempt = 0; attempt < tries; ++attempt) {
            ++r.tries_used;
            for (int i = 0; i < h.n(); ++i) {
                std::uniform_int_distribution<std::size_t> pick(0, parts[i].size() - 1);
                img[i] = parts[i][pick(rng)];
            }
            for (std::size_t e = 0; e < edges.size(); ++e)
                col[e] = c.color(img[edges[e].first], img[edges[e].second]);
            bool shared = false;
            bool disjoint = false;
            for (std::size_t e = 0; e < edges.size(); ++e)
                for (std::size_t f = e + 1; f < edges.size(); ++f) {
                    if (col[e] != col[f])
                        continue;
                    auto [a, b] = edges[e];
                    auto [x, y] = edges[f];
                    if (a == x || a == y || b == x || b == y)
                        shared = true;
                    else
                        disjoint = true;
                }
            if (! shared && ! disjoint) {
                r.embedding = img;
                return r;
            }
            ++r.rejections;
            r.shared_endpoint += shared;
            r.disjoint_pair += disjoint;
        }
        return r;
    }

    auto drc_subset(const Graph & host, int k, int m, int t_pick, std::uint64_t seed) -> optional<vector<int>>
    {
        if (k < 1 || m < 1 || t_pick < 1)
            throw InvalidInput("drc_subset needs k, m, t_pick >= 1");
        int n = host.n();
        if (n == 0)
            return std::nullopt;

        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, n - 1);
        auto rows = adjacency_rows(host);
        auto common = rows[pick(rng)];
        for (int i = 1; i < t_pick; ++i) {
            const auto & row = rows[pick(rng)];
            for (std::size_t w = 0; w < common.size(); ++w)
                common[w] &= row[w];
        }
        vector<int> x0;
        for (int v = 0; v < n; ++v)
            if (common[v / 64] >> (v % 64) & 1)
                x0.push_back(v);

        int size = static_cast<int>(x0.size());
        constexpr std::int64_t cap = 50'000'000;
        if (binomial_capped(size, k, cap) > cap)
            throw InstanceTooLarge("C(" + std::to_string(size) + ", " + std::to_string(k) + ") subsets to check");

        vector<char> alive(size, 1);
        if (size >= k) {
            vector<int> idx(k);
            for (int i = 0; i < k; ++i)
                idx[i] = i;
            vector<std::uint64_t> acc(rows.empty() ? 0 : rows[0].size());
            while (true) {
                bool all_alive = true;
                for (int i : idx)
                    if (! alive[i]) {
                        all_alive = false;
                        break;
                    }
                if (all_alive) {
                    acc = rows[x0[idx[0]]];
                    for (int i = 1; i < k; ++i) {
                        const auto & row = rows[x0[idx[i]]];
                        for (std::size_t w = 0; w < acc.size(); ++w)
                            acc[w] &= row[w];
                    }
                    int count = 0;
                    for (auto word : acc)
                        count += std::popcount(word);
                    if (count < m)
                        alive[idx[k - 1]] = 0;
                }
                int i = k - 1;
                while (i >= 0 && idx[i] == size - k + i)
                    --i;
                if (i < 0)
                    break;
                ++idx[i];
                for (int j = i + 1; j < k; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
        }
        vector<int> x;
        for (int i = 0; i < size; ++i)
            if (alive[i])
                x.push_back(x0[i]);
        if (x.empty())
            return std::nullopt;
        return x;
    }

    auto one_step(const EdgeColoring & c, const vector<int> & active, const std::set<Color> & banned, int n, int delta,
                  const Relax & relax, std::uint64_t seed) -> StepResult
    {
        if (active.empty())
            throw InvalidInput("one_step needs a nonempty active set");
        if (n < 1 || delta < 1)
            throw InvalidInput("one_step needs n >= 1 and delta >= 1");
        auto size = static_cast<std::int64_t>(active.size());

        Relax gate = relax * Relax(big_pow(2 * n, 7 * static_cast<std::uint64_t>(delta)));
        if (Relax(size) < gate)
            throw StepFailed("|A| = " + std::to_string(size) + " is below relax*(2n)^(7*Delta) = " + relax_text(gate));

        Relax theta = relax * Relax(size) / Relax(2 * big_pow(n, 5));
        std::map<Color, int> b_size;
        optional<std::tuple<int, Color, int>> star; // (count, colour, apex), best first
        for (int v : active) {
            std::map<Color, int> count;
            for (int w : active)
                if (w != v)
                    ++count[c.color(v, w)];
            for (auto [col, k] : count) {
                if (Relax(k) < theta)
                    continue;
                ++b_size[col];
                if (banned.count(col))
                    continue;
                if (! star || k > std::get<0>(*star) ||
                    (k == std::get<0>(*star) && (col < std::get<1>(*star) || (col == std::get<1>(*star) && v < std::get<2>(*star)))))
                    star = std::tuple{k, col, v};
            }
        }

        StepResult r;
        if (star) {
            auto [k, col, apex] = *star;
            r.kind = StepKind::Star;
            r.color = col;
            r.apex = apex;
            for (int w : active)
                if (w != apex && c.color(apex, w) == col)
                    r.x.push_back(w);
            std::sort(r.x.begin(), r.x.end());
            return r;
        }

        Color best = 0;
        int best_size = 0;
        for (auto [col, k] : b_size)
            if (k > best_size) {
                best = col;
                best_size = k;
            }
        if (best_size == 0)
            throw StepFailed("no colour has a vertex with theta1 = " + relax_text(theta) + " neighbours inside |A| = " +
                             std::to_string(size));

        vector<Edge> edges;
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j)
                if (c.color(active[i], active[j]) == best)
                    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        Graph g(static_cast<int>(size), edges);
        auto x = drc_subset(g, delta, n, delta, seed);
        if (! x)
            throw StepFailed("dependent random choice in colour " + std::to_string(best) + " emptied |A| = " +
                             std::to_string(size) + " (|B_c| = " + std::to_string(best_size) + ")");
        r.kind = StepKind::Drc;
        r.color = best;
        for (int i : *x)
            r.x.push_back(active[i]);
        std::sort(r.x.begin(), r.x.end());
        return r;
    }

    auto nonbipartite_pipeline(const Graph & h, const EdgeColoring & c, const Relax & relax, std::uint64_t seed)
        -> EngineOutcome
    {
        int n = h.n();
        int delta = h.max_degree();
        if (delta < 2)
            throw InvalidInput("nonbipartite engine needs a pattern with maximum degree >= 2");
        int chi = chromatic_number(h);
        if (chi < 3)
            throw InvalidInput("nonbipartite engine needs a pattern with chromatic number >= 3");

        EngineOutcome out;
        vector<int> a(c.n());
        for (int v = 0; v < c.n(); ++v)
            a[v] = v;
        out.active_sets.push_back(a);
        std::set<Color> banned;
        vector<int> stars;

        // Backward placement: vertices in `order` reversed, each into `pool`
        // and c-adjacent to the already placed neighbours listed by `placed`.
        auto place_backwards = [&](const vector<int> & order, auto pool_of, auto colour_of) -> optional<vector<int>> {
            vector<int> img(n, -1);
            vector<char> used(c.n(), 0);
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                int v = *it;
                for (int x : pool_of(v)) {
                    if (used[x])
                        continue;
                    bool fits = true;
                    for (int w : h.neighbours(v))
                        if (img[w] >= 0 && c.color(x, img[w]) != colour_of(v)) {
                            fits = false;
                            break;
                        }
                    if (fits) {
                        img[v] = x;
                        used[x] = 1;
                        break;
                    }
                }
                if (img[v] < 0)
                    return std::nullopt;
            }
            return img;
        };

        for (int i = 0; i < chi * n; ++i) {
            StepResult step;
            try {
                step = one_step(c, a, banned, n, delta, relax, step_seed(seed, i));
            }
            catch (const StepFailed & e) {
                out.gates.push_back({"step " + std::to_string(i), "one_step", false, e.what()});
                out.reason = "step " + std::to_string(i) + " failed";
                return out;
            }
            out.gates.push_back({"step " + std::to_string(i), "one_step", true,
                                 step_kind_name(step.kind) + " in colour " + std::to_string(step.color)});
            out.trace.push_back({i, step.kind, step.color, static_cast<int>(step.x.size()), step.apex});
            if (step.kind == StepKind::Star) {
                banned.insert(step.color);
                stars.push_back(i);
            }
            a = step.x;
            out.active_sets.push_back(a);
            const auto & trace = out.trace;

            if (static_cast<int>(stars.size()) >= n - 1 && ! a.empty()) {
                CanonicalCopy copy;
                copy.kind = Kind::Lex;
                copy.order = vector<int>(n);
                copy.colors.assign(n, 0);
                for (int v = 0; v < n; ++v) {
                    (*copy.order)[v] = v;
                    copy.embedding.push_back(v < n - 1 ? *trace[stars[v]].apex : a.front());
                    bool forward = std::any_of(h.neighbours(v).begin(), h.neighbours(v).end(), [&](int w) { return w > v; });
                    if (forward)
                        copy.colors[v] = trace[stars[v]].color;
                }
                out.branch = "star";
                out.copy = checked(h, c, copy);
                return out;
            }

            std::map<Color, vector<int>> drc_by_colour;
            for (const auto & rec : trace)
                if (rec.kind == StepKind::Drc)
                    drc_by_colour[rec.color].push_back(rec.index);

            for (const auto & [col, steps] : drc_by_colour) {
                if (static_cast<int>(steps.size()) < chi)
                    continue;
                // Colour class l goes into A_{i_l}; class chi - 1 is placed first.
                auto classes = optimal_colouring(h);
                vector<int> order(n);
                for (int v = 0; v < n; ++v)
                    order[v] = v;
                std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return classes[x] < classes[y]; });
                Color colour = col;
                auto img = place_backwards(
                    order, [&](int v) -> const vector<int> & { return out.active_sets[steps[classes[v]]]; },
                    [&](int) { return colour; });
                if (! img) {
                    out.gates.push_back({"assemble", "mono backward embedding", false,
                                         "no common neighbour in colour " + std::to_string(col)});
                    out.reason = "mono assembly failed";
                    return out;
                }
                CanonicalCopy copy;
                copy.kind = Kind::Mono;
                copy.embedding = *img;
                copy.colors = {col};
                out.branch = "mono";
                out.copy = checked(h, c, copy);
                return out;
            }

            if (static_cast<int>(drc_by_colour.size()) >= n) {
                vector<int> first;
                for (const auto & [col, steps] : drc_by_colour)
                    first.push_back(steps.front());
                std::sort(first.begin(), first.end());
                first.resize(n);
                vector<int> order(n);
                for (int v = 0; v < n; ++v)
                    order[v] = v;
                auto img = place_backwards(
                    order, [&](int v) -> const vector<int> & { return out.active_sets[first[v]]; },
                    [&](int v) { return trace[first[v]].color; });
                if (! img) {
                    out.gates.push_back({"assemble", "lex backward embedding", false, "no common forward neighbour"});
                    out.reason = "lex assembly failed";
                    return out;
                }
                CanonicalCopy copy;
                copy.kind = Kind::Lex;
                copy.embedding = *img;
                copy.order = order;
                copy.colors.assign(n, 0);
                for (int v = 0; v < n; ++v)
                    for (int w : h.neighbours(v))
                        if (w > v)
                            copy.colors[v] = trace[first[v]].color;
                out.branch = "lex";
                out.copy = checked(h, c, copy);
                return out;
            }
        }
        out.gates.push_back({"assemble", "step budget", false, std::to_string(chi * n) + " steps without an assembly"});
        out.reason = "no assembly condition met";
        return out;
    }

    auto bipartite_pipeline(const Graph & h, const EdgeColoring & c, const Relax & relax, std::uint64_t seed, int tries)
        -> EngineOutcome
    {
        int n = h.n();
        auto side = bipartition(h);
        if (n > 0 && side.empty())
            throw InvalidInput("bipartite engine needs a bipartite pattern");

        EngineOutcome out;
        int big_n = c.n();
        int p = n > 0 ? big_n / n : 0;
        int s = p / 2;
        if (s < 1) {
            out.gates.push_back({"partition", "part size", false,
                                 "floor(N/n) = " + std::to_string(p) + " leaves s = 0"});
            out.reason = "host too small";
            return out;
        }
        out.gates.push_back({"partition", "part size", true, "s = " + std::to_string(s)});

        vector<vector<int>> parts(n);
        for (int i = 0; i < n; ++i)
            for (int v = i * p; v < (i + 1) * p; ++v)
                parts[i].push_back(v);

        Relax theta = relax * Relax(s) / Relax(big_pow(n, 4));
        // x_sets[i][j]: vertices of U_i with >= theta same-coloured edges into U_j,
        // with their heaviest colour (lowest colour on ties).
        vector<std::map<int, std::map<int, Color>>> x_sets(n);
        for (int i = 0; i < n; ++i)
            for (int j : h.neighbours(i)) {
                auto & xs = x_sets[i][j];
                for (int v : parts[i]) {
                    std::map<Color, int> count;
                    for (int w : parts[j])
                        ++count[c.color(v, w)];
                    Color arg = 0;
                    int most = 0;
                    for (auto [col, k] : count)
                        if (k > most) {
                            most = k;
                            arg = col;
                        }
                    if (Relax(most) >= theta)
                        xs[v] = arg;
                }
            }

        int dense = -1;
        for (int i = 0; i < n && dense < 0; ++i) {
            std::set<int> uni;
            for (const auto & [j, xs] : x_sets[i])
                for (const auto & [v, col] : xs)
                    uni.insert(v);
            bool small = 2 * uni.size() <= parts[i].size();
            out.gates.push_back({"part " + std::to_string(i), "union of X_ij <= |U_i|/2", small,
                                 std::to_string(uni.size()) + " of " + std::to_string(parts[i].size())});
            if (! small)
                dense = i;
        }

        if (dense < 0) {
            vector<vector<int>> trimmed(n);
            for (int i = 0; i < n; ++i) {
                std::set<int> skip;
                for (const auto & [j, xs] : x_sets[i])
                    for (const auto & [v, col] : xs)
                        skip.insert(v);
                for (int v : parts[i])
                    if (! skip.count(v) && static_cast<int>(trimmed[i].size()) < s)
                        trimmed[i].push_back(v);
            }
            auto sample = sample_rainbow_embedding(h, trimmed, c, tries, seed);
            out.branch = "sampling";
            if (! sample.embedding) {
                out.gates.push_back({"sampling", "rainbow draw", false,
                                     std::to_string(sample.rejections) + " rejections in " + std::to_string(tries) + " tries"});
                out.reason = "sampling exhausted";
                return out;
            }
            out.gates.push_back({"sampling", "rainbow draw", true, "accepted on try " + std::to_string(sample.tries_used)});
            CanonicalCopy copy;
            copy.kind = Kind::Rainbow;
            copy.embedding = *sample.embedding;
            for (auto [u, v] : h.edges())
                copy.colors.push_back(c.color(copy.embedding[u], copy.embedding[v]));
            out.copy = checked(h, c, copy);
            return out;
        }

        int i = dense;
        int j = -1;
        for (const auto & [jj, xs] : x_sets[i])
            if (j < 0 || xs.size() > x_sets[i][j].size())
                j = jj;
        const auto & xs = x_sets[i][j];
        auto q = integer_sqrt_ceil(static_cast<std::int64_t>(xs.size()));
        std::map<Color, vector<int>> by_colour;
        for (const auto & [v, col] : xs)
            by_colour[col].push_back(v);
        Color top = 0;
        std::size_t top_count = 0;
        for (const auto & [col, vs] : by_colour)
            if (vs.size() > top_count) {
                top = col;
                top_count = vs.size();
            }
        bool same = static_cast<std::int64_t>(top_count) >= q;
        out.gates.push_back({"pigeonhole", "some colour repeats >= ceil(sqrt|X|)", same,
                             "X_" + std::to_string(i) + "," + std::to_string(j) + " has " + std::to_string(xs.size()) +
                                 " vertices, top colour count " + std::to_string(top_count)});

        vector<int> y;
        std::map<int, Color> cy;
        if (same) {
            y = by_colour[top];
            for (int v : y)
                cy[v] = top;
        }
        else
            for (const auto & [col, vs] : by_colour) {
                y.push_back(vs.front());
                cy[vs.front()] = col;
            }
        std::sort(y.begin(), y.end());

        vector<std::pair<int, int>> ranked;
        for (int z : parts[j]) {
            int d = 0;
            for (int v : y)
                d += c.color(v, z) == cy[v];
            ranked.emplace_back(-d, z);
        }
        std::sort(ranked.begin(), ranked.end());
        vector<int> z;
        for (std::size_t k = 0; k < ranked.size() && z.size() < y.size(); ++k)
            z.push_back(ranked[k].second);
        std::sort(z.begin(), z.end());

        auto order = bfs_order(h);
        optional<vector<int>> img;
        int y_side = 0;
        for (int orient = 0; orient < 2 && ! img; ++orient) {
            y_side = orient;
            auto pool = [&](int v) -> const vector<int> & { return side[v] == y_side ? y : z; };
            auto ok = [&](int v, int x, int, int xw) {
                int yv = side[v] == y_side ? x : xw;
                int zv = side[v] == y_side ? xw : x;
                return c.color(yv, zv) == cy[yv];
            };
            img = backtrack_embed(h, order, pool, ok, 2'000'000);
        }
        out.branch = same ? "same" : "distinct";
        if (! img) {
            out.gates.push_back({"embed", "pattern into Y-Z graph", false,
                                 "|Y| = |Z| = " + std::to_string(y.size()) + ", no embedding within budget"});
            out.reason = "bipartite embedding failed";
            return out;
        }
        out.gates.push_back({"embed", "pattern into Y-Z graph", true, "|Y| = " + std::to_string(y.size())});

        CanonicalCopy copy;
        copy.embedding = *img;
        if (same) {
            copy.kind = Kind::Mono;
            copy.colors = {top};
        }
        else {
            copy.kind = Kind::Lex;
            vector<int> ord;
            for (int v = 0; v < n; ++v)
                if (side[v] == y_side)
                    ord.push_back(v);
            for (int v = 0; v < n; ++v)
                if (side[v] != y_side)
                    ord.push_back(v);
            copy.order = ord;
            copy.colors.assign(n, 0);
            for (int v = 0; v < n; ++v)
                if (side[v] == y_side && h.degree(v) > 0)
                    copy.colors[v] = cy[copy.embedding[v]];
        }
        out.copy = checked(h, c, copy);
        return out;
    }
}
