#include <canonram/bounds.hpp>
#include <canonram/driver.hpp>
#include <canonram/errors.hpp>
#include <canonram/extend.hpp>
#include <canonram/special.hpp>
#include <canonram/substructure.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace canonram
{
    using std::vector;

    namespace
    {
        auto mix(std::uint64_t seed, std::uint64_t salt) -> std::uint64_t
        {
            std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }

        auto str(std::int64_t x) -> std::string
        {
            return std::to_string(x);
        }

        auto mono_tree_ok(const Graph & tree, const EdgeColoring & c, const vector<int> & emb, Color col) -> bool
        {
            if (static_cast<int>(emb.size()) != tree.n())
                return false;
            std::set<int> seen(emb.begin(), emb.end());
            if (static_cast<int>(seen.size()) != tree.n())
                return false;
            for (auto [u, v] : tree.edges())
                if (emb[u] < 0 || emb[u] >= c.n() || emb[v] < 0 || emb[v] >= c.n() || c.color(emb[u], emb[v]) != col)
                    return false;
            return true;
        }

        struct Run
        {
            const EdgeColoring & c;
            int t;
            DriverOutcome out;

            auto gate(const std::string & stage, const std::string & name, bool passed, const std::string & detail) -> bool
            {
                out.gates.push_back({stage, name, passed, detail});
                return passed;
            }

            auto take(const vector<GateRecord> & g) -> void { out.gates.insert(out.gates.end(), g.begin(), g.end()); }

            // Glues and accepts the collection when the path is long enough.
            auto finish(const RainbowCollection & coll, const Substructure & sub, const std::string & stage) -> bool
            {
                vector<int> path;
                try {
                    path = glue_collection(coll, sub);
                } catch (const ConnectorsExhausted & e) {
                    gate(stage, "glue", false, e.what());
                    return false;
                }
                if (! gate(stage, "path length", static_cast<int>(path.size()) >= t,
                           str(path.size()) + " vertices, need " + str(t)))
                    return false;
                if (! is_rainbow_path(path, c))
                    throw VerificationFailed("glued path is not rainbow");
                out.kind = DriverKind::RainbowPath;
                out.vertices = path;
                out.stage = stage;
                return true;
            }
        };

        auto prefix_collection(const SpecialSequence & seq, int upto) -> RainbowCollection
        {
            auto full = special_collection(seq);
            full.paths.resize(std::min<std::size_t>(full.paths.size(), std::max(upto, 0)));
            return full;
        }

        auto all_indices(const RainbowCollection & coll) -> vector<int>
        {
            vector<int> out(coll.paths.size());
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = static_cast<int>(i);
            return out;
        }
    }

    auto driver_kind_name(DriverKind k) -> std::string
    {
        switch (k) {
            case DriverKind::MonoTree:
                return "mono_tree";
            case DriverKind::RainbowPath:
                return "rainbow_path";
            case DriverKind::Failure:
            default:
                return "failure";
        }
    }

    auto find_rainbow_path(const EdgeColoring & c, int t, std::int64_t budget) -> std::optional<vector<int>>
    {
        int n = c.n();
        if (t < 1)
            throw InvalidInput("rainbow path length must be positive");
        if (t > n)
            return std::nullopt;
        vector<int> path;
        vector<char> used(n, 0);
        std::set<Color> colours;
        std::int64_t spent = 0;
        std::function<bool()> grow = [&]() -> bool {
            if (static_cast<int>(path.size()) == t)
                return true;
            int last = path.back();
            for (int y = 0; y < n; ++y) {
                if (used[y])
                    continue;
                if (++spent > budget)
                    return false;
                Color e = c.color(last, y);
                if (colours.count(e))
                    continue;
                used[y] = 1;
                colours.insert(e);
                path.push_back(y);
                if (grow())
                    return true;
                path.pop_back();
                colours.erase(e);
                used[y] = 0;
            }
            return false;
        };
        for (int v = 0; v < n && spent <= budget; ++v) {
            path = {v};
            used[v] = 1;
            if (grow())
                return path;
            used[v] = 0;
        }
        return std::nullopt;
    }

    auto constrained_driver(const Graph & tree, int t, int k, const EdgeColoring & c, std::uint64_t seed, const Relax & relax)
        -> DriverOutcome
    {
        if (! is_tree(tree))
            throw NotATree("driver pattern is not a tree");
        if (t < 2)
            throw InvalidInput("t must be at least 2");
        if (k < 1)
            throw InvalidInput("depth k must be at least 1");
        if (relax <= 0)
            throw InvalidInput("relax must be positive");
        if (! c.complete())
            throw InvalidInput("colouring leaves pairs uncoloured");

        Run run{c, t, {}};
        int s = tree.n();
        std::int64_t st = static_cast<std::int64_t>(s) * t;

        // Monochromatic tree in some colour class.
        run.out.stage = "mono tree";
        for (Color col : c.palette()) {
            auto emb = embed_tree_min_degree(tree, c.color_class(col));
            if (! emb)
                continue;
            if (! mono_tree_ok(tree, c, *emb, col))
                throw VerificationFailed("tree embedding is not monochromatic in colour " + str(col));
            run.gate("mono tree", "embedding", true, "colour " + str(col));
            run.out.kind = DriverKind::MonoTree;
            run.out.vertices = *emb;
            run.out.color = col;
            return run.out;
        }
        run.gate("mono tree", "embedding", false, "no colour class keeps a core of minimum degree s - 1");

        auto fallback = [&]() -> DriverOutcome {
            run.out.stage = "direct rainbow";
            auto path = find_rainbow_path(c, t, 1000000);
            if (run.gate("direct rainbow", "search", path.has_value(), "backtracking for a rainbow path on " + str(t) + " vertices")) {
                if (! is_rainbow_path(*path, c))
                    throw VerificationFailed("direct search returned a non-rainbow path");
                run.out.kind = DriverKind::RainbowPath;
                run.out.vertices = *path;
                return run.out;
            }
            run.out.kind = DriverKind::Failure;
            return run.out;
        };

        run.out.stage = "substructure";
        auto found = find_substructure(c, s, t, c.n() <= 10 ? SearchMode::Exhaustive : SearchMode::Greedy);
        if (! run.gate("substructure", "found", found.has_value(), "N = " + str(c.n())))
            return fallback();

        run.out.stage = "trim";
        vector<int> keep;
        auto u_all = found->united();
        for (int v : u_all)
            if (static_cast<std::int64_t>(rogue_degree(v, u_all, *found)) <= 4 * st)
                keep.push_back(v);
        run.gate("trim", "rogue degree at most 4st", true, str(u_all.size() - keep.size()) + " vertices removed");
        auto sub = restrict_substructure(*found, keep);
        if (! run.gate("trim", "nonempty", ! sub.parts.empty(), "parts left: " + str(sub.parts.size())))
            return fallback();

        run.out.stage = "ordering";
        auto order = median_ordering(sub.united(), sub.orientation, mix(seed, 1));

        run.out.stage = "special sequence";
        auto seq = special_sequence(sub, order, static_cast<int>(order.size()), {});
        int f = seq.size();
        run.gate("special sequence", "length", f >= 1, "f = " + str(f));
        if (f == 0)
            return fallback();
        {
            auto coll = special_collection(seq);
            if (coll.length() + f - 1 >= t && run.finish(coll, sub, "special sequence"))
                return run.out;
        }

        // Long dyadic interval [v_p, v_2p]: one tournament extension there.
        run.out.stage = "dyadic interval";
        for (int p = 1; p <= f; p *= 2) {
            int lo = static_cast<int>(std::find(order.begin(), order.end(), seq.v[p - 1]) - order.begin());
            int hi = 2 * p <= f ? static_cast<int>(std::find(order.begin(), order.end(), seq.v[2 * p - 1]) - order.begin())
                                : static_cast<int>(order.size()) - 1;
            std::int64_t size = hi - lo + 1;
            if (Relax(size) <= relax * 176 * Relax(st))
                continue;
            run.gate("dyadic interval", "long interval", true, "p = " + str(p) + ", " + str(size) + " vertices");
            ExtendState state;
            state.sub = &sub;
            state.order = order;
            state.seq = seq;
            state.coll = prefix_collection(seq, p);
            state.endpoints = all_indices(state.coll);
            state.ell = p;
            state.x_pos = hi;
            state.s = s;
            state.t = t;
            state.relax = relax;
            try {
                auto ext = basic_extend(state, mix(seed, 2 + p));
                run.take(ext.gates);
                if (ext.collection && run.finish(*ext.collection, sub, "dyadic interval"))
                    return run.out;
            } catch (const PreconditionFailed & e) {
                run.take({{"basic extension", "precondition", false, e.what()}});
            }
            break;
        }

        // Longest interval between consecutive alpha_k iterates; main induction on it.
        run.out.stage = "induction";
        {
            vector<std::pair<std::int64_t, std::int64_t>> cuts;
            std::int64_t a = t;
            while (a >= 2) {
                std::int64_t next = std::max<std::int64_t>(1, alpha(k, a));
                if (next >= a)
                    break;
                cuts.push_back({a, next});
                a = next;
            }
            int best = -1;
            int best_len = 0;
            int best_hi = 0;
            for (std::size_t i = 0; i < cuts.size(); ++i) {
                int i_lo = special_index(t, cuts[i].first);
                if (i_lo > f)
                    continue;
                int lo = static_cast<int>(std::find(order.begin(), order.end(), seq.v[i_lo - 1]) - order.begin());
                int i_hi = special_index(t, cuts[i].second);
                int hi = i_hi <= f ? static_cast<int>(std::find(order.begin(), order.end(), seq.v[i_hi - 1]) - order.begin())
                                   : static_cast<int>(order.size()) - 1;
                if (hi - lo > best_len) {
                    best = static_cast<int>(i);
                    best_len = hi - lo;
                    best_hi = hi;
                }
            }
            if (run.gate("induction", "interval", best >= 0, "longest alpha interval has " + str(best_len) + " vertices")) {
                std::int64_t a0 = cuts[best].first;
                ExtendState state;
                state.sub = &sub;
                state.order = order;
                state.seq = seq;
                state.coll = prefix_collection(seq, special_index(t, a0));
                state.endpoints = all_indices(state.coll);
                state.a = a0;
                state.x_pos = best_hi;
                state.s = s;
                state.t = t;
                state.relax = relax;
                try {
                    auto ext = main_induction(k, state, mix(seed, 100));
                    run.take(ext.gates);
                    if (ext.collection && run.finish(*ext.collection, sub, "induction"))
                        return run.out;
                } catch (const PreconditionFailed & e) {
                    run.take({{"induction", "precondition", false, e.what()}});
                }
            }
        }

        return fallback();
    }
}
