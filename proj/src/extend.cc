#include <canonram/bounds.hpp>
#include <canonram/errors.hpp>
#include <canonram/extend.hpp>

#include <algorithm>
#include <random>
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

        auto positions(const vector<int> & order, int n) -> vector<int>
        {
            vector<int> pos(n, -1);
            for (std::size_t i = 0; i < order.size(); ++i)
                pos[order[i]] = static_cast<int>(i);
            return pos;
        }

        auto mask(const vector<int> & vertices, int n) -> vector<char>
        {
            vector<char> m(n, 0);
            for (int v : vertices)
                m[v] = 1;
            return m;
        }

        auto sorted_unique(vector<int> v) -> vector<int>
        {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            return v;
        }

        // Vertices at positions (lo, hi], optionally skipping a mask.
        auto slice(const vector<int> & order, int lo, int hi, const vector<char> * skip = nullptr) -> vector<int>
        {
            vector<int> out;
            for (int k = std::max(lo + 1, 0); k <= hi && k < static_cast<int>(order.size()); ++k)
                if (! skip || ! (*skip)[order[k]])
                    out.push_back(order[k]);
            return sorted_unique(out);
        }

        auto count_in(const vector<char> & m, const vector<int> & order, int lo, int hi) -> std::int64_t
        {
            std::int64_t n = 0;
            for (int k = std::max(lo + 1, 0); k <= hi && k < static_cast<int>(order.size()); ++k)
                n += m[order[k]];
            return n;
        }

        auto gate(vector<GateRecord> & gates, const std::string & stage, const std::string & name, bool passed,
                  const std::string & detail) -> bool
        {
            gates.push_back({stage, name, passed, detail});
            return passed;
        }

        auto require(vector<GateRecord> & gates, const std::string & stage, const std::string & name, bool passed,
                     const std::string & detail) -> void
        {
            if (! gate(gates, stage, name, passed, detail))
                throw PreconditionFailed(stage + ": " + name + " (" + detail + ")");
        }

        auto str(std::int64_t x) -> std::string
        {
            return std::to_string(x);
        }

        auto pow_int(std::int64_t base, int e) -> Relax
        {
            Relax r = 1;
            for (int i = 0; i < e; ++i)
                r *= base;
            return r;
        }

        auto to_double(const Relax & r) -> double
        {
            return r.convert_to<double>();
        }

        // Positions of v_i (1-based) in `order`.
        auto v_pos(const SpecialSequence & seq, const vector<int> & pos, int i) -> int
        {
            return pos[seq.v[i - 1]];
        }

        // Vertices of v_i and u_i for lo < i <= hi.
        auto pair_vertices(const SpecialSequence & seq, int lo, int hi) -> vector<int>
        {
            vector<int> out;
            for (int i = std::max(lo + 1, 1); i <= hi && i <= seq.size(); ++i) {
                out.push_back(seq.v[i - 1]);
                if (i >= 2)
                    out.push_back(seq.u[i - 1]);
            }
            return out;
        }

        auto pairs_in_window(const SpecialSequence & seq, const vector<int> & pos, int lo, int hi) -> vector<int>
        {
            vector<int> out;
            for (int i = 1; i <= seq.size(); ++i) {
                int p = pos[seq.v[i - 1]];
                if (p > lo && p <= hi) {
                    out.push_back(seq.v[i - 1]);
                    if (i >= 2)
                        out.push_back(seq.u[i - 1]);
                }
            }
            return out;
        }

        auto end_pos(const RainbowCollection & coll, int path, const vector<int> & pos) -> int
        {
            return pos[coll.paths[path].back()];
        }

        // Appends the paths (u_i, v_i) for lo < i <= hi and returns their indices.
        auto append_pairs(RainbowCollection & coll, const SpecialSequence & seq, int lo, int hi) -> vector<int>
        {
            vector<int> added;
            for (int i = std::max(lo + 1, 2); i <= hi && i <= seq.size(); ++i) {
                added.push_back(static_cast<int>(coll.paths.size()));
                coll.paths.push_back({seq.u[i - 1], seq.v[i - 1]});
            }
            return added;
        }

        auto same_prefix(const SpecialSequence & a, const SpecialSequence & b, int upto) -> bool
        {
            if (a.size() < upto || b.size() < upto)
                return false;
            for (int i = 0; i < upto; ++i)
                if (a.v[i] != b.v[i] || a.u[i] != b.u[i])
                    return false;
            return true;
        }

        auto validated(const RainbowCollection & coll, const Substructure & sub, const std::string & stage) -> void
        {
            auto report = check_collection(coll, sub);
            if (! report.ok())
                throw VerificationFailed(stage + " produced an invalid collection: " + report.violations.front().clause + ": " +
                                         report.violations.front().witness);
        }

        auto check_state(const ExtendState & st) -> void
        {
            if (! st.sub)
                throw InvalidInput("extension state has no substructure");
            if (st.s < 1 || st.t < 2)
                throw InvalidInput("extension needs s >= 1 and t >= 2");
            if (st.relax <= 0)
                throw InvalidInput("relax must be positive");
            if (st.x_pos < 0 || st.x_pos >= static_cast<int>(st.order.size()))
                throw PreconditionFailed("x lies outside the ordering");
        }

        // Vertices of J (sorted, outside B) whose rogue degree inside J reaches
        // relax * beta * s t / alpha^3, minus u_1..u_upto.
        auto heavy_set(const ExtendState & st, const vector<int> & inside, int beta_k, std::int64_t alpha_b, int upto) -> vector<int>
        {
            const auto & sub = *st.sub;
            Relax limit = st.relax * Relax(beta_k) * Relax(static_cast<std::int64_t>(st.s) * st.t) / pow_int(alpha_b, 3);
            std::set<int> spared;
            for (int i = 2; i <= upto && i <= st.seq.size(); ++i)
                spared.insert(st.seq.u[i - 1]);
            vector<int> heavy;
            for (int v : inside)
                if (! spared.count(v) && Relax(rogue_degree(v, inside, sub)) >= limit)
                    heavy.push_back(v);
            return heavy;
        }

        auto without(vector<int> set, const SpecialSequence & seq, int from, int upto) -> vector<int>
        {
            std::set<int> drop;
            for (int i = from; i <= upto && i <= seq.size(); ++i)
                drop.insert(seq.u[i - 1]);
            set.erase(std::remove_if(set.begin(), set.end(), [&](int v) { return drop.count(v) > 0; }), set.end());
            return set;
        }
    }

    auto special_index(std::int64_t t, std::int64_t a) -> int
    {
        if (t < 1 || a < 1)
            throw InvalidInput("special_index needs t, a >= 1");
        if (a > 2000000)
            return 1;
        std::int64_t q = t / (a * a * a);
        return static_cast<int>(std::max<std::int64_t>(1, q));
    }

    auto basic_extend(const ExtendState & st, std::uint64_t seed) -> ExtendResult
    {
        check_state(st);
        const auto & sub = *st.sub;
        const auto & order = st.order;
        int n = sub.host.n();
        auto pos = positions(order, n);
        int f = st.seq.size();
        ExtendResult out;
        auto & gates = out.gates;
        const std::string stage = "basic extension";

        require(gates, stage, "index", st.ell >= 1 && st.ell <= f, "ell = " + str(st.ell) + ", f = " + str(f));
        int pv = v_pos(st.seq, pos, st.ell);
        require(gates, stage, "interval", st.x_pos > pv, "x at " + str(st.x_pos) + ", v_ell at " + str(pv));
        if (8 * static_cast<std::int64_t>(st.ell) <= f)
            require(gates, stage, "interval", st.x_pos <= v_pos(st.seq, pos, 8 * st.ell),
                    "x lies after v_{8 ell}");

        int want = std::max(1, st.ell / 2);
        vector<int> ends = st.endpoints;
        for (int p : ends)
            if (p < 0 || p >= static_cast<int>(st.coll.paths.size()) || st.coll.paths[p].empty())
                throw InvalidInput("endpoint index " + str(p) + " does not name a path");
        std::sort(ends.begin(), ends.end(), [&](int a, int b) { return end_pos(st.coll, a, pos) < end_pos(st.coll, b, pos); });
        require(gates, stage, "endpoint count", static_cast<int>(ends.size()) >= want,
                str(ends.size()) + " paths, need " + str(want));
        ends.resize(want);
        int w1 = end_pos(st.coll, ends.front(), pos);
        require(gates, stage, "endpoints before v_ell", end_pos(st.coll, ends.back(), pos) <= pv,
                "last endpoint at " + str(end_pos(st.coll, ends.back(), pos)));

        auto bad_list = st.bad0;
        auto seq_conf = conflict_set(pair_vertices(st.seq, 0, f), sub);
        bad_list.insert(bad_list.end(), seq_conf.begin(), seq_conf.end());
        auto coll_conf = collection_conflicts(st.coll, sub);
        bad_list.insert(bad_list.end(), coll_conf.begin(), coll_conf.end());
        auto bad = mask(bad_list, n);

        std::int64_t len = st.x_pos - pv;
        int rogue_span = max_rogue(slice(order, w1 - 1, st.x_pos), sub);
        require(gates, stage, "rogue degree on [w1, x]", Relax(rogue_span) * 10 * st.relax <= Relax(len),
                "max rogue degree " + str(rogue_span) + ", |I| = " + str(len));
        std::int64_t bad_span = count_in(bad, order, w1 - 1, st.x_pos);
        int rogue_free = max_rogue(slice(order, pv, st.x_pos, &bad), sub);
        std::int64_t worst = std::max<std::int64_t>({bad_span, rogue_free, st.s});
        require(gates, stage, "interval length", Relax(len) > st.relax * 40 * Relax(worst),
                "|I| = " + str(len) + ", |B on [w1, x]| = " + str(bad_span) + ", rogue degree " + str(rogue_free) + ", s = " + str(st.s));

        RainbowCollection coll = st.coll;
        int base_length = coll.length();
        auto grown = bad;

        // Step 1: walk the early endpoints forward with long directed edges.
        int r = static_cast<int>(3 * len / 10);
        int target = pv - r;
        std::int64_t added_bad = 0;
        bool early_stop = false;
        while (true) {
            int at = -1;
            for (int p : ends)
                if (end_pos(coll, p, pos) < target && (at < 0 || end_pos(coll, p, pos) < end_pos(coll, at, pos)))
                    at = p;
            if (at < 0)
                break;
            int v = coll.paths[at].back();
            int best = -1;
            for (int k = std::min(pos[v] + r, pv - 1); k > pos[v]; --k) {
                int y = order[k];
                if (! grown[y] && sub.directed(v, y)) {
                    best = y;
                    break;
                }
            }
            if (best < 0) {
                gate(gates, stage, "step 1 forward edge", false, "no edge within " + str(r) + " of vertex " + str(v));
                early_stop = true;
                break;
            }
            coll.paths[at].push_back(best);
            for (int w : conflict_set({best}, sub))
                if (! grown[w]) {
                    grown[w] = 1;
                    ++added_bad;
                }
            if (added_bad * 40 >= len) {
                early_stop = true;
                break;
            }
        }
        if (early_stop) {
            validated(coll, sub, stage);
            if (coll.length() > base_length)
                out.collection = coll;
            return out;
        }

        // Step 2: one random vertex per kept group, sorted into a random T_i.
        std::mt19937_64 rng(seed);
        double keep = std::min(1.0, 1.0 / (400.0 * to_double(st.relax)));
        std::bernoulli_distribution coin(keep);
        std::uniform_int_distribution<int> pick_path(0, want - 1);

        vector<vector<int>> by_part(sub.parts.size());
        vector<int> part_seen;
        for (int k = pv + 1; k <= st.x_pos; ++k) {
            int y = order[k];
            if (grown[y] || ! sub.in_u(y))
                continue;
            int p = sub.part_of[y];
            if (by_part[p].empty())
                part_seen.push_back(p);
            by_part[p].push_back(y);
        }
        vector<vector<int>> groups;
        vector<int> current;
        for (int p : part_seen) {
            current.insert(current.end(), by_part[p].begin(), by_part[p].end());
            if (static_cast<int>(current.size()) >= 2 * st.s) {
                groups.push_back(current);
                current.clear();
            }
        }
        gate(gates, stage, "groups", ! groups.empty(), str(groups.size()) + " groups of size >= 2s");

        vector<vector<int>> bins(want);
        for (const auto & g : groups) {
            if (! coin(rng))
                continue;
            std::uniform_int_distribution<std::size_t> any(0, g.size() - 1);
            int y = g[any(rng)];
            bins[pick_path(rng)].push_back(y);
        }
        for (int i = 0; i < want; ++i) {
            int w = coll.paths[ends[i]].back();
            vector<int> forward;
            for (int y : bins[i])
                if (sub.directed(w, y))
                    forward.push_back(y);
            vector<char> dropped(forward.size(), 0);
            for (std::size_t a = 0; a < forward.size(); ++a) {
                if (dropped[a])
                    continue;
                for (std::size_t b = a + 1; b < forward.size(); ++b)
                    if (! dropped[b] && sub.rogue(forward[a], forward[b]))
                        dropped[b] = 1;
            }
            vector<int> kept;
            for (std::size_t a = 0; a < forward.size(); ++a)
                if (! dropped[a])
                    kept.push_back(forward[a]);
            if (kept.empty())
                continue;
            auto path = tournament_ham_path(kept, sub.orientation);
            coll.paths[ends[i]].insert(coll.paths[ends[i]].end(), path.begin(), path.end());
        }
        validated(coll, sub, stage);
        bool gained = coll.length() > base_length;
        gate(gates, stage, "gain", gained, "length " + str(base_length) + " -> " + str(coll.length()));
        if (gained)
            out.collection = coll;
        return out;
    }

    auto main_induction(int k, const ExtendState & st, std::uint64_t seed) -> ExtendResult
    {
        if (k < 1)
            throw InvalidInput("induction level must be at least 1");
        check_state(st);
        if (k == 1) {
            ExtendState base = st;
            base.ell = special_index(st.t, st.a);
            return basic_extend(base, seed);
        }

        const auto & sub = *st.sub;
        const auto & order = st.order;
        int n = sub.host.n();
        auto pos = positions(order, n);
        int f = st.seq.size();
        ExtendResult out;
        auto & gates = out.gates;
        const std::string stage = "induction k=" + str(k);

        std::int64_t a = st.a;
        require(gates, stage, "parameter", a >= 2, "a = " + str(a));
        int ia = special_index(st.t, a);
        require(gates, stage, "index", ia <= f, "t/a^3 = " + str(ia) + ", f = " + str(f));
        int pv = v_pos(st.seq, pos, ia);
        require(gates, stage, "interval", st.x_pos > pv, "x at " + str(st.x_pos) + ", start at " + str(pv));
        std::int64_t alpha_a = alpha(k, a);
        int i_top = special_index(st.t, alpha_a);
        if (i_top <= f)
            require(gates, stage, "interval", st.x_pos <= v_pos(st.seq, pos, i_top), "x lies after v_{t/alpha_k(a)^3}");

        int want = std::max(1, ia / 2);
        vector<int> ends = st.endpoints;
        for (int p : ends)
            if (p < 0 || p >= static_cast<int>(st.coll.paths.size()) || st.coll.paths[p].empty())
                throw InvalidInput("endpoint index " + str(p) + " does not name a path");
        require(gates, stage, "endpoint count", static_cast<int>(ends.size()) >= want,
                str(ends.size()) + " paths, need " + str(want));
        int w1 = pv;
        for (int p : ends)
            w1 = std::min(w1, end_pos(st.coll, p, pos));

        auto bad_list = st.bad0;
        auto coll_conf = collection_conflicts(st.coll, sub);
        bad_list.insert(bad_list.end(), coll_conf.begin(), coll_conf.end());
        auto in_i = conflict_set(pairs_in_window(st.seq, pos, pv, st.x_pos), sub);
        bad_list.insert(bad_list.end(), in_i.begin(), in_i.end());
        auto bad = mask(bad_list, n);

        std::int64_t len = st.x_pos - pv;
        int rogue_span = max_rogue(slice(order, w1 - 1, st.x_pos, &bad), sub);
        require(gates, stage, "rogue degree on [w1, x]", Relax(rogue_span) * pow_int(10, k) * st.relax <= Relax(len),
                "max rogue degree " + str(rogue_span) + ", |I| = " + str(len));
        std::int64_t bad_span = count_in(bad, order, w1 - 1, st.x_pos);
        int rogue_free = max_rogue(slice(order, pv, st.x_pos, &bad), sub);
        Relax c_k = pow_int(40, k);
        Relax need = st.relax * c_k *
                     (Relax(bad_span) + Relax(alpha_a) * rogue_free + Relax(static_cast<std::int64_t>(st.s) * st.t) / alpha_a);
        require(gates, stage, "length inequality", Relax(len) >= need,
                "|I| = " + str(len) + ", |B on [w1, x]| = " + str(bad_span) + ", rogue degree " + str(rogue_free) +
                    ", alpha_k(a) = " + str(alpha_a));

        // J_1..J_r: cut I at v_{t / b^3} for the alpha_{k-1} iterates b of a.
        struct Piece
        {
            int lo;
            int hi;
            std::int64_t b;
        };
        vector<Piece> pieces;
        int prev = pv;
        std::int64_t b = a;
        for (int l = 1;; ++l) {
            std::int64_t next = std::max<std::int64_t>(1, alpha_iterate(k - 1, a, l));
            int idx = special_index(st.t, next);
            bool after = idx > f || v_pos(st.seq, pos, idx) > st.x_pos || next == b;
            int hi = after ? st.x_pos : v_pos(st.seq, pos, idx);
            pieces.push_back({prev, hi, b});
            prev = hi;
            b = next;
            if (after)
                break;
        }
        int r = static_cast<int>(pieces.size());
        require(gates, stage, "interval count", r < alpha_a, "r = " + str(r) + ", alpha_k(a) = " + str(alpha_a));

        int longest = 0;
        for (int l = 1; l < r; ++l)
            if (pieces[l].hi - pieces[l].lo > pieces[longest].hi - pieces[longest].lo)
                longest = l;
        const Piece & big = pieces[longest];
        std::int64_t big_len = big.hi - big.lo;

        if (big_len * 10 >= len) {
            std::int64_t bb = big.b;
            std::int64_t alpha_b = std::max<std::int64_t>(1, alpha(k - 1, bb));
            int ib = special_index(st.t, bb);
            if (alpha_b >= alpha_a) {
                // One long interval whose own bound is strong enough: recurse on it.
                gate(gates, stage, "case", true, "single interval J_" + str(longest + 1) + ", alpha_{k-1}(b) >= alpha_k(a)");
                auto inside = slice(order, big.lo, big.hi, &bad);
                auto heavy = heavy_set(st, inside, 20 * static_cast<int>(pow_int(40, k - 1).convert_to<std::int64_t>()), alpha_b, ib);

                vector<int> b0 = st.bad0;
                b0.insert(b0.end(), heavy.begin(), heavy.end());
                auto c_pairs = conflict_set(pairs_in_window(st.seq, pos, big.lo, big.hi), sub);
                b0.insert(b0.end(), c_pairs.begin(), c_pairs.end());
                for (int v : coll_conf)
                    if (pos[v] > big.lo && pos[v] <= big.hi)
                        b0.push_back(v);
                b0 = without(sorted_unique(b0), st.seq, 2, ib);

                int i_end = special_index(st.t, alpha_b);
                int s_end = i_end <= f ? v_pos(st.seq, pos, i_end) + 1 : st.seq.interval_end;
                auto seq2 = special_sequence(sub, order, s_end, b0);
                if (! gate(gates, stage, "prefix kept", same_prefix(st.seq, seq2, ib),
                           "new sequence agrees with the old one up to t/b^3 = " + str(ib)))
                    return out;

                ExtendState next = st;
                next.bad0 = b0;
                next.seq = seq2;
                auto added = append_pairs(next.coll, seq2, ia, ib);
                next.endpoints.insert(next.endpoints.end(), added.begin(), added.end());
                if (! gate(gates, stage, "collection", check_collection(next.coll, sub).ok(), "pairs up to t/b^3 appended"))
                    return out;
                next.a = bb;
                next.x_pos = big.hi;
                try {
                    auto sub_out = main_induction(k - 1, next, mix(seed, 1));
                    gates.insert(gates.end(), sub_out.gates.begin(), sub_out.gates.end());
                    out.collection = sub_out.collection;
                } catch (const PreconditionFailed & e) {
                    gate(gates, stage, "recursion", false, e.what());
                }
                return out;
            }

            // alpha_{k-1} drops below alpha_k(a) between b and a: restart from there.
            std::int64_t c = -1;
            for (std::int64_t cand = bb; cand <= a; ++cand)
                if (alpha(k - 1, cand) == alpha_a) {
                    c = cand;
                    break;
                }
            if (! gate(gates, stage, "case", c >= 0, "single interval J_" + str(longest + 1) + ", value c with alpha_{k-1}(c) = alpha_k(a)"))
                return out;
            int ic = special_index(st.t, c);
            ExtendState next = st;
            auto added = append_pairs(next.coll, st.seq, ia, ic);
            next.endpoints.insert(next.endpoints.end(), added.begin(), added.end());
            if (! gate(gates, stage, "collection", check_collection(next.coll, sub).ok(), "pairs up to t/c^3 appended"))
                return out;
            next.a = c;
            try {
                auto sub_out = main_induction(k - 1, next, mix(seed, 2));
                gates.insert(gates.end(), sub_out.gates.begin(), sub_out.gates.end());
                out.collection = sub_out.collection;
            } catch (const PreconditionFailed & e) {
                gate(gates, stage, "recursion", false, e.what());
            }
            return out;
        }

        // Many short intervals: extend from J_{m-1} into J_m for every other m.
        gate(gates, stage, "case", true, "spread over " + str(r) + " intervals");
        std::int64_t even = 0;
        std::int64_t odd = 0;
        for (int m = 2; m <= r - 2; ++m)
            (m % 2 == 0 ? even : odd) += pieces[m - 1].hi - pieces[m - 1].lo;
        int parity = even >= odd ? 0 : 1;
        vector<int> targets;
        for (int m = r - 2; m >= 2; --m)
            if (m % 2 == parity)
                targets.push_back(m);

        RainbowCollection merged = st.coll;
        vector<int> later;
        int before = merged.length();
        for (int m : targets) {
            const Piece & jm = pieces[m - 1];
            const Piece & jprev = pieces[m - 2];
            std::int64_t bm = jm.b;
            std::int64_t alpha_b = std::max<std::int64_t>(1, alpha(k - 1, bm));
            int ib = special_index(st.t, bm);
            std::string tag = "J_" + str(m);

            auto inside = slice(order, jm.lo, jm.hi, &bad);
            auto heavy = heavy_set(st, inside, 20 * static_cast<int>(pow_int(40, k - 1).convert_to<std::int64_t>()), alpha_b, ib);
            vector<int> b0 = st.bad0;
            for (int q = jm.lo + 1; q <= jm.hi; ++q)
                if (bad[order[q]])
                    b0.push_back(order[q]);
            auto c_pairs = conflict_set(pairs_in_window(st.seq, pos, jm.lo, jm.hi), sub);
            b0.insert(b0.end(), c_pairs.begin(), c_pairs.end());
            b0.insert(b0.end(), later.begin(), later.end());
            b0.insert(b0.end(), heavy.begin(), heavy.end());
            b0 = without(sorted_unique(b0), st.seq, 2, ib);

            auto seq_m = special_sequence(sub, order, jm.hi + 1, b0);
            if (! gate(gates, stage, tag + " prefix kept", same_prefix(st.seq, seq_m, ib), "agreement up to t/b^3 = " + str(ib)))
                continue;

            ExtendState next = st;
            next.bad0 = b0;
            next.seq = seq_m;
            next.endpoints.clear();
            for (int i = ia + 1; i <= ib && i <= seq_m.size(); ++i) {
                if (i < 2)
                    continue;
                int p = v_pos(seq_m, pos, i);
                int path = static_cast<int>(next.coll.paths.size());
                next.coll.paths.push_back({seq_m.u[i - 1], seq_m.v[i - 1]});
                if (p > jprev.lo && p <= jprev.hi)
                    next.endpoints.push_back(path);
            }
            if (! gate(gates, stage, tag + " collection", check_collection(next.coll, sub).ok(), "pairs up to t/b^3 appended"))
                continue;
            if (! gate(gates, stage, tag + " starts", ! next.endpoints.empty(), "paths ending in J_" + str(m - 1)))
                continue;

            auto bm_list = b0;
            auto pm_conf = collection_conflicts(next.coll, sub);
            bm_list.insert(bm_list.end(), pm_conf.begin(), pm_conf.end());
            auto pairs_m = conflict_set(pairs_in_window(seq_m, pos, jm.lo, jm.hi), sub);
            bm_list.insert(bm_list.end(), pairs_m.begin(), pairs_m.end());
            auto bm_mask = mask(bm_list, n);
            std::int64_t bad_two = count_in(bm_mask, order, jprev.lo, jm.hi);
            int rogue_m = max_rogue(slice(order, jm.lo, jm.hi, &bm_mask), sub);
            Relax c_km1 = pow_int(40, k - 1);
            Relax lhs = st.relax * (c_km1 * bad_two + c_km1 * Relax(alpha_b) * rogue_m) + Relax(len) / (10 * pow_int(2, r - m)) +
                        Relax(len) / (10 * Relax(alpha_a));
            std::int64_t jm_len = jm.hi - jm.lo;
            if (! gate(gates, stage, tag + " length", lhs <= Relax(jm_len),
                       "|J_m| = " + str(jm_len) + ", bad " + str(bad_two) + ", rogue degree " + str(rogue_m)))
                continue;

            next.a = bm;
            next.x_pos = jm.hi;
            ExtendResult sub_out;
            try {
                sub_out = main_induction(k - 1, next, mix(seed, 10 + m));
            } catch (const PreconditionFailed & e) {
                gate(gates, stage, tag + " recursion", false, e.what());
                continue;
            }
            gates.insert(gates.end(), sub_out.gates.begin(), sub_out.gates.end());
            if (! sub_out.collection)
                continue;

            RainbowCollection q;
            for (int p : next.endpoints)
                q.paths.push_back(sub_out.collection->paths[p]);
            std::int64_t stop = special_index(st.t, std::max<std::int64_t>(1, alpha_iterate(k - 1, a, std::max(0, m - 2))));
            std::set<int> early;
            for (int i = 1; i <= stop && i <= f; ++i) {
                early.insert(st.seq.v[i - 1]);
                if (i >= 2)
                    early.insert(st.seq.u[i - 1]);
            }
            bool clean = true;
            for (int w : collection_conflicts(q, sub))
                if (early.count(w)) {
                    clean = false;
                    break;
                }
            if (! gate(gates, stage, tag + " promise", clean, "new paths avoid the parts of v_i, u_i for i <= " + str(stop)))
                continue;

            RainbowCollection trial = merged;
            trial.paths.insert(trial.paths.end(), q.paths.begin(), q.paths.end());
            if (! gate(gates, stage, tag + " merge", check_collection(trial, sub).ok(), "Q_m joins the collection"))
                continue;
            merged = trial;
            auto qc = collection_conflicts(q, sub);
            later.insert(later.end(), qc.begin(), qc.end());
        }
        bool gained = merged.length() > before;
        gate(gates, stage, "gain", gained, "length " + str(before) + " -> " + str(merged.length()));
        if (gained) {
            validated(merged, sub, stage);
            out.collection = merged;
        }
        return out;
    }
}
