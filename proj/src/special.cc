#include <canonram/errors.hpp>
#include <canonram/special.hpp>

#include <algorithm>
#include <set>

namespace canonram
{
    using std::vector;

    namespace
    {
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

        auto name(const char * what, int i) -> std::string
        {
            return std::string(what) + "_" + std::to_string(i);
        }
    }

    auto special_sequence(const Substructure & sub, const vector<int> & order, int interval_end, const vector<int> & bad)
        -> SpecialSequence
    {
        const auto & c = sub.host;
        int n = c.n();
        interval_end = std::clamp(interval_end, 0, static_cast<int>(order.size()));
        SpecialSequence seq;
        seq.interval_end = interval_end;
        seq.bad = bad;
        std::sort(seq.bad.begin(), seq.bad.end());

        auto is_bad = mask(bad, n);
        vector<char> blocked(sub.parts.size(), 0);
        std::set<Color> used;
        auto u_all = sub.united();

        int start = 0;
        while (start < interval_end && is_bad[order[start]])
            ++start;
        if (start == interval_end)
            return seq;
        seq.v.push_back(order[start]);
        seq.u.push_back(-1);
        seq.rogue.push_back(0);
        blocked[sub.part_of[order[start]]] = 1;

        for (int i = start + 1; i < interval_end; ++i) {
            int x = order[i];
            if (is_bad[x] || blocked[sub.part_of[x]])
                continue;
            int partner = -1;
            Color colour = 0;
            for (int y : u_all) {
                if (is_bad[y] || blocked[sub.part_of[y]] || ! sub.rogue(x, y))
                    continue;
                Color e = c.color(x, y);
                if (! sub.is_rogue_color(e) || used.count(e))
                    continue;
                if (partner < 0 || e < colour) {
                    partner = y;
                    colour = e;
                }
            }
            if (partner < 0)
                continue;
            seq.v.push_back(x);
            seq.u.push_back(partner);
            seq.rogue.push_back(colour);
            used.insert(colour);
            blocked[sub.part_of[x]] = 1;
            blocked[sub.part_of[partner]] = 1;
        }
        return seq;
    }

    auto special_collection(const SpecialSequence & seq) -> RainbowCollection
    {
        RainbowCollection coll;
        for (int i = 0; i < seq.size(); ++i) {
            if (i == 0)
                coll.paths.push_back({seq.v[0]});
            else
                coll.paths.push_back({seq.u[i], seq.v[i]});
        }
        return coll;
    }

    auto special_blocked(const SpecialSequence & seq, int upto, const Substructure & sub, const vector<int> & bad)
        -> vector<int>
    {
        vector<int> touched;
        for (int j = 1; j < upto && j <= seq.size(); ++j) {
            touched.push_back(seq.v[j - 1]);
            if (j >= 2)
                touched.push_back(seq.u[j - 1]);
        }
        auto out = conflict_set(touched, sub);
        out.insert(out.end(), bad.begin(), bad.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    auto check_special_properties(const SpecialSequence & seq, const Substructure & sub, const vector<int> & order,
                                  const vector<int> & bad, int s) -> CheckReport
    {
        CheckReport r;
        const auto & c = sub.host;
        int n = c.n();
        int f = seq.size();
        int end = std::clamp(seq.interval_end, 0, static_cast<int>(order.size()));
        auto pos = positions(order, n);
        auto is_bad = mask(bad, n);
        auto u_all = sub.united();

        int first = 0;
        while (first < end && is_bad[order[first]])
            ++first;
        if (f == 0) {
            if (first < end)
                r.add("start", "sequence is empty but vertex " + std::to_string(order[first]) + " is available");
            return r;
        }
        if (first == end || seq.v[0] != order[first])
            r.add("start", "v_1 is not the first vertex of S outside the bad set");

        for (int i = 0; i < f; ++i) {
            int v = seq.v[i];
            if (v < 0 || v >= n || pos[v] < 0 || pos[v] >= end || is_bad[v]) {
                r.add("start", name("v", i + 1) + " is not in S outside the bad set");
                return r;
            }
            if (i > 0 && (seq.u[i] < 0 || seq.u[i] >= n || ! sub.in_u(seq.u[i]) || is_bad[seq.u[i]])) {
                r.add("start", name("u", i + 1) + " is not in U outside the bad set");
                return r;
            }
        }

        // (i) one vertex per part among all v_i and u_i.
        std::set<int> parts;
        int picked = 0;
        for (int i = 0; i < f; ++i) {
            parts.insert(sub.part_of[seq.v[i]]);
            ++picked;
            if (i > 0) {
                parts.insert(sub.part_of[seq.u[i]]);
                ++picked;
            }
        }
        if (static_cast<int>(parts.size()) != picked)
            r.add("i", "two of the v_i, u_i share a part");

        // (ii) rogue edges of pairwise distinct colours.
        std::set<Color> colours;
        for (int i = 1; i < f; ++i) {
            int v = seq.v[i];
            int u = seq.u[i];
            Color e = c.color(u, v);
            if (! sub.rogue(u, v) || ! sub.is_rogue_color(e))
                r.add("ii", name("u", i + 1) + name(" v", i + 1) + " is not a rogue edge");
            else if (e != seq.rogue[i])
                r.add("ii", name("r", i + 1) + " does not match the edge colour");
            if (! colours.insert(e).second)
                r.add("ii", "rogue colour " + std::to_string(e) + " repeats");
        }

        // (iii) before v_i, unblocked vertices only see rogue colours r_2..r_{i-1}.
        for (int i = 2; i <= f + 1; ++i) {
            auto blocked = mask(special_blocked(seq, i, sub, bad), n);
            std::set<Color> allowed(seq.rogue.begin() + 1, seq.rogue.begin() + (i - 1));
            int lo = pos[seq.v[0]];
            int hi = i <= f ? pos[seq.v[i - 1]] : end;
            for (int k = lo; k < hi; ++k) {
                int x = order[k];
                if (blocked[x])
                    continue;
                for (int y : u_all)
                    if (! blocked[y] && sub.rogue(x, y) && ! allowed.count(c.color(x, y))) {
                        r.add("iii", "vertex " + std::to_string(x) + " before " + (i <= f ? name("v", i) : std::string("the end of S")) +
                                         " has rogue colour " + std::to_string(c.color(x, y)) + " towards " + std::to_string(y));
                        break;
                    }
            }
        }

        // (iv) v_i precedes u_i.
        for (int i = 1; i < f; ++i)
            if (pos[seq.u[i]] < 0 || pos[seq.u[i]] <= pos[seq.v[i]])
                r.add("iv", name("u", i + 1) + " does not come after " + name("v", i + 1));

        // Rogue-edge count on (v_x, v_y] minus the parts blocked up to y.
        for (int y = 2; y <= f; ++y) {
            auto blocked = mask(special_blocked(seq, y + 1, sub, bad), n);
            vector<int> inside;
            std::int64_t edges = 0;
            int hi = pos[seq.v[y - 1]];
            int k = hi;
            for (int x = y - 1; x >= 1; --x) {
                int lo = pos[seq.v[x - 1]];
                for (; k > lo; --k) {
                    int w = order[k];
                    if (blocked[w])
                        continue;
                    for (int z : inside)
                        edges += sub.rogue(w, z);
                    inside.push_back(w);
                }
                std::int64_t span = hi - lo;
                if (edges > static_cast<std::int64_t>(s) * y * span)
                    r.add("count", "(v_" + std::to_string(x) + ", v_" + std::to_string(y) + "] holds " + std::to_string(edges) +
                                       " rogue edges, above s*y*" + std::to_string(span));
            }
        }
        return r;
    }

    auto check_prefix_stability(const Substructure & sub, const vector<int> & order, int interval_end, const vector<int> & bad,
                                const vector<int> & bad_bigger, int p) -> CheckReport
    {
        CheckReport r;
        int n = sub.host.n();
        auto seq = special_sequence(sub, order, interval_end, bad);
        int f = seq.size();
        if (p < 1 || p > f)
            throw HypothesisUnmet("p = " + std::to_string(p) + " is outside 1.." + std::to_string(f));
        auto pos = positions(order, n);

        auto cut = special_sequence(sub, order, pos[seq.v[p - 1]] + 1, bad);
        if (cut.size() != p || ! std::equal(cut.v.begin(), cut.v.end(), seq.v.begin()) ||
            ! std::equal(cut.u.begin(), cut.u.end(), seq.u.begin()))
            r.add("truncation", "sequence on the interval ending at v_p is not the prefix v_1..v_p");

        auto big = mask(bad_bigger, n);
        for (int v : bad)
            if (! big[v])
                throw HypothesisUnmet("bad set is not contained in the enlarged bad set (vertex " + std::to_string(v) + ")");
        for (int i = 0; i < p; ++i)
            if (big[seq.v[i]] || (i > 0 && big[seq.u[i]]))
                throw HypothesisUnmet("enlarged bad set contains v_" + std::to_string(i + 1) + " or u_" + std::to_string(i + 1));
        for (int i = p; i < f; ++i)
            for (int w : conflict_set({seq.v[i], seq.u[i]}, sub))
                if (! big[w])
                    throw HypothesisUnmet("part of v_" + std::to_string(i + 1) + " or u_" + std::to_string(i + 1) +
                                          " is not inside the enlarged bad set");

        auto grown = special_sequence(sub, order, interval_end, bad_bigger);
        for (int i = 0; i < p; ++i)
            if (i >= grown.size() || grown.v[i] != seq.v[i] || grown.u[i] != seq.u[i]) {
                r.add("enlargement", "v_" + std::to_string(i + 1) + " changed under the enlarged bad set");
                break;
            }
        for (int i = p; i < std::min(f, grown.size()); ++i)
            if (pos[grown.v[i]] < pos[seq.v[i]])
                r.add("enlargement", "v'_" + std::to_string(i + 1) + " comes before v_" + std::to_string(i + 1));
        return r;
    }
}
