#include "../support/oracles.hpp"

#include <canonram/bounds.hpp>
#include <canonram/detect.hpp>
#include <canonram/driver.hpp>
#include <canonram/embed.hpp>
#include <canonram/er_search.hpp>
#include <canonram/errors.hpp>
#include <canonram/extend.hpp>
#include <canonram/io.hpp>
#include <canonram/special.hpp>
#include <canonram/substructure.hpp>
#include <canonram/witness.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

using namespace canonram;

namespace
{
    // Tolerances and sizes, pinned.
    constexpr double c1_limit_s = 1.0;
    constexpr double c2_limit_s = 600.0;
    constexpr double c3_limit_s = 60.0;
    constexpr double c4_limit_s = 300.0;
    constexpr int c5_hosts = 1000;
    constexpr int c6_trials = 10000;
    constexpr double c6_sigmas = 3.0;
    constexpr int c7_sequences = 500;
    constexpr int c7_prefix_triples = 200;
    constexpr double c8_limit_s = 120.0;
    constexpr int c8_random = 1000;
    constexpr int c8_random_n = 200;
    constexpr int c9_pairs = 200;
    constexpr int c10_runs = 10000;
    constexpr int c11_per_n = 60;
    constexpr double c11_ratio = 2.0 / 3.0;
    constexpr std::array<int, 3> c12_threads = {1, 4, 8};

    // Criteria that cannot pass as stated; the reason is printed with the line.
    const std::map<int, std::string> unattainable = {
        {3, "hypercube K_16 contains a weakly lexicographic C_9; see the notes in the README"},
    };

    struct Result
    {
        bool pass = false;
        std::string detail;
        // Set when the failure is exactly the documented unattainable part.
        bool known_gap = false;
    };

    using Clock = std::chrono::steady_clock;

    auto seconds_since(Clock::time_point t) -> double
    {
        return std::chrono::duration<double>(Clock::now() - t).count();
    }

    auto fmt(double x) -> std::string
    {
        std::ostringstream out;
        out.precision(3);
        out << x;
        return out.str();
    }

    // 1. Exact tiny values, both strategies, each under a second.
    auto criterion1() -> Result
    {
        struct Case
        {
            std::string name;
            std::function<ErResult(const ErOptions &)> run;
            int want;
        };
        std::vector<Case> cases = {
            {"ER(K2)", [](const ErOptions & o) { return er_number(complete_graph(2), 5, o); }, 2},
            {"ER(K3)", [](const ErOptions & o) { return er_number(complete_graph(3), 5, o); }, 3},
            {"ER(P3)", [](const ErOptions & o) { return er_number(path_graph(3), 5, o); }, 3},
            {"f(P3,3)", [](const ErOptions & o) { return f_number(path_graph(3), 3, 5, o); }, 3},
        };
        for (int t = 2; t <= 6; ++t)
            cases.push_back({"f(P2," + std::to_string(t) + ")", [t](const ErOptions & o) { return f_number(path_graph(2), t, 5, o); }, 2});
        bool ok = true;
        std::string detail;
        for (const auto & c : cases) {
            int values[2];
            double worst = 0;
            int i = 0;
            for (auto s : {Strategy::Pruned, Strategy::Naive}) {
                ErOptions o;
                o.strategy = s;
                auto t0 = Clock::now();
                auto r = c.run(o);
                worst = std::max(worst, seconds_since(t0));
                values[i++] = r.exact ? r.value : -1;
            }
            bool here = values[0] == c.want && values[1] == c.want && worst < c1_limit_s;
            ok = ok && here;
            detail += c.name + "=" + std::to_string(values[0]) + "/" + std::to_string(values[1]) + " (" + fmt(worst) + "s) ";
        }
        return {ok, detail};
    }

    // 2. ER(K4) up to N = 6, naive agreement up to N = 5, witness avoids.
    auto criterion2() -> Result
    {
        auto k4 = complete_graph(4);
        ErOptions naive;
        naive.strategy = Strategy::Naive;
        bool agree = true;
        for (int n = 2; n <= 5; ++n)
            agree = agree && exists_avoiding_coloring(k4, n).has_value() == exists_avoiding_coloring(k4, n, naive).has_value();
        auto t0 = Clock::now();
        auto r = er_number(k4, 6);
        double secs = seconds_since(t0);
        bool witness_ok = r.witness && ! find_any_canonical(k4, *r.witness).has_value();
        if (witness_ok)
            for (auto kind : {Kind::Mono, Kind::Lex, Kind::Rainbow})
                witness_ok = witness_ok && ! oracle::naive_has_copy(k4, *r.witness, kind);
        bool ok = agree && secs < c2_limit_s && witness_ok;
        std::string value = r.exact ? std::to_string(r.value) : ">= " + std::to_string(r.value);
        return {ok, "ER(K4) " + value + ", pruned " + fmt(secs) + "s, naive agreement N<=5 " + (agree ? "yes" : "no") +
                        ", witness on " + std::to_string(r.witness ? r.witness->n() : 0) + " vertices " +
                        (witness_ok ? "avoids" : "FAILS")};
    }

    // 3. Hypercube K_16 against C_9.
    auto criterion3() -> Result
    {
        auto c = hypercube_coloring(4);
        auto c9 = cycle_graph(9);
        auto rep = verify_witness(c9, c, true);
        auto t0 = Clock::now();
        bool no_mono = ! find_copy(c9, c, Kind::Mono).has_value();
        bool no_rainbow = ! find_copy(c9, c, Kind::Rainbow).has_value();
        double secs = seconds_since(t0);
        bool others = rep.no_mono && rep.no_lex && rep.no_rainbow && no_mono && no_rainbow && secs < c3_limit_s;
        bool ok = others && rep.no_weaklex;
        std::string detail = std::string("structural: mono ") + (rep.no_mono ? "none" : "FOUND") + ", lex " +
                             (rep.no_lex ? "none" : "FOUND") + ", weak-lex " + (rep.no_weaklex ? "none" : "FOUND") + ", rainbow " +
                             (rep.no_rainbow ? "none" : "FOUND") + "; detector mono " + (no_mono ? "none" : "FOUND") +
                             ", rainbow " + (no_rainbow ? "none" : "FOUND") + " in " + fmt(secs) + "s";
        if (! rep.no_weaklex) {
            auto w = find_copy(c9, c, Kind::WeakLex);
            if (w) {
                detail += "; weak-lex copy at";
                for (int v : w->embedding)
                    detail += " " + std::to_string(v);
                bool confirmed = w->order && oracle::is_weak_lex(c9, c, w->embedding, *w->order);
                detail += confirmed ? " (confirmed by the definition oracle)" : " (NOT confirmed by the definition oracle)";
                return {ok, detail, others && confirmed};
            }
        }
        return {ok, detail};
    }

    // 4. lex_color_count >= tau >= ceil(m / Delta) on connected graphs up to 7 vertices.
    auto criterion4() -> Result
    {
        auto t0 = Clock::now();
        std::int64_t graphs = 0;
        std::int64_t checks = 0;
        std::int64_t violations = 0;
        for (int n = 2; n <= 7; ++n) {
            auto orders = oracle::all_permutations(n);
            for (const auto & g : oracle::graph_classes(n)) {
                if (! is_connected(g))
                    continue;
                ++graphs;
                int tau = vertex_cover_number(g);
                int delta = g.max_degree();
                int floor_bound = (g.m() + delta - 1) / delta;
                if (tau < floor_bound)
                    ++violations;
                for (const auto & o : orders) {
                    ++checks;
                    if (lex_color_count(g, o) < tau)
                        ++violations;
                }
            }
        }
        double secs = seconds_since(t0);
        return {violations == 0 && secs < c4_limit_s, std::to_string(graphs) + " connected graphs, " + std::to_string(checks) +
                                                          " orders, " + std::to_string(violations) + " violations, " + fmt(secs) + "s"};
    }

    // 5. Trees on s vertices embed into colour classes with more than s|X| edges.
    auto criterion5() -> Result
    {
        std::mt19937_64 rng(5005);
        std::map<int, std::vector<Graph>> trees;
        for (int s : {3, 4, 5})
            trees[s] = oracle::all_trees(s);
        int failures = 0;
        std::int64_t embeddings = 0;
        for (int rep = 0; rep < c5_hosts; ++rep) {
            int s = 3 + rep % 3;
            std::uniform_int_distribution<int> size(2 * s + 2, 2 * s + 12);
            int x = size(rng);
            int pairs = x * (x - 1) / 2;
            std::uniform_int_distribution<int> count(s * x + 1, pairs);
            int m = count(rng);
            std::vector<std::pair<int, int>> all;
            for (int u = 0; u < x; ++u)
                for (int v = u + 1; v < x; ++v)
                    all.push_back({u, v});
            std::shuffle(all.begin(), all.end(), rng);
            auto c = EdgeColoring::dense(x, 0);
            for (int i = 0; i < pairs; ++i)
                c.set(all[i].first, all[i].second, i < m ? 1 : 2 + i % 3);
            auto host = c.color_class(1);
            for (const auto & tree : trees[s]) {
                auto emb = embed_tree_min_degree(tree, host);
                ++embeddings;
                bool ok = emb.has_value() && std::set<int>(emb->begin(), emb->end()).size() == static_cast<std::size_t>(s);
                if (ok)
                    for (auto [u, v] : tree.edges())
                        ok = ok && c.color((*emb)[u], (*emb)[v]) == 1;
                failures += ! ok;
            }
        }
        return {failures == 0, std::to_string(c5_hosts) + " hosts, " + std::to_string(embeddings) + " tree embeddings, " +
                                   std::to_string(failures) + " failures"};
    }

    // 6. Rejection frequency of the rainbow sampler against the union bound.
    auto criterion6() -> Result
    {
        constexpr int n = 3;
        constexpr int s = 81;
        auto h = complete_graph(n);
        auto c = EdgeColoring::dense(n * s);
        std::vector<std::vector<int>> parts(n);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < s; ++a)
                parts[i].push_back(i * s + a);
        Color inside = s + 1;
        for (int x = 0; x < n * s; ++x)
            for (int y = x + 1; y < n * s; ++y) {
                if (x / s == y / s)
                    c.set(x, y, inside++);
                else
                    c.set(x, y, (x % s + y % s) % s + 1);
            }
        int rejected = 0;
        for (int trial = 0; trial < c6_trials; ++trial)
            rejected += sample_rainbow_embedding(h, parts, c, 1, static_cast<std::uint64_t>(trial)).rejections;
        double freq = static_cast<double>(rejected) / c6_trials;
        // n(n-1)(n-2) + n(n-1)(n-2)(n-3) bad events, each of probability at most 1/n^4.
        double bound = static_cast<double>(n * (n - 1) * (n - 2) + n * (n - 1) * (n - 2) * (n - 3)) / std::pow(n, 4);
        double sigma = std::sqrt(bound * (1 - bound) / c6_trials);
        return {freq <= bound + c6_sigmas * sigma, "rejection frequency " + fmt(freq) + " vs bound " + fmt(bound) + " + " +
                                                      fmt(c6_sigmas) + " sigma (" + fmt(sigma) + ")"};
    }

    // 7. Special-sequence properties and prefix stability.
    auto criterion7() -> Result
    {
        std::mt19937_64 rng(7007);
        int bad_sequences = 0;
        std::string first;
        for (int rep = 0; rep < c7_sequences; ++rep) {
            oracle::SubstructureParams p;
            p.s = 1 + rep % 3;
            p.t = 4 + rep % 5;
            p.min_parts = 4;
            p.max_parts = 14;
            p.rogue_colors = 1 + rep % (p.t - 1);
            p.rogue_prob = 0.2 + 0.1 * (rep % 5);
            auto sub = oracle::random_substructure(p, rng);
            if (! verify_substructure(sub, p.s, p.t).ok()) {
                ++bad_sequences;
                continue;
            }
            auto order = median_ordering(sub.united(), sub.orientation, rep);
            std::vector<int> bad;
            std::bernoulli_distribution coin(0.1 * (rep % 3));
            for (int v : order)
                if (coin(rng))
                    bad.push_back(v);
            std::uniform_int_distribution<int> cut(0, static_cast<int>(order.size()));
            int end = rep % 2 ? static_cast<int>(order.size()) : cut(rng);
            auto seq = special_sequence(sub, order, end, bad);
            auto r = check_special_properties(seq, sub, order, bad, p.s);
            if (! r.ok()) {
                ++bad_sequences;
                if (first.empty())
                    first = r.violations.front().clause + ": " + r.violations.front().witness;
            }
        }

        int bad_prefix = 0;
        int triples = 0;
        for (int rep = 0; triples < c7_prefix_triples && rep < 20 * c7_prefix_triples; ++rep) {
            oracle::SubstructureParams p;
            p.s = 1 + rep % 2;
            p.t = 5 + rep % 4;
            p.min_parts = 6;
            p.max_parts = 14;
            p.rogue_colors = p.t - 1;
            p.rogue_prob = 0.5;
            auto sub = oracle::random_substructure(p, rng);
            auto order = median_ordering(sub.united(), sub.orientation, rep);
            int end = static_cast<int>(order.size());
            std::vector<int> bad;
            std::bernoulli_distribution coin(0.1);
            for (int v : order)
                if (coin(rng))
                    bad.push_back(v);
            auto seq = special_sequence(sub, order, end, bad);
            if (seq.size() < 1)
                continue;
            std::uniform_int_distribution<int> pick(1, seq.size());
            int pp = pick(rng);
            // Enlarge: parts of later pairs plus random vertices away from the kept pairs.
            std::set<int> keep_parts;
            for (int i = 0; i < pp; ++i) {
                keep_parts.insert(sub.part_of[seq.v[i]]);
                if (i > 0)
                    keep_parts.insert(sub.part_of[seq.u[i]]);
            }
            std::vector<int> later;
            for (int i = pp; i < seq.size(); ++i) {
                later.push_back(seq.v[i]);
                later.push_back(seq.u[i]);
            }
            auto bigger = conflict_set(later, sub);
            bigger.insert(bigger.end(), bad.begin(), bad.end());
            std::bernoulli_distribution extra(0.15);
            std::set<int> pinned;
            for (int i = 0; i < pp; ++i) {
                pinned.insert(seq.v[i]);
                if (i > 0)
                    pinned.insert(seq.u[i]);
            }
            for (int v : order)
                if (! pinned.count(v) && extra(rng))
                    bigger.push_back(v);
            std::sort(bigger.begin(), bigger.end());
            bigger.erase(std::unique(bigger.begin(), bigger.end()), bigger.end());
            ++triples;
            try {
                auto r = check_prefix_stability(sub, order, end, bad, bigger, pp);
                if (! r.ok()) {
                    ++bad_prefix;
                    if (first.empty())
                        first = r.violations.front().clause + ": " + r.violations.front().witness;
                }
            } catch (const HypothesisUnmet & e) {
                ++bad_prefix;
                if (first.empty())
                    first = e.what();
            }
        }
        bool ok = bad_sequences == 0 && bad_prefix == 0 && triples == c7_prefix_triples;
        std::string detail = std::to_string(c7_sequences) + " sequences, " + std::to_string(bad_sequences) + " violations; " +
                             std::to_string(triples) + " prefix triples, " + std::to_string(bad_prefix) + " violations";
        if (! first.empty())
            detail += "; first: " + first;
        return {ok, detail};
    }

    auto ham_ok(const std::vector<int> & path, int n, const Orientation & o) -> bool
    {
        if (static_cast<int>(path.size()) != n)
            return false;
        std::vector<char> seen(n, 0);
        for (int v : path) {
            if (v < 0 || v >= n || seen[v])
                return false;
            seen[v] = 1;
        }
        for (int i = 0; i + 1 < n; ++i)
            if (o.dir(path[i], path[i + 1]) <= 0)
                return false;
        return true;
    }

    // 8. Tournament Hamiltonian paths.
    auto criterion8() -> Result
    {
        auto t0 = Clock::now();
        std::int64_t checked = 0;
        std::int64_t bad = 0;
        for (int n = 1; n <= 7; ++n) {
            std::vector<int> vs(n);
            std::iota(vs.begin(), vs.end(), 0);
            std::uint64_t masks = std::uint64_t{1} << (n * (n - 1) / 2);
            for (std::uint64_t m = 0; m < masks; ++m) {
                auto o = oracle::tournament_from_mask(n, m);
                bad += ! ham_ok(tournament_ham_path(vs, o), n, o);
                ++checked;
            }
        }
        std::mt19937_64 rng(8008);
        std::vector<int> vs(c8_random_n);
        std::iota(vs.begin(), vs.end(), 0);
        for (int rep = 0; rep < c8_random; ++rep) {
            auto o = oracle::random_tournament(c8_random_n, rng);
            std::shuffle(vs.begin(), vs.end(), rng);
            bad += ! ham_ok(tournament_ham_path(vs, o), c8_random_n, o);
            ++checked;
        }
        double secs = seconds_since(t0);
        return {bad == 0 && secs < c8_limit_s,
                std::to_string(checked) + " tournaments, " + std::to_string(bad) + " invalid paths, " + fmt(secs) + "s"};
    }

    // 9. Gluing length and rainbow property.
    auto criterion9() -> Result
    {
        std::mt19937_64 rng(9009);
        int bad = 0;
        int exhausted = 0;
        int multi = 0;
        for (int rep = 0; rep < c9_pairs; ++rep) {
            oracle::SubstructureParams p;
            p.s = 1 + rep % 3;
            p.t = 3 + rep % 6;
            p.min_parts = 6;
            p.max_parts = 16;
            p.rogue_colors = p.t - 1;
            p.rogue_prob = 0.4;
            p.extra_connectors = rep % 3;
            auto sub = oracle::random_substructure(p, rng);
            if (! verify_substructure(sub, p.s, p.t).ok()) {
                ++bad;
                continue;
            }
            auto coll = oracle::random_collection(sub, p.t, 4, rng);
            if (coll.paths.empty() || ! check_collection(coll, sub).ok()) {
                ++bad;
                continue;
            }
            multi += coll.paths.size() > 1;
            try {
                auto path = glue_collection(coll, sub);
                int want = coll.length() + static_cast<int>(coll.paths.size()) - 1;
                if (static_cast<int>(path.size()) != want || ! oracle::is_rainbow_path(path, sub.host))
                    ++bad;
            } catch (const ConnectorsExhausted &) {
                ++exhausted;
            }
        }
        return {bad == 0 && exhausted == 0, std::to_string(c9_pairs) + " pairs (" + std::to_string(multi) + " with several paths), " +
                                                std::to_string(bad) + " bad, " + std::to_string(exhausted) + " exhausted"};
    }

    struct FuzzTally
    {
        int copies = 0;
        int failures = 0;
        int unsound = 0;
        int unnamed = 0;
        std::string first;

        auto note(const std::string & what) -> void
        {
            if (first.empty())
                first = what;
        }

        auto text(const std::string & name) const -> std::string
        {
            return name + " " + std::to_string(copies) + "/" + std::to_string(failures) +
                   (unsound + unnamed ? " (" + std::to_string(unsound) + " unsound, " + std::to_string(unnamed) + " unnamed)" : "");
        }
    };

    auto gates_named(const std::vector<GateRecord> & gates) -> bool
    {
        if (gates.empty())
            return false;
        for (const auto & g : gates)
            if (g.gate.empty() || g.stage.empty())
                return false;
        return std::any_of(gates.begin(), gates.end(), [](const GateRecord & g) { return ! g.passed; });
    }

    auto random_relax(std::mt19937_64 & rng) -> Relax
    {
        static const std::array<Relax, 4> choices = {Relax(1), Relax(1, 400), parse_relax("1e-18"), Relax(256)};
        std::uniform_int_distribution<int> pick(0, 3);
        return choices[pick(rng)];
    }

    auto fuzz_engine(bool bipartite, FuzzTally & tally, std::mt19937_64 & rng) -> void
    {
        std::vector<Graph> patterns = bipartite ? std::vector<Graph>{cycle_graph(4), path_graph(4), star_graph(3), complete_bipartite(2, 3)}
                                                : std::vector<Graph>{complete_graph(3), cycle_graph(5), complete_graph(4)};
        std::uniform_int_distribution<int> pick(0, static_cast<int>(patterns.size()) - 1);
        std::uniform_int_distribution<int> size(8, 24);
        const auto & h = patterns[pick(rng)];
        int n = size(rng);
        std::uniform_int_distribution<int> pal(1, n * n);
        int palette = std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? 1 : pal(rng);
        auto c = oracle::random_coloring(n, palette, rng);
        auto relax = random_relax(rng);
        auto seed = rng();
        try {
            auto out = bipartite ? bipartite_pipeline(h, c, relax, seed, 20) : nonbipartite_pipeline(h, c, relax, seed);
            if (out.copy) {
                ++tally.copies;
                if (! verify_copy(h, c, *out.copy)) {
                    ++tally.unsound;
                    tally.note("copy failed verification");
                }
            }
            else {
                ++tally.failures;
                if (out.reason.empty() || ! gates_named(out.gates)) {
                    ++tally.unnamed;
                    tally.note("failure without named gates: " + out.reason);
                }
            }
        } catch (const std::exception & e) {
            ++tally.unsound;
            tally.note(e.what());
        }
    }

    struct ExtendCase
    {
        Substructure sub;
        ExtendState state;
    };

    auto make_extend_case(std::mt19937_64 & rng, bool induction) -> std::optional<ExtendCase>
    {
        oracle::SubstructureParams p;
        std::uniform_int_distribution<int> die(0, 99);
        p.s = 1 + die(rng) % 2;
        p.t = 4 + die(rng) % 8;
        p.min_parts = 8;
        p.max_parts = 60;
        p.rogue_colors = 1 + die(rng) % (p.t - 1);
        p.rogue_prob = 0.02 * (die(rng) % 10);
        ExtendCase ec{oracle::random_substructure(p, rng), {}};
        auto & sub = ec.sub;
        auto order = median_ordering(sub.united(), sub.orientation, rng());
        std::vector<int> bad;
        std::bernoulli_distribution coin(0.05 * (die(rng) % 3));
        for (int v : order)
            if (coin(rng))
                bad.push_back(v);
        auto seq = special_sequence(sub, order, static_cast<int>(order.size()), bad);
        if (seq.size() < 1)
            return std::nullopt;
        auto & st = ec.state;
        st.order = order;
        st.bad0 = bad;
        st.seq = seq;
        st.s = p.s;
        st.t = p.t;
        st.relax = random_relax(rng);
        int f = seq.size();
        std::vector<int> pos(sub.host.n(), -1);
        for (std::size_t i = 0; i < order.size(); ++i)
            pos[order[i]] = static_cast<int>(i);
        int ell;
        if (induction) {
            std::uniform_int_distribution<std::int64_t> apick(2, 6);
            st.a = apick(rng);
            st.t = std::max<int>(st.t, static_cast<int>(st.a * st.a * st.a) * (1 + die(rng) % 2));
            ell = special_index(st.t, st.a);
            if (ell > f)
                ell = f;
        }
        else {
            ell = 1 + die(rng) % f;
            st.ell = ell;
        }
        int start = pos[seq.v[ell - 1]];
        int last = static_cast<int>(order.size()) - 1;
        if (start >= last)
            return std::nullopt;
        std::uniform_int_distribution<int> xpick(start + 1, last);
        st.x_pos = die(rng) % 2 ? last : xpick(rng);
        auto full = special_collection(seq);
        full.paths.resize(std::min<int>(ell, f));
        st.coll = full;
        st.endpoints.resize(st.coll.paths.size());
        std::iota(st.endpoints.begin(), st.endpoints.end(), 0);
        return ec;
    }

    auto fuzz_extend(int k, FuzzTally & tally, std::mt19937_64 & rng) -> void
    {
        auto ec = make_extend_case(rng, k > 0);
        if (! ec) {
            ++tally.failures;
            return;
        }
        ec->state.sub = &ec->sub;
        const auto & st = ec->state;
        try {
            auto out = k > 0 ? main_induction(k, st, rng()) : basic_extend(st, rng());
            if (out.collection) {
                ++tally.copies;
                if (! check_collection(*out.collection, ec->sub).ok() || out.collection->length() <= st.coll.length()) {
                    ++tally.unsound;
                    tally.note("extension output invalid or without gain");
                }
            }
            else {
                ++tally.failures;
                if (! gates_named(out.gates)) {
                    ++tally.unnamed;
                    tally.note("absent result without a failed gate");
                }
            }
        } catch (const PreconditionFailed & e) {
            ++tally.failures;
            // Messages read "PreconditionFailed: <stage>: <gate> (<detail>)".
            std::string msg = e.what();
            if (msg.find(": ", std::string("PreconditionFailed: ").size()) == std::string::npos) {
                ++tally.unnamed;
                tally.note(msg);
            }
        } catch (const std::exception & e) {
            ++tally.unsound;
            tally.note(e.what());
        }
    }

    auto fuzz_driver(FuzzTally & tally, std::mt19937_64 & rng) -> void
    {
        std::uniform_int_distribution<int> die(0, 999);
        int s = 2 + die(rng) % 4;
        int t = 2 + die(rng) % 7;
        int n = 5 + die(rng) % 10;
        int k = 1 + die(rng) % 3;
        auto tree = oracle::random_tree(s, rng);
        int palette = 1 + die(rng) % (n * 2);
        auto c = oracle::random_coloring(n, palette, rng);
        try {
            auto out = constrained_driver(tree, t, k, c, rng(), random_relax(rng));
            if (out.kind == DriverKind::MonoTree) {
                ++tally.copies;
                bool ok = static_cast<int>(out.vertices.size()) == s &&
                          std::set<int>(out.vertices.begin(), out.vertices.end()).size() == static_cast<std::size_t>(s);
                if (ok)
                    for (auto [u, v] : tree.edges())
                        ok = ok && c.color(out.vertices[u], out.vertices[v]) == out.color;
                if (! ok) {
                    ++tally.unsound;
                    tally.note("tree embedding not monochromatic");
                }
            }
            else if (out.kind == DriverKind::RainbowPath) {
                ++tally.copies;
                if (static_cast<int>(out.vertices.size()) < t || ! oracle::is_rainbow_path(out.vertices, c)) {
                    ++tally.unsound;
                    tally.note("path not rainbow or too short");
                }
            }
            else {
                ++tally.failures;
                if (! gates_named(out.gates)) {
                    ++tally.unnamed;
                    tally.note("driver failure without a failed gate");
                }
            }
        } catch (const std::exception & e) {
            ++tally.unsound;
            tally.note(e.what());
        }
    }

    // 10. Engine soundness fuzz.
    auto criterion10() -> Result
    {
        std::mt19937_64 rng(10010);
        std::vector<std::pair<std::string, FuzzTally>> tallies = {
            {"bipartite", {}}, {"nonbipartite", {}}, {"basic_extend", {}}, {"main_induction", {}}, {"driver", {}}};
        auto t0 = Clock::now();
        for (int i = 0; i < c10_runs; ++i) {
            fuzz_engine(true, tallies[0].second, rng);
            fuzz_engine(false, tallies[1].second, rng);
            fuzz_extend(0, tallies[2].second, rng);
            fuzz_extend(1 + i % 3, tallies[3].second, rng);
            fuzz_driver(tallies[4].second, rng);
        }
        bool ok = true;
        std::string detail = std::to_string(c10_runs) + " runs each, produced/failed: ";
        std::string first;
        for (const auto & [name, t] : tallies) {
            ok = ok && t.unsound == 0 && t.unnamed == 0;
            detail += t.text(name) + "; ";
            if (first.empty() && ! t.first.empty())
                first = name + ": " + t.first;
        }
        detail += fmt(seconds_since(t0)) + "s";
        if (! first.empty())
            detail += "; first problem: " + first;
        return {ok, detail};
    }

    // 11. Median ordering optimality.
    auto criterion11() -> Result
    {
        std::mt19937_64 rng(11011);
        int not_optimal = 0;
        int below = 0;
        int runs = 0;
        double worst = 1.0;
        for (int n = 2; n <= 8; ++n)
            for (int rep = 0; rep < c11_per_n; ++rep) {
                Orientation o(n);
                std::uniform_int_distribution<int> d(rep % 2 ? -1 : 0, 1);
                std::bernoulli_distribution coin(0.5);
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) {
                        int v = d(rng);
                        if (rep % 2 == 0)
                            v = coin(rng) ? 1 : -1;
                        o.set(i, j, v);
                    }
                std::vector<int> vs(n);
                std::iota(vs.begin(), vs.end(), 0);
                auto order = median_ordering(vs, o, rng());
                ++runs;
                auto base = forward_count(order, o);
                bool optimal = true;
                for (int i = 0; i < n && optimal; ++i)
                    for (int j = 0; j < n; ++j) {
                        auto moved = order;
                        int v = moved[i];
                        moved.erase(moved.begin() + i);
                        moved.insert(moved.begin() + j, v);
                        if (forward_count(moved, o) > base) {
                            optimal = false;
                            break;
                        }
                    }
                not_optimal += ! optimal;
                auto best = oracle::brute_force_forward(vs, o);
                if (best > 0) {
                    double ratio = static_cast<double>(base) / static_cast<double>(best);
                    worst = std::min(worst, ratio);
                    below += ratio < c11_ratio;
                }
            }
        return {not_optimal == 0 && below == 0, std::to_string(runs) + " orientations, " + std::to_string(not_optimal) +
                                                     " not relocation-optimal, worst ratio to optimum " + fmt(worst)};
    }

    auto run_capture(const std::string & cmd, int & status) -> std::string
    {
        std::string out;
        FILE * pipe = ::popen((cmd + " 2>/dev/null").c_str(), "r");
        if (! pipe) {
            status = -1;
            return out;
        }
        std::array<char, 4096> buf;
        std::size_t got;
        while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
            out.append(buf.data(), got);
        status = ::pclose(pipe);
        return out;
    }

    // 12. Byte-identical CLI output across repeats and thread counts.
    auto criterion12(const std::string & cli) -> Result
    {
        if (cli.empty())
            return {false, "no CLI path given"};
        auto dir = std::filesystem::temp_directory_path() / ("canonram_accept_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
        auto file = [&](const std::string & name, const std::string & body) {
            auto p = (dir / name).string();
            std::ofstream(p) << body;
            return p;
        };
        auto k3 = file("k3.graph", "3 3\n0 1\n0 2\n1 2\n");
        auto p3 = file("p3.graph", "3 2\n0 1\n1 2\n");
        auto c4 = file("c4.graph", "4 4\n0 1\n1 2\n2 3\n0 3\n");
        auto c5 = file("c5.graph", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
        std::ostringstream col;
        write_coloring(col, random_coloring(16, 3, 12));
        auto rnd = file("rnd.col", col.str());
        std::ostringstream mono;
        write_coloring(mono, monochromatic_coloring(16));
        auto mono16 = file("mono16.col", mono.str());
        std::ostringstream small;
        write_coloring(small, random_coloring(9, 4, 5));
        auto rnd9 = file("rnd9.col", small.str());

        std::vector<std::string> commands = {
            "detect --pattern " + k3 + " --coloring " + rnd + " --kind any",
            "er --pattern " + p3 + " --nmax 5",
            "er --pattern " + k3 + " --nmax 4 --strategy naive",
            "constrained --tree " + p3 + " --t 3 --nmax 5",
            "construct --kind random --n 12 --palette 5",
            "construct --kind hypercube --r 3",
            "verify --pattern " + c5 + " --coloring " + rnd + " --structural",
            "pipeline --engine bipartite --pattern " + c4 + " --coloring " + mono16 + " --relax 256",
            "pipeline --engine nonbipartite --pattern " + c5 + " --coloring " + rnd + " --relax 1e-18 --trace",
            "bounds alpha --k 2 --t 8",
            "bounds bipartite_upper --n 4 --t 1",
            "constrained-run --tree " + p3 + " --t 4 --k 2 --coloring " + rnd9 + " --trace",
        };
        int mismatches = 0;
        std::string first;
        for (const auto & cmd : commands) {
            std::string reference;
            bool have = false;
            for (int th : c12_threads)
                for (int rep = 0; rep < 2; ++rep) {
                    int status = 0;
                    auto out = run_capture(cli + " --seed 77 --threads " + std::to_string(th) + " " + cmd, status);
                    if (! have) {
                        reference = out;
                        have = true;
                    }
                    else if (out != reference) {
                        ++mismatches;
                        if (first.empty())
                            first = cmd;
                    }
                    if (out.empty() && first.empty())
                        first = "empty output: " + cmd;
                }
        }
        std::filesystem::remove_all(dir);
        bool ok = mismatches == 0 && first.empty();
        return {ok, std::to_string(commands.size()) + " commands x " + std::to_string(c12_threads.size()) + " thread counts x 2, " +
                        std::to_string(mismatches) + " mismatches" + (first.empty() ? "" : "; first: " + first)};
    }
}

auto main(int argc, char ** argv) -> int
{
    std::string cli;
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc)
            cli = argv[++i];
        else
            only.insert(std::stoi(a));
    }

    std::vector<std::pair<int, std::function<Result()>>> criteria = {
        {1, criterion1},   {2, criterion2},   {3, criterion3},  {4, criterion4},
        {5, criterion5},   {6, criterion6},   {7, criterion7},  {8, criterion8},
        {9, criterion9},   {10, criterion10}, {11, criterion11}, {12, [&] { return criterion12(cli); }},
    };

    int unexpected = 0;
    for (const auto & [id, run] : criteria) {
        if (! only.empty() && ! only.count(id))
            continue;
        auto t0 = Clock::now();
        Result r;
        try {
            r = run();
        } catch (const std::exception & e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        auto known = unattainable.find(id);
        bool expected = known != unattainable.end() && r.known_gap;
        std::string tag = r.pass ? "PASS" : (expected ? "FAIL (unattainable)" : "FAIL");
        std::cout << "criterion " << id << ": " << tag << " [" << fmt(seconds_since(t0)) << "s] " << r.detail;
        if (! r.pass && expected)
            std::cout << " -- " << known->second;
        std::cout << std::endl;
        if (! r.pass && ! expected)
            ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
