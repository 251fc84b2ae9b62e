#include <canonram/bounds.hpp>
#include <canonram/cache.hpp>
#include <canonram/detect.hpp>
#include <canonram/driver.hpp>
#include <canonram/embed.hpp>
#include <canonram/er_search.hpp>
#include <canonram/errors.hpp>
#include <canonram/io.hpp>
#include <canonram/report.hpp>
#include <canonram/witness.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace canonram;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_absent = 1;
    constexpr int exit_input = 2;

    struct Config
    {
        std::uint64_t seed = 0x5EED;
        int threads = 0;
        std::string relax = "1";
        std::string cache;
    };

    auto emit(Json body) -> void
    {
        Json out;
        out["schema"] = json_schema;
        for (auto & [k, v] : body.items())
            out[k] = v;
        std::cout << out.dump(2) << '\n';
    }

    auto thread_count(const Config & cfg) -> int
    {
        if (cfg.threads > 0)
            return cfg.threads;
        if (const char * env = std::getenv("CANONRAM_THREADS")) {
            try {
                int t = std::stoi(env);
                if (t > 0)
                    return t;
            } catch (const std::exception &) {
            }
            throw InvalidInput("CANONRAM_THREADS must be a positive integer, got '" + std::string(env) + "'");
        }
        return 1;
    }

    // Integer with "p/q" accepted for rational flags.
    auto parse_ratio(const std::string & text) -> std::pair<std::int64_t, std::int64_t>
    {
        try {
            auto slash = text.find('/');
            if (slash == std::string::npos)
                return {std::stoll(text), 1};
            return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
        } catch (const std::exception &) {
            throw InvalidInput("expected an integer or p/q, got '" + text + "'");
        }
    }

    auto er_options(const std::string & strategy, bool symmetry, const Config & cfg) -> ErOptions
    {
        ErOptions opts;
        if (strategy == "pruned")
            opts.strategy = Strategy::Pruned;
        else if (strategy == "naive")
            opts.strategy = Strategy::Naive;
        else
            throw InvalidInput("unknown strategy '" + strategy + "'");
        opts.symmetry = symmetry;
        opts.threads = thread_count(cfg);
        return opts;
    }

    auto cached(const std::string & key, int n_max, int pattern_n, const Config & cfg, const std::function<ErResult()> & compute)
        -> ErResult
    {
        auto path = ResultCache::resolve_path(cfg.cache);
        if (path.empty())
            return compute();
        ResultCache cache(path);
        auto hit = cache.lookup(key, n_max);
        if (! cache.corrupt_message().empty())
            std::cerr << "warning: " << cache.corrupt_message() << "; recomputing\n";
        if (hit)
            return *hit;
        auto r = compute();
        cache.store(r, pattern_n);
        return r;
    }

    auto report_wall(const std::chrono::steady_clock::time_point & start) -> void
    {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cerr << "wall time: " << secs << " s\n";
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Canonical Ramsey toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads (default $CANONRAM_THREADS or 1)");
    app.add_option("--relax", cfg.relax, "Threshold multiplier, e.g. 1/1000 or 1e-18")->capture_default_str();
    app.add_option("--cache", cfg.cache, "Result cache file (default $CANONRAM_CACHE)");

    std::string pattern;
    std::string coloring;
    std::string tree;

    auto * detect = app.add_subcommand("detect", "Find a canonical copy of a pattern");
    std::string kind = "any";
    detect->add_option("--pattern", pattern)->required();
    detect->add_option("--coloring", coloring)->required();
    detect->add_option("--kind", kind)->check(CLI::IsMember({"mono", "lex", "weaklex", "rainbow", "any"}))->capture_default_str();

    auto * er = app.add_subcommand("er", "Erdos-Rado number by exhaustive search");
    int n_max = 0;
    std::string strategy = "pruned";
    bool symmetry = false;
    er->add_option("--pattern", pattern)->required();
    er->add_option("--nmax", n_max)->required();
    er->add_option("--strategy", strategy)->check(CLI::IsMember({"pruned", "naive"}))->capture_default_str();
    er->add_flag("--symmetry", symmetry, "Pin vertex-0 colours to first-use order");

    auto * constrained = app.add_subcommand("constrained", "Constrained Ramsey number f(S, P_t) by exhaustive search");
    int t = 0;
    constrained->add_option("--tree", tree)->required();
    constrained->add_option("--t", t)->required();
    constrained->add_option("--nmax", n_max)->required();
    constrained->add_option("--strategy", strategy)->check(CLI::IsMember({"pruned", "naive"}))->capture_default_str();
    constrained->add_flag("--symmetry", symmetry);

    auto * construct = app.add_subcommand("construct", "Write a witness colouring");
    std::string family;
    int r = 0;
    int n = 0;
    std::int64_t palette = 0;
    std::string out_path;
    construct->add_option("--kind", family)->required()->check(CLI::IsMember({"hypercube", "random", "lex"}));
    construct->add_option("--r", r, "Hypercube dimension");
    construct->add_option("--n", n, "Vertex count for random and lex");
    construct->add_option("--palette", palette, "Palette size for random");
    construct->add_option("--out", out_path, "Output file (default stdout)");

    auto * verify = app.add_subcommand("verify", "Check a colouring for canonical copies of a pattern");
    bool structural = false;
    verify->add_option("--pattern", pattern)->required();
    verify->add_option("--coloring", coloring)->required();
    verify->add_flag("--structural", structural);

    auto * pipeline = app.add_subcommand("pipeline", "Run a constructive embedding engine");
    std::string engine;
    int tries = 1000;
    bool trace = false;
    pipeline->add_option("--engine", engine)->required()->check(CLI::IsMember({"bipartite", "nonbipartite"}));
    pipeline->add_option("--pattern", pattern)->required();
    pipeline->add_option("--coloring", coloring)->required();
    pipeline->add_option("--tries", tries)->capture_default_str();
    pipeline->add_flag("--trace", trace);

    auto * bounds = app.add_subcommand("bounds", "Evaluate a closed-form bound");
    std::string bound_name;
    std::optional<std::int64_t> bk, bt, bn, bdelta, bchi, bs;
    std::string bd;
    bounds->add_option("name", bound_name, "alpha, hypercube_exponent or a threshold name")->required();
    bounds->add_option("--k", bk);
    bounds->add_option("--t", bt);
    bounds->add_option("--n", bn);
    bounds->add_option("--d", bd, "Average degree, integer or p/q");
    bounds->add_option("--delta", bdelta);
    bounds->add_option("--chi", bchi);
    bounds->add_option("--s", bs);

    auto * run = app.add_subcommand("constrained-run", "Run the rainbow-path driver on a colouring");
    int depth = 1;
    run->add_option("--tree", tree)->required();
    run->add_option("--t", t)->required();
    run->add_option("--k", depth)->capture_default_str();
    run->add_option("--coloring", coloring)->required();
    run->add_flag("--trace", trace);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    } catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_input;
    }

    auto start = std::chrono::steady_clock::now();
    try {
        Relax relax = parse_relax(cfg.relax);

        if (*detect) {
            auto h = read_graph(pattern);
            auto c = read_coloring(coloring);
            auto copy = kind == "any" ? find_any_canonical(h, c) : find_copy(h, c, parse_kind(kind));
            emit(Json{{"kind", kind}, {"result", copy ? to_json(*copy) : Json("none")}});
            return copy ? exit_ok : exit_absent;
        }
        if (*er) {
            auto h = read_graph(pattern);
            auto opts = er_options(strategy, symmetry, cfg);
            auto res = cached(er_key(h, opts), n_max, h.n(), cfg, [&] { return er_number(h, n_max, opts); });
            emit(to_json(res));
            report_wall(start);
            return res.exact ? exit_ok : exit_absent;
        }
        if (*constrained) {
            auto s = read_graph(tree);
            auto opts = er_options(strategy, symmetry, cfg);
            auto res = cached(f_key(s, t, opts), n_max, s.n(), cfg, [&] { return f_number(s, t, n_max, opts); });
            emit(to_json(res));
            report_wall(start);
            return res.exact ? exit_ok : exit_absent;
        }
        if (*construct) {
            EdgeColoring c;
            if (family == "hypercube") {
                if (r < 1)
                    throw InvalidInput("--r must be at least 1");
                c = hypercube_coloring(r);
            }
            else if (family == "random") {
                if (n < 1 || palette < 1)
                    throw InvalidInput("--n and --palette must be positive");
                c = random_coloring(n, palette, cfg.seed);
            }
            else {
                if (n < 2)
                    throw InvalidInput("--n must be at least 2");
                c = lexicographic_coloring(n);
            }
            if (out_path.empty()) {
                write_coloring(std::cout, c);
            }
            else {
                std::ofstream out(out_path);
                if (! out)
                    throw InvalidInput("cannot write '" + out_path + "'");
                write_coloring(out, c);
            }
            return exit_ok;
        }
        if (*verify) {
            auto h = read_graph(pattern);
            auto c = read_coloring(coloring);
            auto rep = verify_witness(h, c, structural);
            emit(to_json(rep));
            bool clean = rep.no_mono && rep.no_lex && rep.no_weaklex && rep.no_rainbow;
            return clean ? exit_ok : exit_absent;
        }
        if (*pipeline) {
            auto h = read_graph(pattern);
            auto c = read_coloring(coloring);
            auto outcome = engine == "bipartite" ? bipartite_pipeline(h, c, relax, cfg.seed, tries)
                                                 : nonbipartite_pipeline(h, c, relax, cfg.seed);
            Json body = to_json(outcome, trace || ! outcome.copy);
            body["engine"] = engine;
            body["relax"] = relax_text(relax);
            body["seed"] = cfg.seed;
            emit(body);
            return outcome.copy ? exit_ok : exit_absent;
        }
        if (*bounds) {
            auto need = [](const std::optional<std::int64_t> & v, const char * flag) {
                if (! v)
                    throw InvalidInput(std::string("missing --") + flag);
                return *v;
            };
            if (bound_name == "alpha") {
                auto k = need(bk, "k");
                auto tt = need(bt, "t");
                emit(Json{{"name", "alpha"}, {"value", alpha(static_cast<int>(k), tt)}, {"inputs", Json{{"k", k}, {"t", tt}}}});
                return exit_ok;
            }
            if (bound_name == "hypercube_exponent") {
                auto [dn, dd] = parse_ratio(bd.empty() ? throw InvalidInput("missing --d") : bd);
                auto nn = need(bn, "n");
                auto dl = need(bdelta, "delta");
                emit(Json{{"name", "hypercube_exponent"},
                          {"value", hypercube_exponent(nn, dn, dd, dl)},
                          {"inputs", Json{{"n", nn}, {"d_num", dn}, {"d_den", dd}, {"delta", dl}}}});
                return exit_ok;
            }
            BoundParams params;
            if (bn)
                params["n"] = *bn;
            if (bt)
                params["t"] = *bt;
            if (bdelta)
                params["delta"] = *bdelta;
            if (bchi)
                params["chi"] = *bchi;
            if (bs)
                params["s"] = *bs;
            if (! bd.empty()) {
                auto [dn, dd] = parse_ratio(bd);
                params["d_num"] = dn;
                params["d_den"] = dd;
            }
            emit(to_json(threshold(bound_name, params)));
            return exit_ok;
        }
        if (*run) {
            auto s = read_graph(tree);
            auto c = read_coloring(coloring);
            auto outcome = constrained_driver(s, t, depth, c, cfg.seed, relax);
            Json body = to_json(outcome, trace);
            body["seed"] = cfg.seed;
            emit(body);
            report_wall(start);
            return outcome.kind == DriverKind::Failure ? exit_absent : exit_ok;
        }
    } catch (const VerificationFailed & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_absent;
    } catch (const Error & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
