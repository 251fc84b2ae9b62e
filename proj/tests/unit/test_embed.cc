#include "../support/oracles.hpp"

#include <canonram/detect.hpp>
#include <canonram/embed.hpp>
#include <canonram/errors.hpp>

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace canonram;

namespace
{
    const Relax tiny = parse_relax("1e-18");

    auto embeds(const Graph & tree, const Graph & host, const std::vector<int> & emb) -> bool
    {
        std::set<int> image(emb.begin(), emb.end());
        if (static_cast<int>(image.size()) != tree.n())
            return false;
        for (auto [u, v] : tree.edges())
            if (! host.adjacent(emb[u], emb[v]))
                return false;
        return true;
    }

    auto min_degree_host(int n, int d, std::mt19937_64 & rng) -> Graph
    {
        // Random graph plus a circulant of degree >= d to pin the minimum degree.
        std::set<Edge> edges;
        for (int v = 0; v < n; ++v)
            for (int k = 1; k <= (d + 1) / 2; ++k) {
                int w = (v + k) % n;
                edges.insert({std::min(v, w), std::max(v, w)});
            }
        std::bernoulli_distribution coin(0.2);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng))
                    edges.insert({u, v});
        return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
    }

    auto range(int lo, int hi) -> std::vector<int>
    {
        std::vector<int> v(hi - lo);
        std::iota(v.begin(), v.end(), lo);
        return v;
    }
}

TEST_CASE("relax parsing")
{
    CHECK(parse_relax("1") == 1);
    CHECK(parse_relax("1/1000") == Relax(1, 1000));
    CHECK(parse_relax("0.25") == Relax(1, 4));
    CHECK(parse_relax("1e-3") == Relax(1, 1000));
    CHECK(parse_relax("256") == 256);
    CHECK(relax_text(Relax(3, 4)) == "3/4");
    CHECK(relax_text(Relax(5)) == "5");
    CHECK_THROWS_AS(parse_relax("0"), InvalidInput);
    CHECK_THROWS_AS(parse_relax("-1"), InvalidInput);
    CHECK_THROWS_AS(parse_relax("abc"), InvalidInput);
}

TEST_CASE("tree embedding examples")
{
    CHECK(embed_tree_min_degree(path_graph(3), complete_graph(4)).has_value());
    CHECK_FALSE(embed_tree_min_degree(star_graph(3), cycle_graph(4)).has_value());
    CHECK_THROWS_AS(embed_tree_min_degree(cycle_graph(3), complete_graph(4)), NotATree);
}

TEST_CASE("every tree on at most five vertices embeds into hosts of minimum degree s - 1")
{
    std::mt19937_64 rng(17);
    for (int s = 1; s <= 5; ++s)
        for (const auto & tree : oracle::all_trees(s))
            for (int rep = 0; rep < 3; ++rep) {
                auto host = min_degree_host(s + 3 + rep, s - 1, rng);
                auto emb = embed_tree_min_degree(tree, host);
                REQUIRE(emb.has_value());
                CHECK(embeds(tree, host, *emb));
            }
}

TEST_CASE("rainbow sampling")
{
    auto h = complete_graph(3);
    std::vector<std::vector<int>> parts = {{0, 1}, {2, 3}, {4, 5}};
    auto ok = sample_rainbow_embedding(h, parts, distinct_coloring(6), 10, 1);
    REQUIRE(ok.embedding.has_value());
    CHECK(ok.tries_used == 1);
    CHECK(ok.rejections == 0);

    auto bad = sample_rainbow_embedding(h, parts, monochromatic_coloring(6), 25, 1);
    CHECK_FALSE(bad.embedding.has_value());
    CHECK(bad.tries_used == 25);
    CHECK(bad.rejections == 25);
    CHECK(bad.shared_endpoint == 25);

    CHECK_THROWS_AS(sample_rainbow_embedding(h, {{0}, {1}}, distinct_coloring(6), 1, 1), PartsMismatch);
    CHECK_THROWS_AS(sample_rainbow_embedding(h, {{0, 1}, {2}, {4, 5}}, distinct_coloring(6), 1, 1), PartsMismatch);
    CHECK_THROWS_AS(sample_rainbow_embedding(h, {{0, 1}, {1, 3}, {4, 5}}, distinct_coloring(6), 1, 1), PartsMismatch);
}

TEST_CASE("dependent random choice")
{
    auto x = drc_subset(complete_graph(6), 2, 1, 1, 3);
    REQUIRE(x.has_value());
    CHECK(x->size() == 5);

    Graph matching(6, {{0, 1}, {2, 3}, {4, 5}});
    auto m = drc_subset(matching, 1, 1, 1, 2);
    if (m)
        CHECK(m->size() == 1);

    CHECK_THROWS_AS(drc_subset(complete_graph(4), 0, 1, 1, 1), InvalidInput);
}

TEST_CASE("dependent random choice output passes the brute-force subset check")
{
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 60; ++rep) {
        int a = 6 + rep % 5;
        int b = 6 + rep % 4;
        std::vector<Edge> edges;
        std::bernoulli_distribution coin(0.75);
        for (int u = 0; u < a; ++u)
            for (int v = 0; v < b; ++v)
                if (coin(rng))
                    edges.push_back({u, a + v});
        Graph g(a + b, edges);
        int k = 1 + rep % 2;
        int m = 2;
        auto x = drc_subset(g, k, m, 2, rep);
        if (! x)
            continue;
        auto common = [&](const std::vector<int> & set) {
            int count = 0;
            for (int w = 0; w < g.n(); ++w) {
                bool all = true;
                for (int v : set)
                    all = all && g.adjacent(v, w);
                count += all;
            }
            return count;
        };
        for (std::size_t i = 0; i < x->size(); ++i) {
            if (k == 1)
                CHECK(common({(*x)[i]}) >= m);
            else
                for (std::size_t j = i + 1; j < x->size(); ++j)
                    CHECK(common({(*x)[i], (*x)[j]}) >= m);
        }
    }
}

TEST_CASE("one step")
{
    auto mono = monochromatic_coloring(20);
    auto all = range(0, 20);
    auto star = one_step(mono, all, {}, 3, 2, tiny, 1);
    CHECK(star.kind == StepKind::Star);
    CHECK(star.color == 1);
    REQUIRE(star.apex.has_value());
    for (int v : star.x)
        CHECK(mono.color(*star.apex, v) == star.color);

    auto drc = one_step(mono, all, {1}, 3, 2, tiny, 1);
    CHECK(drc.kind == StepKind::Drc);
    CHECK(drc.color == 1);
    CHECK_FALSE(drc.apex.has_value());

    CHECK_THROWS_AS(one_step(distinct_coloring(8), range(0, 8), {}, 3, 2, 1, 1), StepFailed);
}

TEST_CASE("star records carry an apex joined to the whole step set")
{
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 40; ++rep) {
        auto c = oracle::random_coloring(24, 2, rng);
        try {
            auto st = one_step(c, range(0, 24), {}, 3, 2, tiny, rep);
            if (st.kind == StepKind::Star) {
                REQUIRE(st.apex.has_value());
                for (int v : st.x)
                    CHECK(c.color(*st.apex, v) == st.color);
            }
            else {
                CHECK_FALSE(st.apex.has_value());
            }
        } catch (const StepFailed &) {
        }
    }
}

TEST_CASE("nonbipartite pipeline")
{
    auto k4 = complete_graph(4);
    auto out = nonbipartite_pipeline(k4, monochromatic_coloring(40), tiny, 7);
    REQUIRE(out.copy.has_value());
    CHECK(out.copy->kind == Kind::Mono);
    CHECK(verify_copy(k4, monochromatic_coloring(40), *out.copy));

    std::mt19937_64 rng(2);
    auto two = oracle::random_coloring(8, 2, rng);
    auto fail = nonbipartite_pipeline(cycle_graph(5), two, 1, 3);
    CHECK_FALSE(fail.copy.has_value());
    CHECK_FALSE(fail.reason.empty());
    CHECK_FALSE(fail.gates.empty());

    CHECK_THROWS_AS(nonbipartite_pipeline(cycle_graph(4), two, 1, 3), InvalidInput);
}

TEST_CASE("nonbipartite active sets are nested and copies verify")
{
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 30; ++rep) {
        auto c = oracle::random_coloring(30, 1 + rep % 3, rng);
        auto h = rep % 2 ? complete_graph(3) : cycle_graph(5);
        auto out = nonbipartite_pipeline(h, c, tiny, rep);
        if (out.copy)
            CHECK(verify_copy(h, c, *out.copy));
        else
            CHECK_FALSE(out.reason.empty());
        for (std::size_t i = 1; i < out.active_sets.size(); ++i) {
            std::set<int> prev(out.active_sets[i - 1].begin(), out.active_sets[i - 1].end());
            for (int v : out.active_sets[i])
                CHECK(prev.count(v));
        }
    }
}

TEST_CASE("bipartite pipeline")
{
    auto c4 = cycle_graph(4);
    auto mono = bipartite_pipeline(c4, monochromatic_coloring(16), 256, 1);
    REQUIRE(mono.copy.has_value());
    CHECK(mono.copy->kind == Kind::Mono);
    CHECK(verify_copy(c4, monochromatic_coloring(16), *mono.copy));

    auto rb = bipartite_pipeline(c4, distinct_coloring(16), 256, 1);
    REQUIRE(rb.copy.has_value());
    CHECK(rb.copy->kind == Kind::Rainbow);
    CHECK(rb.branch == "sampling");
    CHECK(verify_copy(c4, distinct_coloring(16), *rb.copy));
}
