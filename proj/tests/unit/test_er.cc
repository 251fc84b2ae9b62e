#include "../support/oracles.hpp"

#include <canonram/cache.hpp>
#include <canonram/detect.hpp>
#include <canonram/er_search.hpp>
#include <canonram/errors.hpp>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

using namespace canonram;

namespace
{
    auto temp_file(const std::string & name) -> std::string
    {
        auto p = std::filesystem::temp_directory_path() / ("canonram_test_" + name + "_" + std::to_string(::getpid()));
        std::filesystem::remove(p);
        return p.string();
    }

    auto opts(Strategy s, int threads = 1) -> ErOptions
    {
        ErOptions o;
        o.strategy = s;
        o.threads = threads;
        return o;
    }
}

TEST_CASE("avoiding colourings for triangles and short paths")
{
    CHECK(exists_avoiding_coloring(complete_graph(3), 2).has_value());
    CHECK_FALSE(exists_avoiding_coloring(complete_graph(3), 3).has_value());
    CHECK_FALSE(exists_avoiding_coloring(path_graph(3), 3).has_value());
    CHECK_THROWS_AS(exists_avoiding_coloring(complete_graph(3), 9), InstanceTooLarge);
}

TEST_CASE("exact Erdos-Rado values with both strategies")
{
    for (auto s : {Strategy::Pruned, Strategy::Naive}) {
        CHECK(er_number(complete_graph(2), 5, opts(s)).value == 2);
        CHECK(er_number(complete_graph(3), 5, opts(s)).value == 3);
        CHECK(er_number(path_graph(3), 5, opts(s)).value == 3);
    }
    auto r = er_number(complete_graph(3), 5);
    CHECK(r.exact);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->n() == 2);
    CHECK_FALSE(find_any_canonical(complete_graph(3), *r.witness).has_value());
    CHECK_THROWS_AS(er_number(complete_graph(3), 9), InstanceTooLarge);
}

TEST_CASE("lower bound status when the search range is too small")
{
    auto r = er_number(complete_graph(4), 3);
    CHECK_FALSE(r.exact);
    CHECK(r.value == 4);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->n() == 3);
}

TEST_CASE("constrained values")
{
    CHECK(f_number(path_graph(2), 5, 6).value == 2);
    CHECK(f_number(path_graph(3), 2, 6).value == 2);
    CHECK(f_number(path_graph(3), 3, 6).value == 3);
    CHECK_THROWS_AS(f_number(cycle_graph(3), 3, 6), NotATree);
    for (auto s : {Strategy::Pruned, Strategy::Naive})
        CHECK(f_number(path_graph(3), 3, 5, opts(s)).value == 3);
}

TEST_CASE("strategies agree on avoidance for small patterns")
{
    std::vector<Graph> patterns = {path_graph(3), star_graph(3), path_graph(4), cycle_graph(4), complete_graph(3)};
    for (const auto & h : patterns)
        for (int n = 2; n <= 5; ++n)
            CHECK(exists_avoiding_coloring(h, n, opts(Strategy::Pruned)).has_value() ==
                  exists_avoiding_coloring(h, n, opts(Strategy::Naive)).has_value());
}

TEST_CASE("result is independent of thread count")
{
    auto one = er_number(star_graph(3), 6, opts(Strategy::Pruned, 1));
    for (int th : {2, 4, 8}) {
        auto many = er_number(star_graph(3), 6, opts(Strategy::Pruned, th));
        CHECK(many.value == one.value);
        CHECK(many.exact == one.exact);
        CHECK(many.witness == one.witness);
    }
}

TEST_CASE("exact values are at least the pattern size and certified at N = value")
{
    std::mt19937_64 rng(8);
    for (const auto & h : {path_graph(3), complete_graph(3), star_graph(3)}) {
        auto r = er_number(h, 6);
        REQUIRE(r.exact);
        CHECK(r.value >= h.n());
        for (int rep = 0; rep < 100; ++rep)
            CHECK(find_any_canonical(h, oracle::random_coloring(r.value, 1 + rep % 6, rng)).has_value());
    }
}

TEST_CASE("subgraph monotonicity on exact values")
{
    auto p3 = er_number(path_graph(3), 6).value;
    auto k3 = er_number(complete_graph(3), 6).value;
    auto s3 = er_number(star_graph(3), 6).value;
    auto p4 = er_number(path_graph(4), 6).value;
    CHECK(p3 <= k3);
    CHECK(p3 <= s3);
    CHECK(p3 <= p4);
}

TEST_CASE("cache round trip, misses and relabelling")
{
    auto path = temp_file("cache");
    {
        ResultCache cache(path);
        auto r = er_number(complete_graph(3), 5);
        cache.store(r, 3);
        auto hit = cache.lookup(r.key, 5);
        REQUIRE(hit.has_value());
        CHECK(hit->value == 3);
        CHECK(hit->exact);
        CHECK_FALSE(cache.lookup("er:unknown", 5).has_value());
    }
    {
        ResultCache again(path);
        CHECK(again.lookup(er_key(complete_graph(3), {}), 6).has_value());
    }
    auto c4 = cycle_graph(4);
    for (const auto & p : oracle::all_permutations(4))
        CHECK(er_key(c4.relabelled(p), {}) == er_key(c4, {}));
    std::filesystem::remove(path);
}

TEST_CASE("corrupt cache is reported and treated as empty")
{
    auto path = temp_file("corrupt");
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    ResultCache cache(path);
    CHECK_FALSE(cache.lookup("er:g3:e", 5).has_value());
    CHECK(cache.corrupt_message().find("CacheCorrupt") != std::string::npos);
    std::filesystem::remove(path);
}
