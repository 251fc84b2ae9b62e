#pragma once

#include <canonram/coloring.hpp>
#include <canonram/graph.hpp>

#include <optional>
#include <string>

namespace canonram
{
    enum class Strategy
    {
        Pruned,
        Naive
    };

    struct ErOptions
    {
        Strategy strategy = Strategy::Pruned;
        // Pin the colours at vertex 0 into nondecreasing first-use order.
        bool symmetry = false;
        int threads = 1;
    };

    struct ErResult
    {
        std::string key;
        int n_max = 0;
        bool exact = false;
        // Exact value, or the lower bound n_max + 1 when !exact.
        int value = 0;
        // Avoiding colouring on value - 1 vertices.
        std::optional<EdgeColoring> witness;
        double wall_time = 0.0;
    };

    constexpr int max_search_n = 8;

    // A colouring of K_n with no monochromatic, lexicographic or rainbow copy
    // of h, or nullopt if none exists.
    auto exists_avoiding_coloring(const Graph & h, int n, const ErOptions & opts = {}) -> std::optional<EdgeColoring>;

    // A colouring of K_n with neither a monochromatic tree nor a rainbow path
    // on t vertices.
    auto exists_tree_path_avoider(const Graph & tree, int t, int n, const ErOptions & opts = {}) -> std::optional<EdgeColoring>;

    auto er_number(const Graph & h, int n_max, const ErOptions & opts = {}) -> ErResult;
    auto f_number(const Graph & tree, int t, int n_max, const ErOptions & opts = {}) -> ErResult;

    auto er_key(const Graph & h, const ErOptions & opts) -> std::string;
    auto f_key(const Graph & tree, int t, const ErOptions & opts) -> std::string;
}
