#pragma once

#include <canonram/coloring.hpp>
#include <canonram/graph.hpp>

#include <optional>
#include <string>
#include <vector>

namespace canonram
{
    enum class Kind
    {
        Mono,
        Lex,
        WeakLex,
        Rainbow
    };

    auto kind_name(Kind k) -> std::string;
    auto parse_kind(const std::string & s) -> Kind;

    // embedding[v] is the host vertex of pattern vertex v. order lists pattern
    // vertices first to last. colors holds one colour for Mono, one forward
    // colour per pattern vertex for the lex kinds (0 for an empty forward
    // star), and one colour per pattern edge for Rainbow.
    struct CanonicalCopy
    {
        std::vector<int> embedding;
        Kind kind = Kind::Mono;
        std::optional<std::vector<int>> order;
        std::vector<Color> colors;
    };

    auto verify_copy(const Graph & h, const EdgeColoring & c, const CanonicalCopy & copy) -> bool;

    auto find_copy(const Graph & h, const EdgeColoring & c, Kind kind) -> std::optional<CanonicalCopy>;

    // Mono, then Lex, then Rainbow.
    auto find_any_canonical(const Graph & h, const EdgeColoring & c) -> std::optional<CanonicalCopy>;

    // Pattern vertices with at least one neighbour later in the order.
    auto lex_color_count(const Graph & h, const std::vector<int> & order) -> int;
}
