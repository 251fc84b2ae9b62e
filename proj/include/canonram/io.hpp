#pragma once

#include <canonram/coloring.hpp>
#include <canonram/graph.hpp>

#include <iosfwd>
#include <string>

namespace canonram
{
    // Graph text: "n m" then m lines "u v" with 0 <= u < v < n.
    auto parse_graph(std::istream & in) -> Graph;
    auto read_graph(const std::string & path) -> Graph;
    auto write_graph(std::ostream & out, const Graph & g) -> void;

    // Colouring text: "N" then one line "u v c" per pair, every pair once.
    auto parse_coloring(std::istream & in) -> EdgeColoring;
    auto read_coloring(const std::string & path) -> EdgeColoring;
    auto write_coloring(std::ostream & out, const EdgeColoring & c) -> void;
}
