#pragma once

#include <canonram/coloring.hpp>
#include <canonram/embed.hpp>
#include <canonram/graph.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace canonram
{
    enum class DriverKind
    {
        MonoTree,
        RainbowPath,
        Failure
    };

    auto driver_kind_name(DriverKind k) -> std::string;

    struct DriverOutcome
    {
        DriverKind kind = DriverKind::Failure;
        // MonoTree: host vertex per tree vertex. RainbowPath: the path.
        std::vector<int> vertices;
        // Colour of the monochromatic tree, 0 otherwise.
        Color color = 0;
        // Stage that produced the outcome, or the last one reached.
        std::string stage;
        std::vector<GateRecord> gates;
    };

    // Monochromatic copy of the tree or a rainbow path on t vertices; every
    // returned object is re-verified against the colouring.
    auto constrained_driver(const Graph & tree, int t, int k, const EdgeColoring & c, std::uint64_t seed,
                            const Relax & relax = 1) -> DriverOutcome;

    // Plain backtracking for a rainbow path on t vertices.
    auto find_rainbow_path(const EdgeColoring & c, int t, std::int64_t budget) -> std::optional<std::vector<int>>;
}
