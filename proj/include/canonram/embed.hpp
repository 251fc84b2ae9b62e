#pragma once

#include <canonram/coloring.hpp>
#include <canonram/detect.hpp>
#include <canonram/graph.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace canonram
{
    // Multiplier applied to every engine threshold. 1 is the literal bound.
    using Relax = boost::multiprecision::cpp_rational;

    // Accepts "p/q", decimals ("0.25"), integers and "1e-18" style exponents.
    auto parse_relax(const std::string & text) -> Relax;
    auto relax_text(const Relax & r) -> std::string;

    // One named hypothesis check, recorded whether it passed or not.
    struct GateRecord
    {
        std::string stage;
        std::string gate;
        bool passed = false;
        std::string detail;
    };

    // Peels host vertices of degree < s - 1, then embeds the tree greedily
    // into what is left. embedding[tree vertex] = host vertex.
    auto embed_tree_min_degree(const Graph & tree, const Graph & host) -> std::optional<std::vector<int>>;

    struct SampleResult
    {
        std::optional<std::vector<int>> embedding;
        int tries_used = 0;
        int rejections = 0;
        // Rejected draws where two edges sharing a vertex repeat a colour,
        // and where two disjoint edges do. A draw can count in both.
        int shared_endpoint = 0;
        int disjoint_pair = 0;
    };

    // Draws one vertex per part (pattern vertex i goes to parts[i]) until the
    // copy is rainbow or tries run out.
    auto sample_rainbow_embedding(const Graph & h, const std::vector<std::vector<int>> & parts, const EdgeColoring & c,
                                  int tries, std::uint64_t seed) -> SampleResult;

    // Dependent random choice: common neighbourhood of t_pick random vertices,
    // minus one vertex of every k-subset with fewer than m common neighbours.
    auto drc_subset(const Graph & host, int k, int m, int t_pick, std::uint64_t seed) -> std::optional<std::vector<int>>;

    enum class StepKind
    {
        Drc,
        Star
    };

    auto step_kind_name(StepKind k) -> std::string;

    struct StepRecord
    {
        int index = 0;
        StepKind kind = StepKind::Drc;
        Color color = 0;
        int set_size = 0;
        std::optional<int> apex;
    };

    struct StepResult
    {
        std::vector<int> x;
        Color color = 0;
        StepKind kind = StepKind::Drc;
        std::optional<int> apex;
    };

    // Throws StepFailed naming the quantities that fell short.
    auto one_step(const EdgeColoring & c, const std::vector<int> & active, const std::set<Color> & banned, int n,
                  int delta, const Relax & relax, std::uint64_t seed) -> StepResult;

    struct EngineOutcome
    {
        std::optional<CanonicalCopy> copy;
        std::string branch;
        std::string reason;
        std::vector<StepRecord> trace;
        std::vector<GateRecord> gates;
        // Active sets A_0, A_1, ... for the nonbipartite engine.
        std::vector<std::vector<int>> active_sets;
    };

    auto nonbipartite_pipeline(const Graph & h, const EdgeColoring & c, const Relax & relax, std::uint64_t seed)
        -> EngineOutcome;

    auto bipartite_pipeline(const Graph & h, const EdgeColoring & c, const Relax & relax, std::uint64_t seed,
                            int tries = 1000) -> EngineOutcome;
}
