#pragma once

#include <canonram/coloring.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace canonram
{
    // Partial orientation of the pairs of an n-vertex set.
    class Orientation
    {
    public:
        Orientation() = default;
        explicit Orientation(int n);

        auto n() const -> int { return _n; }

        // +1 if x -> y, -1 if y -> x, 0 if the pair is undirected.
        auto dir(int x, int y) const -> int { return _m[static_cast<std::size_t>(x) * _n + y]; }
        auto set(int x, int y, int d) -> void;

    private:
        int _n = 0;
        std::vector<std::int8_t> _m;
    };

    // Parts U_1..U_r with distinct part colours, a rogue colour set R and
    // the orientation of the cross-part pairs. Edges inside a part are ignored.
    struct Substructure
    {
        EdgeColoring host;
        std::vector<std::vector<int>> parts;
        std::vector<Color> part_colors;
        std::vector<Color> rogue_colors;
        Orientation orientation;
        // Part index per host vertex, -1 outside U.
        std::vector<int> part_of;

        auto in_u(int v) const -> bool { return part_of[v] >= 0; }
        auto conflict(int x, int y) const -> bool { return part_of[x] >= 0 && part_of[x] == part_of[y]; }
        auto cross(int x, int y) const -> bool { return part_of[x] >= 0 && part_of[y] >= 0 && part_of[x] != part_of[y]; }
        auto rogue(int x, int y) const -> bool { return cross(x, y) && orientation.dir(x, y) == 0; }
        auto directed(int x, int y) const -> bool { return cross(x, y) && orientation.dir(x, y) > 0; }
        auto united() const -> std::vector<int>;
        auto is_rogue_color(Color c) const -> bool;
    };

    // Orients each cross pair by the part colour it carries; other colours
    // stay undirected.
    auto make_substructure(const EdgeColoring & host, const std::vector<std::vector<int>> & parts,
                           const std::vector<Color> & part_colors, const std::vector<Color> & rogue_colors)
        -> Substructure;

    // Same structure on the kept vertices of U; emptied parts are dropped.
    auto restrict_substructure(const Substructure & sub, const std::vector<int> & keep) -> Substructure;

    struct Violation
    {
        std::string clause;
        std::string witness;
    };

    struct CheckReport
    {
        std::vector<Violation> violations;

        auto ok() const -> bool { return violations.empty(); }
        auto add(std::string clause, std::string witness) -> void
        {
            violations.push_back({std::move(clause), std::move(witness)});
        }
    };

    // Clauses "i" (sizes), "ii" (orientation against colours), "iii" (t
    // connectors outside U for every pair, same part allowed).
    auto verify_substructure(const Substructure & sub, int s, int t) -> CheckReport;

    enum class SearchMode
    {
        Exhaustive,
        Greedy
    };

    // Any returned substructure passes verify_substructure.
    auto find_substructure(const EdgeColoring & c, int s, int t, SearchMode mode) -> std::optional<Substructure>;

    // Rogue edges from v into `within` (sorted).
    auto rogue_degree(int v, const std::vector<int> & within, const Substructure & sub) -> int;
    auto max_rogue(const std::vector<int> & within, const Substructure & sub) -> int;

    // Union of the parts of the given vertices, sorted.
    auto conflict_set(const std::vector<int> & vertices, const Substructure & sub) -> std::vector<int>;

    struct RainbowCollection
    {
        std::vector<std::vector<int>> paths;

        auto length() const -> int;
        auto vertices() const -> std::vector<int>;
    };

    auto collection_conflicts(const RainbowCollection & coll, const Substructure & sub) -> std::vector<int>;

    // Non-conflict, forward direction after the first edge, and distinct
    // rogue first edges (mandatory for every path but the first).
    auto check_collection(const RainbowCollection & coll, const Substructure & sub) -> CheckReport;

    // Ordered pairs (earlier, later) with earlier -> later.
    auto forward_count(const std::vector<int> & order, const Orientation & o) -> std::int64_t;

    // Local search from a seeded shuffle; each move relocates one vertex to
    // its best position (earliest on ties) while that strictly helps.
    auto median_ordering(const std::vector<int> & vertices, const Orientation & o, std::uint64_t seed) -> std::vector<int>;

    // No single relocation increases forward_count.
    auto relocation_optimal(const std::vector<int> & order, const Orientation & o) -> bool;

    auto tournament_ham_path(const std::vector<int> & vertices, const Orientation & o) -> std::vector<int>;

    // Joins consecutive paths through connectors outside U.
    auto glue_collection(const RainbowCollection & coll, const Substructure & sub) -> std::vector<int>;

    auto is_rainbow_path(const std::vector<int> & path, const EdgeColoring & c) -> bool;
}
