#pragma once

#include <canonram/substructure.hpp>

#include <vector>

namespace canonram
{
    // Greedy sequence v_1..v_f with rogue partners u_i of fresh colours r_i.
    // Index 0 carries v_1 only: u[0] = -1 and rogue[0] = 0.
    struct SpecialSequence
    {
        std::vector<int> v;
        std::vector<int> u;
        std::vector<Color> rogue;
        // The initial interval S is order[0, interval_end).
        int interval_end = 0;
        std::vector<int> bad;

        auto size() const -> int { return static_cast<int>(v.size()); }
    };

    // Partners are picked by lowest rogue colour, then lowest vertex id.
    auto special_sequence(const Substructure & sub, const std::vector<int> & order, int interval_end,
                          const std::vector<int> & bad) -> SpecialSequence;

    // The collection {(v_1), (u_2, v_2), ..., (u_f, v_f)}.
    auto special_collection(const SpecialSequence & seq) -> RainbowCollection;

    // Parts of v_1 and of u_j, v_j for j < upto (1-based), plus `bad`.
    auto special_blocked(const SpecialSequence & seq, int upto, const Substructure & sub, const std::vector<int> & bad)
        -> std::vector<int>;

    // Clauses "i".."iv" of the greedy construction plus "count": the rogue
    // edges inside (v_x, v_y] minus the blocked parts number at most
    // s * y * |(v_x, v_y]|.
    auto check_special_properties(const SpecialSequence & seq, const Substructure & sub, const std::vector<int> & order,
                                  const std::vector<int> & bad, int s) -> CheckReport;

    // Recomputes the sequence on the interval truncated at v_p ("truncation")
    // and under bad_bigger ("enlargement"). Throws HypothesisUnmet when
    // bad_bigger does not meet the three conditions relative to v_p.
    auto check_prefix_stability(const Substructure & sub, const std::vector<int> & order, int interval_end,
                                const std::vector<int> & bad, const std::vector<int> & bad_bigger, int p) -> CheckReport;
}
