#pragma once

#include <canonram/embed.hpp>
#include <canonram/special.hpp>
#include <canonram/substructure.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace canonram
{
    // Everything the extension procedures read. Positions refer to `order`.
    struct ExtendState
    {
        const Substructure * sub = nullptr;
        std::vector<int> order;
        std::vector<int> bad0;
        // Special sequence for bad0 on order[0, seq.interval_end).
        SpecialSequence seq;
        RainbowCollection coll;
        // Indices into coll.paths; their last vertices are the w_i.
        std::vector<int> endpoints;
        // basic_extend: I starts right after v_ell (1-based).
        int ell = 1;
        // main_induction: I starts right after v_{t / a^3}.
        std::int64_t a = 2;
        // I ends at order[x_pos].
        int x_pos = 0;
        int s = 1;
        int t = 2;
        Relax relax = 1;
    };

    struct ExtendResult
    {
        std::optional<RainbowCollection> collection;
        std::vector<GateRecord> gates;
    };

    // max(1, floor(t / a^3)).
    auto special_index(std::int64_t t, std::int64_t a) -> int;

    // Tournament extension over I = (v_ell, x]. Throws PreconditionFailed
    // naming the first failed hypothesis. Existing paths keep their indices.
    auto basic_extend(const ExtendState & state, std::uint64_t seed) -> ExtendResult;

    // Inverse-Ackermann recursion; k = 1 is basic_extend with ell = t / a^3.
    auto main_induction(int k, const ExtendState & state, std::uint64_t seed) -> ExtendResult;
}
