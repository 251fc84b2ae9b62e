#pragma once

#include <canonram/bounds.hpp>
#include <canonram/coloring.hpp>
#include <canonram/detect.hpp>
#include <canonram/driver.hpp>
#include <canonram/embed.hpp>
#include <canonram/er_search.hpp>
#include <canonram/substructure.hpp>
#include <canonram/witness.hpp>

#include <nlohmann/json.hpp>

namespace canonram
{
    using Json = nlohmann::ordered_json;

    constexpr const char * json_schema = "canonram/1";

    auto to_json(const EdgeColoring & c) -> Json;
    auto coloring_from_json(const Json & j) -> EdgeColoring;

    auto to_json(const CanonicalCopy & copy) -> Json;
    auto to_json(const ErResult & r) -> Json;
    auto to_json(const BoundReport & r) -> Json;
    auto to_json(const WitnessReport & r) -> Json;
    auto to_json(const GateRecord & g) -> Json;
    auto to_json(const StepRecord & s) -> Json;
    // With trace = false the step and gate lists are left out.
    auto to_json(const EngineOutcome & o, bool trace = true) -> Json;
    auto to_json(const DriverOutcome & o, bool trace = false) -> Json;
    auto to_json(const RainbowCollection & coll) -> Json;
    auto to_json(const CheckReport & r) -> Json;
}
