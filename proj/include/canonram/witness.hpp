#pragma once

#include <canonram/coloring.hpp>
#include <canonram/graph.hpp>

#include <string>

namespace canonram
{
    enum class Method
    {
        Detector,
        Structural
    };

    auto method_name(Method m) -> std::string;

    struct WitnessReport
    {
        bool no_mono = false;
        bool no_lex = false;
        bool no_weaklex = false;
        bool no_rainbow = false;
        Method mono_method = Method::Detector;
        Method lex_method = Method::Detector;
        Method weaklex_method = Method::Detector;
        Method rainbow_method = Method::Detector;
    };

    // With structural = true, a field is certified without search when its
    // criterion applies: bipartite colour classes against chi(h) >= 3,
    // palette below ceil(nd / 2Delta) for lex, palette below e(h) for
    // rainbow. Weak-lex always runs the detector.
    auto verify_witness(const Graph & h, const EdgeColoring & c, bool structural) -> WitnessReport;

    auto color_classes_bipartite(const EdgeColoring & c) -> bool;
}
