#include <canonram/bounds.hpp>
#include <canonram/detect.hpp>
#include <canonram/witness.hpp>

namespace canonram
{
    auto method_name(Method m) -> std::string
    {
        return m == Method::Structural ? "structural" : "detector";
    }

    auto color_classes_bipartite(const EdgeColoring & c) -> bool
    {
        for (Color col : c.palette()) {
            auto g = c.color_class(col);
            if (bipartition(g).empty())
                return false;
        }
        return true;
    }

    auto verify_witness(const Graph & h, const EdgeColoring & c, bool structural) -> WitnessReport
    {
        WitnessReport r;
        int palette = c.palette_size();

        auto detect_absent = [&](Kind k) { return ! find_copy(h, c, k).has_value(); };

        if (structural && h.m() > 0 && h.n() <= 32 && chromatic_number(h) >= 3 && color_classes_bipartite(c)) {
            r.no_mono = true;
            r.mono_method = Method::Structural;
        }
        else
            r.no_mono = detect_absent(Kind::Mono);

        bool lex_done = false;
        if (structural && h.m() > 0) {
            auto s = stats(h);
            auto bound = hypercube_exponent(s.n, s.avg_degree.numerator(), s.avg_degree.denominator(), s.max_degree) + 1;
            if (palette < bound) {
                r.no_lex = true;
                r.lex_method = Method::Structural;
                lex_done = true;
            }
        }
        if (! lex_done)
            r.no_lex = detect_absent(Kind::Lex);

        r.no_weaklex = detect_absent(Kind::WeakLex);

        if (structural && palette < h.m()) {
            r.no_rainbow = true;
            r.rainbow_method = Method::Structural;
        }
        else
            r.no_rainbow = detect_absent(Kind::Rainbow);
        return r;
    }
}
