#include <canonram/errors.hpp>
#include <canonram/report.hpp>

namespace canonram
{
    auto to_json(const EdgeColoring & c) -> Json
    {
        Json pairs = Json::array();
        for (int u = 0; u < c.n(); ++u)
            for (int v = u + 1; v < c.n(); ++v)
                pairs.push_back(Json::array({u, v, c.color(u, v)}));
        return Json{{"n", c.n()}, {"pairs", pairs}};
    }

    auto coloring_from_json(const Json & j) -> EdgeColoring
    {
        int n = j.at("n").get<int>();
        if (n < 0)
            throw InvalidInput("negative vertex count in colouring JSON");
        auto c = EdgeColoring::dense(n);
        for (const auto & p : j.at("pairs"))
            c.set(p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<Color>());
        if (! c.complete())
            throw InvalidInput("colouring JSON leaves a pair uncoloured");
        return c;
    }

    auto to_json(const CanonicalCopy & copy) -> Json
    {
        Json j;
        j["kind"] = kind_name(copy.kind);
        j["embedding"] = copy.embedding;
        if (copy.order)
            j["order"] = *copy.order;
        j["colors"] = copy.colors;
        return j;
    }

    auto to_json(const ErResult & r) -> Json
    {
        Json j;
        j["key"] = r.key;
        j["n_max"] = r.n_max;
        if (r.exact)
            j["value"] = r.value;
        else
            j["at_least"] = r.value;
        j["status"] = r.exact ? "exact" : "lower_bound";
        j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
        return j;
    }

    auto to_json(const BoundReport & r) -> Json
    {
        Json j;
        j["name"] = r.name;
        j["value"] = r.value.str();
        j["factored"] = r.factored;
        j["inputs"] = Json::object();
        for (const auto & [k, v] : r.inputs)
            j["inputs"][k] = v;
        return j;
    }

    auto to_json(const WitnessReport & r) -> Json
    {
        Json j;
        j["no_mono"] = r.no_mono;
        j["no_lex"] = r.no_lex;
        j["no_weaklex"] = r.no_weaklex;
        j["no_rainbow"] = r.no_rainbow;
        j["method"] = Json{{"no_mono", method_name(r.mono_method)},
                           {"no_lex", method_name(r.lex_method)},
                           {"no_weaklex", method_name(r.weaklex_method)},
                           {"no_rainbow", method_name(r.rainbow_method)}};
        return j;
    }

    auto to_json(const GateRecord & g) -> Json
    {
        return Json{{"stage", g.stage}, {"gate", g.gate}, {"passed", g.passed}, {"detail", g.detail}};
    }

    auto to_json(const StepRecord & s) -> Json
    {
        Json j{{"index", s.index}, {"kind", step_kind_name(s.kind)}, {"color", s.color}, {"set_size", s.set_size}};
        j["apex"] = s.apex ? Json(*s.apex) : Json(nullptr);
        return j;
    }

    auto to_json(const EngineOutcome & o, bool trace) -> Json
    {
        Json j;
        j["outcome"] = o.copy ? "copy" : "failure";
        j["branch"] = o.branch;
        if (o.copy)
            j["copy"] = to_json(*o.copy);
        else
            j["reason"] = o.reason;
        if (trace) {
            j["trace"] = Json::array();
            for (const auto & s : o.trace)
                j["trace"].push_back(to_json(s));
            j["gates"] = Json::array();
            for (const auto & g : o.gates)
                j["gates"].push_back(to_json(g));
        }
        return j;
    }

    auto to_json(const DriverOutcome & o, bool trace) -> Json
    {
        Json j;
        j["outcome"] = driver_kind_name(o.kind);
        j["stage"] = o.stage;
        if (o.kind == DriverKind::MonoTree) {
            j["embedding"] = o.vertices;
            j["color"] = o.color;
        }
        else if (o.kind == DriverKind::RainbowPath) {
            j["path"] = o.vertices;
        }
        // Failures always carry the gate trace.
        if (trace || o.kind == DriverKind::Failure) {
            j["gates"] = Json::array();
            for (const auto & g : o.gates)
                j["gates"].push_back(to_json(g));
        }
        return j;
    }

    auto to_json(const RainbowCollection & coll) -> Json
    {
        return Json{{"paths", coll.paths}, {"length", coll.length()}};
    }

    auto to_json(const CheckReport & r) -> Json
    {
        Json v = Json::array();
        for (const auto & x : r.violations)
            v.push_back(Json{{"clause", x.clause}, {"witness", x.witness}});
        return Json{{"ok", r.ok()}, {"violations", v}};
    }
}
