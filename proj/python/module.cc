#include <canonram/bounds.hpp>
#include <canonram/coloring.hpp>
#include <canonram/detect.hpp>
#include <canonram/driver.hpp>
#include <canonram/embed.hpp>
#include <canonram/er_search.hpp>
#include <canonram/errors.hpp>
#include <canonram/graph.hpp>
#include <canonram/report.hpp>
#include <canonram/witness.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace canonram;

namespace
{
    // Documents cross the boundary as JSON so big integers stay exact.
    auto to_py(const Json & j) -> py::object
    {
        return py::module_::import("json").attr("loads")(j.dump());
    }

    auto options(const std::string & strategy, bool symmetry, int threads) -> ErOptions
    {
        ErOptions o;
        if (strategy == "pruned")
            o.strategy = Strategy::Pruned;
        else if (strategy == "naive")
            o.strategy = Strategy::Naive;
        else
            throw UnknownName("strategy '" + strategy + "'");
        o.symmetry = symmetry;
        o.threads = threads;
        return o;
    }

    auto from_matrix(const std::vector<std::vector<Color>> & rows) -> EdgeColoring
    {
        int n = static_cast<int>(rows.size());
        auto c = EdgeColoring::dense(n);
        for (int u = 0; u < n; ++u) {
            if (static_cast<int>(rows[u].size()) != n)
                throw InvalidInput("colour matrix must be square");
            for (int v = u + 1; v < n; ++v) {
                if (rows[u][v] != rows[v][u])
                    throw InvalidInput("colour matrix must be symmetric");
                c.set(u, v, rows[u][v]);
            }
        }
        return c;
    }
}

PYBIND11_MODULE(canonram, m)
{
    m.doc() = "Canonical Ramsey search, bounds and embedding engines";

    // Every library error derives from Error; the message names the class.
    py::register_exception<Error>(m, "Error");

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, const std::vector<Edge> &>(), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("m", &Graph::m)
        .def_property_readonly("edges", &Graph::edges)
        .def("max_degree", &Graph::max_degree)
        .def("__repr__", [](const Graph & g) { return "Graph(n=" + std::to_string(g.n()) + ", m=" + std::to_string(g.m()) + ")"; });

    m.def("complete_graph", &complete_graph);
    m.def("path_graph", &path_graph);
    m.def("cycle_graph", &cycle_graph);
    m.def("star_graph", &star_graph);
    m.def("complete_bipartite", &complete_bipartite);
    m.def("chromatic_number", &chromatic_number);
    m.def("vertex_cover_number", &vertex_cover_number);
    m.def("canonical_key", &canonical_key);

    py::class_<EdgeColoring>(m, "Coloring")
        .def(py::init(&from_matrix), py::arg("matrix"))
        .def_property_readonly("n", &EdgeColoring::n)
        .def("color", &EdgeColoring::color)
        .def("palette", &EdgeColoring::palette)
        .def("to_dict", [](const EdgeColoring & c) { return to_py(to_json(c)); });

    m.def("hypercube_coloring", &hypercube_coloring, py::arg("r"));
    m.def("random_coloring", &random_coloring, py::arg("n"), py::arg("palette"), py::arg("seed") = 0);
    m.def("lexicographic_coloring", &lexicographic_coloring, py::arg("n"));
    m.def("monochromatic_coloring", &monochromatic_coloring, py::arg("n"), py::arg("color") = 1);
    m.def("distinct_coloring", &distinct_coloring, py::arg("n"));

    m.def(
        "find_copy",
        [](const Graph & h, const EdgeColoring & c, const std::string & kind) -> py::object {
            auto copy = find_copy(h, c, parse_kind(kind));
            return copy ? to_py(to_json(*copy)) : py::none();
        },
        py::arg("pattern"), py::arg("coloring"), py::arg("kind"));

    m.def(
        "verify_witness",
        [](const Graph & h, const EdgeColoring & c, bool structural) { return to_py(to_json(verify_witness(h, c, structural))); },
        py::arg("pattern"), py::arg("coloring"), py::arg("structural") = false);

    m.def(
        "er_number",
        [](const Graph & h, int n_max, const std::string & strategy, bool symmetry, int threads) {
            return to_py(to_json(er_number(h, n_max, options(strategy, symmetry, threads))));
        },
        py::arg("pattern"), py::arg("n_max"), py::arg("strategy") = "pruned", py::arg("symmetry") = false, py::arg("threads") = 1);

    m.def(
        "f_number",
        [](const Graph & tree, int t, int n_max, const std::string & strategy, bool symmetry, int threads) {
            return to_py(to_json(f_number(tree, t, n_max, options(strategy, symmetry, threads))));
        },
        py::arg("tree"), py::arg("t"), py::arg("n_max"), py::arg("strategy") = "pruned", py::arg("symmetry") = false,
        py::arg("threads") = 1);

    m.def("alpha", &alpha, py::arg("k"), py::arg("t"));
    m.def(
        "threshold", [](const std::string & name, const BoundParams & params) { return to_py(to_json(threshold(name, params))); },
        py::arg("name"), py::arg("params"));

    m.def(
        "pipeline",
        [](const std::string & engine, const Graph & h, const EdgeColoring & c, const std::string & relax, std::uint64_t seed,
           int tries, bool trace) {
            auto r = parse_relax(relax);
            if (engine == "bipartite")
                return to_py(to_json(bipartite_pipeline(h, c, r, seed, tries), trace));
            if (engine == "nonbipartite")
                return to_py(to_json(nonbipartite_pipeline(h, c, r, seed), trace));
            throw UnknownName("engine '" + engine + "'");
        },
        py::arg("engine"), py::arg("pattern"), py::arg("coloring"), py::arg("relax") = "1", py::arg("seed") = 0x5EED,
        py::arg("tries") = 1000, py::arg("trace") = false);

    m.def(
        "constrained_run",
        [](const Graph & tree, int t, int k, const EdgeColoring & c, std::uint64_t seed, const std::string & relax, bool trace) {
            return to_py(to_json(constrained_driver(tree, t, k, c, seed, parse_relax(relax)), trace));
        },
        py::arg("tree"), py::arg("t"), py::arg("k"), py::arg("coloring"), py::arg("seed") = 0x5EED, py::arg("relax") = "1",
        py::arg("trace") = false);
}
