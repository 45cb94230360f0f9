#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qrg/adversary.hpp"
#include "qrg/report.hpp"

namespace py = pybind11;
using namespace qrg;

namespace {

GroupFunction to_function(const std::vector<Complex>& values) { return GroupFunction(values); }

GroupFunction to_disc_function(const std::vector<Complex>& values) {
    return GroupFunction(values, {.disc_valued = true, .two_disc_valued = true});
}

py::dict check_dict(const BoundCheck& c) {
    py::dict d;
    d["quantity"] = c.quantity;
    d["observed"] = c.observed;
    d["bound"] = c.bound;
    d["margin"] = c.margin;
    d["passed"] = c.passed();
    return d;
}

std::vector<Complex> values_of(const GroupFunction& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Character tables, quasi-randomness degrees and mixing-inequality checks for finite groups";
    m.attr("__version__") = std::string(kToolVersion);

    py::register_exception<GroupError>(m, "GroupError", PyExc_ValueError);
    py::register_exception<ConstraintError>(m, "ConstraintError", PyExc_ValueError);

    py::class_<FiniteGroup>(m, "FiniteGroup")
        .def_property_readonly("name", &FiniteGroup::name)
        .def_property_readonly("order", &FiniteGroup::order)
        .def_property_readonly("identity", &FiniteGroup::identity)
        .def("mul", &FiniteGroup::mul)
        .def("inv", &FiniteGroup::inv)
        .def("is_abelian", &FiniteGroup::is_abelian)
        .def("cayley_text", [](const FiniteGroup& g) { return to_cayley_text(g); })
        .def("__len__", &FiniteGroup::order)
        .def("__repr__", [](const FiniteGroup& g) {
            return "<FiniteGroup " + g.name() + " of order " + std::to_string(g.order()) + ">";
        });

    m.def("group", &group_from_name, py::arg("name"), "Build a group from a name such as 'a:5' or 'sl2:7'.");
    m.def("load_cayley_table", &load_cayley_table, py::arg("text"), py::arg("name") = "file");

    py::class_<GroupAnalysis>(m, "Analysis")
        .def_property_readonly("group", &GroupAnalysis::g, py::return_value_policy::reference_internal)
        .def_property_readonly("order", &GroupAnalysis::order)
        .def_property_readonly("D", &GroupAnalysis::D)
        .def_property_readonly("perfect", [](const GroupAnalysis& a) { return a.perfect; })
        .def_property_readonly("class_sizes", [](const GroupAnalysis& a) { return a.classes.class_sizes; })
        .def_property_readonly("class_of", [](const GroupAnalysis& a) { return a.classes.class_of; })
        .def_property_readonly("degrees", [](const GroupAnalysis& a) { return a.table.degrees; })
        .def_property_readonly("character_table",
                               [](const GroupAnalysis& a) {
                                   const std::size_t k = a.table.num_classes();
                                   std::vector<std::vector<Complex>> rows(k);
                                   for (std::size_t r = 0; r < k; ++r)
                                       for (std::size_t c = 0; c < k; ++c) rows[r].push_back(a.table.at(r, c));
                                   return rows;
                               })
        .def("to_json", [](const GroupAnalysis& a) { return analysis_json(a, 1e-8); });

    m.def(
        "analyze",
        [](const FiniteGroup& g, std::uint64_t seed) { return analyze(g, {.seed = seed}); },
        py::arg("group"), py::arg("seed") = 0);

    m.def(
        "cond_exp_conj",
        [](const GroupAnalysis& a, const std::vector<Complex>& f) { return values_of(cond_exp_conj(a, to_function(f))); },
        py::arg("analysis"), py::arg("f"));
    m.def(
        "lemma_gap",
        [](const GroupAnalysis& a, const std::vector<Complex>& u, const std::vector<Complex>& v) {
            return check_dict(lemma_gap(a, to_function(u), to_function(v)));
        },
        py::arg("analysis"), py::arg("u"), py::arg("v"));
    m.def(
        "corollary",
        [](const GroupAnalysis& a, const std::vector<Complex>& u, const std::vector<Complex>& v) {
            const auto c = corollary_lhs(a, to_function(u), to_function(v));
            py::dict d;
            d["published"] = check_dict(c.published);
            d["erratum"] = check_dict(c.erratum);
            return d;
        },
        py::arg("analysis"), py::arg("u"), py::arg("v"));
    m.def(
        "theorem_lhs",
        [](const GroupAnalysis& a, const std::vector<Complex>& f1, const std::vector<Complex>& f2,
           const std::vector<Complex>& f3) {
            return check_dict(theorem_lhs(a, to_disc_function(f1), to_disc_function(f2), to_disc_function(f3)));
        },
        py::arg("analysis"), py::arg("f1"), py::arg("f2"), py::arg("f3"));

    m.def(
        "verify",
        [](const GroupAnalysis& a, std::vector<std::string> checks, std::size_t trials, std::uint64_t seed,
           unsigned threads) {
            py::gil_scoped_release release;
            return report_json(run_verification(
                a, {.checks = std::move(checks), .trials = trials, .seed = seed, .threads = threads}));
        },
        py::arg("analysis"), py::arg("checks") = std::vector<std::string>{}, py::arg("trials") = 200,
        py::arg("seed") = 0, py::arg("threads") = 1, "Run bound checks; returns the JSON report text.");

    m.def(
        "search",
        [](const GroupAnalysis& a, const std::string& objective, std::size_t budget, std::size_t restarts,
           std::uint64_t seed, unsigned threads) {
            SearchConfig cfg;
            cfg.objective = parse_objective(objective);
            cfg.budget = budget;
            cfg.restarts = restarts;
            cfg.seed = seed;
            cfg.threads = threads;
            py::gil_scoped_release release;
            return search_json(a, cfg, maximize(a, cfg));
        },
        py::arg("analysis"), py::arg("objective") = "theorem", py::arg("budget") = 10000, py::arg("restarts") = 4,
        py::arg("seed") = 0, py::arg("threads") = 1, "Adversarial search; returns the JSON result text.");

    m.def(
        "witness_abelian_character",
        [](std::size_t n, long e1, long e2, long e3) {
            std::vector<std::vector<Complex>> out;
            for (const auto& f : witness_abelian_character(n, e1, e2, e3)) out.push_back(values_of(f));
            return out;
        },
        py::arg("n"), py::arg("e1"), py::arg("e2"), py::arg("e3"));
}
