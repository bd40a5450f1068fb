#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thicket/cli.hpp"
#include "thicket/complexity.hpp"
#include "thicket/decision.hpp"
#include "thicket/errors.hpp"
#include "thicket/generators.hpp"
#include "thicket/graph.hpp"
#include "thicket/io.hpp"
#include "thicket/ladder.hpp"
#include "thicket/report.hpp"

namespace py = pybind11;
using namespace thicket;

namespace {

std::vector<std::vector<std::size_t>> sets_as_lists(const SetSystem& s) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& f : s.family()) out.push_back(members(f));
  return out;
}

py::dict report_dict(const Report& r) {
  py::dict d;
  for (const auto& [k, v] : r.entries()) d[py::str(k)] = v;
  return d;
}

} // namespace

PYBIND11_MODULE(_thicket, m) {
  m.doc() = "Thicket dimension, ladders and type trees for finite set systems and graphs";
  m.attr("__version__") = THICKET_VERSION;

  // InputError derives from std::invalid_argument and surfaces as ValueError.
  static py::exception<BudgetExceeded> budget_exc(m, "BudgetExceeded", PyExc_RuntimeError);
  static py::exception<ConsistencyError> consistency_exc(m, "ConsistencyError", PyExc_AssertionError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_exc, e.what());
    } catch (const ConsistencyError& e) {
      py::set_error(consistency_exc, e.what());
    }
  });

  py::class_<SetSystem>(m, "SetSystem")
      .def(py::init([](std::size_t domain, const std::vector<std::vector<std::size_t>>& sets) {
             return build_system(domain, sets);
           }),
           py::arg("domain_size"), py::arg("sets"))
      .def_property_readonly("domain_size", &SetSystem::domain_size)
      .def_property_readonly("duplicates_dropped", &SetSystem::duplicates_dropped)
      .def_property_readonly("sets", &sets_as_lists)
      .def("__len__", &SetSystem::size)
      .def("__eq__", [](const SetSystem& a, const SetSystem& b) { return a == b; })
      .def("__repr__", [](const SetSystem& s) {
        return "<SetSystem domain=" + std::to_string(s.domain_size()) + " sets=" + std::to_string(s.size()) + ">";
      });

  py::class_<Ladder>(m, "Ladder")
      .def(py::init([](std::vector<std::size_t> elements, std::vector<std::size_t> sets, bool strict) {
             return Ladder{std::move(elements), std::move(sets), strict};
           }),
           py::arg("elements"), py::arg("sets"), py::arg("strict") = false)
      .def_readonly("elements", &Ladder::elements)
      .def_readonly("sets", &Ladder::sets)
      .def_readonly("strict", &Ladder::strict)
      .def("__len__", &Ladder::length);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&Graph::from_edges), py::arg("n"), py::arg("edges") = std::vector<std::pair<std::size_t, std::size_t>>{})
      .def_static("complete", &Graph::complete)
      .def_property_readonly("edges", &Graph::edges)
      .def("adjacent", &Graph::adjacent)
      .def("is_clique", &Graph::is_clique)
      .def("is_independent", &Graph::is_independent)
      .def("__len__", &Graph::size);

  m.def("parse_incidence", &parse_incidence_string, py::arg("text"));
  m.def("format_incidence", &format_incidence);
  m.def("parse_edge_list", &parse_edge_list_string, py::arg("text"));
  m.def("powerset", &powerset_family, py::arg("n"));
  m.def("thresholds", &threshold_family, py::arg("n"));
  m.def("half_graph", &half_graph, py::arg("k"));
  m.def("neighborhood_system", &neighborhood_system);
  m.def("dualize", &dualize);

  m.def("phi", &phi, py::arg("n"), py::arg("k"));
  m.def("thicket_dim", &thicket_dim);
  m.def("thicket_dim_bruteforce", &thicket_dim_bruteforce, py::arg("system"), py::arg("max_depth"),
        py::arg("budget") = kDefaultEnumerationBudget);
  m.def("rho", &rho, py::arg("system"), py::arg("n"));
  m.def("rho_table", &rho_table, py::arg("system"), py::arg("n_max"));
  m.def("rho_bruteforce", &rho_bruteforce, py::arg("system"), py::arg("n"), py::arg("budget") = kDefaultEnumerationBudget);
  m.def("sigma", &sigma, py::arg("system"), py::arg("n"));
  m.def("vc_dim", &vc_dim);
  m.def("dual_dim", &dual_dim);
  m.def("sauer_shelah", [](const SetSystem& s, std::size_t n_max) {
    const ShatterTable t = sauer_shelah_report(s, n_max);
    py::dict d;
    d["dim"] = t.dim;
    d["rho"] = t.rho;
    d["phi"] = t.phi_bounds;
    return d;
  }, py::arg("system"), py::arg("n_max"));

  m.def("is_ladder", &is_ladder);
  m.def("is_strict_ladder", &is_strict_ladder);
  m.def("max_ladder", &max_ladder, py::arg("system"), py::arg("k_max"), py::arg("strict") = false,
        py::arg("budget") = kDefaultLadderBudget);
  m.def("strictify", &strictify);
  m.def("ladder_tree_labels", [](const SetSystem& s, const Ladder& l) {
    const LadderTree t = ladder_to_tree(s, l);
    return py::make_tuple(t.tree.internal_labels(), t.leaf_witness);
  }, "Internal labels and leaf witnesses of the full tree built from a strict 2^k-ladder.");

  m.def("type_tree", [](const Graph& g, const std::string& pivot, std::uint64_t seed) {
    std::vector<std::size_t> all(g.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return type_tree(g, all, parse_pivot(pivot), seed).label;
  }, py::arg("graph"), py::arg("pivot") = "lowest", py::arg("seed") = 0);
  m.def("eh_extract", [](const Graph& g, const std::string& pivot, std::uint64_t seed) {
    const HomogeneousSet h = eh_extract(g, parse_pivot(pivot), seed);
    py::dict d;
    d["kind"] = h.kind == HomogeneousKind::clique ? "clique" : "independent";
    d["vertices"] = h.vertices;
    d["tree_depth"] = h.tree_depth;
    d["neighborhood_dim"] = h.neighborhood_dim;
    return d;
  }, py::arg("graph"), py::arg("pivot") = "lowest", py::arg("seed") = 0);
  m.def("contains_half_graph", [](const Graph& g, std::size_t k) {
    const auto w = contains_half_graph(g, k);
    return w ? py::object(py::make_tuple(w->u, w->v)) : py::object(py::none());
  });

  m.def("min_depth_lower_bound", [](const std::string& structure, const std::vector<std::size_t>& ns) {
    std::vector<std::optional<std::size_t>> out;
    for (const auto& row : lower_bound_experiment(parse_structure(structure), ns)) out.push_back(row.depth);
    return out;
  }, py::arg("structure"), py::arg("ns"));

  m.def("analyze", [](const std::string& text, std::size_t nmax) {
    AnalyzeOptions opt;
    opt.nmax = nmax;
    return report_dict(cmd_analyze(InputFile{"<string>", text}, opt));
  }, py::arg("text"), py::arg("nmax") = 6);
}
