#include "thicket/cli.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "thicket/errors.hpp"

namespace thicket {

namespace {

struct Loaded {
  SetSystem system;
  std::optional<Graph> graph;
  InputFormat format = InputFormat::incidence;
  std::size_t twins = 0;
};

Loaded load(const InputFile& input, InputFormat requested) {
  const InputFormat fmt = requested == InputFormat::automatic ? detect_format(input.text) : requested;
  if (fmt == InputFormat::edges) {
    Graph g = parse_edge_list_string(input.text);
    SetSystem s = neighborhood_system(g);
    const std::size_t twins = s.duplicates_dropped();
    return {std::move(s), std::move(g), fmt, twins};
  }
  SetSystem s = parse_incidence_string(input.text);
  const std::size_t dropped = s.duplicates_dropped();
  return {std::move(s), std::nullopt, fmt, dropped};
}

// Graph commands always read an edge list; "9 0" is ambiguous to detection.
Graph load_graph(const InputFile& input) {
  try {
    return parse_edge_list_string(input.text);
  } catch (const InputError& e) {
    throw InputError(input.path + ": " + e.what());
  }
}

void describe_input(Report& r, const std::string& command, const InputFile& input) {
  r.set("version", THICKET_VERSION);
  r.set("command", command);
  r.set("input.path", input.path);
  r.set("input.crc32", crc32_hex(input.text));
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct LadderResult {
  Ladder ladder;
  bool complete = true;
};

LadderResult search_ladder(const SetSystem& s, bool strict, std::uint64_t budget) {
  const std::size_t k_max = 2 * std::min(s.domain_size(), s.size()) + 1;
  try {
    return {max_ladder(s, k_max, strict, budget), true};
  } catch (const LadderBudgetExceeded& e) {
    return {e.best_so_far(), false};
  }
}

void put_ladder(Report& r, const std::string& prefix, const LadderResult& l) {
  r.set(prefix + ".status", l.complete ? "complete" : "budget-exceeded");
  r.set(prefix + ".length", std::to_string(l.ladder.length()));
  r.set(prefix + ".elements", join(l.ladder.elements));
  r.set(prefix + ".sets", join(l.ladder.sets));
  r.set(prefix + ".strict", yes_no(l.ladder.strict));
}

std::string type_tree_labels(const TypeTree& t) { return t.empty() ? "none" : serialize_labels(t.label); }

std::vector<std::size_t> all_vertices(const Graph& g) {
  std::vector<std::size_t> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

bool shatters(const SetSystem& s, const std::vector<std::size_t>& w) {
  if (w.size() > 20) return false;
  for (auto x : w)
    if (x >= s.domain_size()) return false;
  std::set<std::uint64_t> seen;
  for (const auto& f : s.family()) {
    std::uint64_t p = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (f.test(w[i])) p |= std::uint64_t{1} << i;
    seen.insert(p);
  }
  return seen.size() == (std::uint64_t{1} << w.size());
}

std::optional<Ladder> read_ladder(const Report& r, const std::string& prefix) {
  if (!r.has(prefix + ".elements")) return std::nullopt;
  Ladder l;
  l.elements = parse_indices(*r.get(prefix + ".elements"));
  l.sets = parse_indices(r.get(prefix + ".sets").value_or(""));
  l.strict = r.get(prefix + ".strict") == std::optional<std::string>("yes");
  return l;
}

std::size_t read_count(const Report& r, const std::string& key) {
  auto v = parse_indices(r.get(key).value_or(""));
  if (v.size() != 1) throw InputError("report key " + key + " is missing or malformed");
  return v[0];
}

void verify_analyze(const Report& r, const Loaded& in, std::vector<std::string>& failures) {
  const SetSystem& s = in.system;
  const auto dim_text = r.get("dim").value_or("");
  const int dim = dim_text.empty() ? -2 : std::stoi(dim_text);
  if (dim >= 0) {
    auto labels = parse_labels(r.get("dim.witness").value_or(""));
    for (const auto& [v, x] : labels)
      if (x >= s.domain_size()) {
        failures.push_back("dim.witness: label out of range");
        return;
      }
    const LabeledTree t = LabeledTree::from_labels(labels);
    if (!t.is_balanced() || t.depth() != static_cast<std::size_t>(dim) || !is_full(t, s))
      failures.push_back("dim.witness is not a full balanced tree of depth " + dim_text);
  }
  if (r.has("vc.witness")) {
    const auto w = parse_indices(*r.get("vc.witness"));
    const auto vc_text = r.get("vc_dim").value_or("-1");
    if (std::to_string(w.size()) != vc_text && !(s.size() == 0 && vc_text == "-1"))
      failures.push_back("vc.witness size differs from vc_dim");
    else if (s.size() > 0 && !shatters(s, w))
      failures.push_back("vc.witness is not shattered");
  }
  for (const std::string prefix : {"ladder", "strict_ladder"}) {
    auto l = read_ladder(r, prefix);
    if (!l) continue;
    bool ok = l->elements.size() == l->sets.size() && std::to_string(l->length()) == r.get(prefix + ".length");
    for (auto x : l->elements) ok = ok && x < s.domain_size();
    for (auto f : l->sets) ok = ok && f < s.size();
    if (!ok || !is_ladder(s, *l)) failures.push_back(prefix + " does not re-verify");
  }
}

void verify_typetree(const Report& r, const Graph& g, std::vector<std::string>& failures) {
  const auto text = r.get("typetree.labels").value_or("");
  TypeTree t;
  if (text != "none") t.label = parse_labels(text);
  for (const auto& [v, x] : t.label) {
    if (x >= g.size() || !t.element_of.emplace(x, v).second) {
      failures.push_back("typetree.labels is not a bijection onto the vertices");
      return;
    }
  }
  if (!verify_type_tree(g, t, all_vertices(g))) failures.push_back("typetree.labels does not re-verify");
  else if (std::to_string(t.empty() ? 0 : t.depth()) != r.get("typetree.depth"))
    failures.push_back("typetree.depth does not match the labels");
}

void verify_eh(const Report& r, const Graph& g, std::vector<std::string>& failures) {
  const auto vs = parse_indices(r.get("eh.vertices").value_or(""));
  for (auto v : vs)
    if (v >= g.size()) {
      failures.push_back("eh.vertices out of range");
      return;
    }
  if (std::set<std::size_t>(vs.begin(), vs.end()).size() != vs.size()) failures.push_back("eh.vertices repeats a vertex");
  const auto kind = r.get("eh.kind").value_or("");
  const bool ok = kind == "clique" ? g.is_clique(vs) : kind == "independent" ? g.is_independent(vs) : false;
  if (!ok) failures.push_back("eh.vertices is not a verified " + kind);
  if (vs.size() < read_count(r, "eh.depth_bound") || vs.size() < read_count(r, "eh.dimension_bound"))
    failures.push_back("eh.vertices is smaller than a reported bound");
}

std::string lower_bound_cell(const LowerBoundRow& row) {
  if (row.depth) return std::to_string(*row.depth);
  if (row.budget_exhausted) return "budget-exhausted";
  return "exceeds-cap";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw InputError("cannot write " + path);
}

} // namespace

InputFile read_input(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return {path, ss.str()};
}

Report cmd_analyze(const InputFile& input, const AnalyzeOptions& options) {
  const Loaded in = load(input, options.format);
  const SetSystem& s = in.system;

  // Sub-analyses are independent; each owns its memo tables.
  struct Dims {
    int dim, dual, vc;
    std::vector<std::size_t> vc_witness;
    std::optional<LabeledTree> witness;
  };
  auto dims = std::async(std::launch::async, [&s] {
    Dims d{thicket_dim(s), dual_dim(s), vc_dim(s), vc_witness(s), std::nullopt};
    if (d.dim >= 0) d.witness = full_tree(s, static_cast<std::size_t>(d.dim));
    return d;
  });
  auto table = std::async(std::launch::async, [&] { return sauer_shelah_report(s, options.nmax); });
  auto sig = std::async(std::launch::async, [&] {
    return s.size() == 0 ? std::vector<std::optional<std::size_t>>{} : sigma_table(s, options.sigma_max);
  });
  auto ladder = std::async(std::launch::async, [&] { return search_ladder(s, false, options.budget); });
  auto strict = std::async(std::launch::async, [&] { return search_ladder(s, true, options.budget); });

  Report r;
  describe_input(r, "analyze", input);
  r.set("input.format", format_name(in.format));
  r.set("input.domain_size", std::to_string(s.domain_size()));
  r.set("input.sets", std::to_string(s.size()));
  r.set(in.graph ? "input.twins_collapsed" : "input.duplicates_dropped", std::to_string(in.twins));
  r.set("options.nmax", std::to_string(options.nmax));
  r.set("options.sigma_max", std::to_string(options.sigma_max));
  r.set("options.budget", std::to_string(options.budget));

  const Dims d = dims.get();
  r.set("dim", std::to_string(d.dim));
  if (d.witness) r.set("dim.witness", serialize_labels(d.witness->internal_labels()));
  r.set("dual_dim", std::to_string(d.dual));
  r.set("vc_dim", std::to_string(d.vc));
  if (d.vc >= 0) r.set("vc.witness", join(d.vc_witness));
  r.set("density", std::to_string(finite_density(s)));

  const ShatterTable t = table.get();
  r.set("rho", join(t.rho));
  r.set("phi", join(t.phi_bounds));
  r.set("sauer_shelah", "certified");

  const auto sg = sig.get();
  if (sg.empty()) {
    r.set("sigma", "undefined");
  } else {
    std::string line;
    for (std::size_t n = 1; n < sg.size(); ++n) {
      if (!line.empty()) line += ' ';
      line += sg[n] ? std::to_string(*sg[n]) : "-";
    }
    r.set("sigma", line);
  }

  put_ladder(r, "ladder", ladder.get());
  put_ladder(r, "strict_ladder", strict.get());
  return r;
}

TypeTreeOutput cmd_typetree(const InputFile& input, const GraphOptions& options) {
  const Graph g = load_graph(input);
  const auto all = all_vertices(g);
  const TypeTree t = type_tree(g, all, options.pivot, options.seed);
  if (!verify_type_tree(g, t, all)) throw ConsistencyError("type tree failed verification");

  Report r;
  describe_input(r, "typetree", input);
  r.set("input.format", "edges");
  r.set("input.vertices", std::to_string(g.size()));
  r.set("options.pivot", pivot_name(options.pivot));
  r.set("options.seed", std::to_string(options.seed));
  r.set("typetree.depth", std::to_string(t.empty() ? 0 : t.depth()));
  r.set("typetree.terminals", std::to_string(t.terminals().size()));
  r.set("typetree.labels", type_tree_labels(t));
  if (!t.empty()) {
    // the split along one deepest path
    Vertex deepest;
    for (const auto& v : t.terminals())
      if (v.size() > deepest.size()) deepest = v;
    const PathSplit split = path_split(g, t, deepest);
    r.set("typetree.deepest", deepest.empty() ? "-" : deepest);
    r.set("typetree.split.clique", join(split.clique));
    r.set("typetree.split.independent", join(split.independent));
  }
  return {r, type_tree_dot(t)};
}

Report cmd_eh(const InputFile& input, const GraphOptions& options) {
  const Graph g = load_graph(input);
  const HomogeneousSet h = eh_extract(g, options.pivot, options.seed);
  Report r;
  describe_input(r, "eh", input);
  r.set("input.format", "edges");
  r.set("input.vertices", std::to_string(g.size()));
  r.set("options.pivot", pivot_name(options.pivot));
  r.set("options.seed", std::to_string(options.seed));
  r.set("eh.kind", h.kind == HomogeneousKind::clique ? "clique" : "independent");
  r.set("eh.size", std::to_string(h.vertices.size()));
  r.set("eh.vertices", join(h.vertices));
  r.set("eh.tree_depth", std::to_string(h.tree_depth));
  r.set("eh.neighborhood_dim", std::to_string(h.neighborhood_dim));
  r.set("eh.depth_bound", std::to_string(h.depth_bound));
  r.set("eh.dimension_bound", std::to_string(h.dimension_bound));
  return r;
}

Report cmd_lowerbound(const LowerBoundOptions& options) {
  if (options.nmin == 0 || options.nmin > options.nmax)
    throw InputError("need 1 <= nmin <= nmax");
  std::vector<std::size_t> ns;
  for (auto n = options.nmin; n <= options.nmax; ++n) ns.push_back(n);

  std::vector<std::future<std::vector<LowerBoundRow>>> runs;
  const AtomStructure kinds[] = {AtomStructure::equality, AtomStructure::order};
  for (auto kind : kinds) {
    const bool wanted = std::find(options.structures.begin(), options.structures.end(), kind) != options.structures.end();
    runs.push_back(std::async(std::launch::async, [&, kind, wanted] {
      return wanted ? lower_bound_experiment(kind, ns, options.depth_cap, options.budget) : std::vector<LowerBoundRow>{};
    }));
  }
  const auto eq = runs[0].get();
  const auto ord = runs[1].get();

  Report r;
  r.set("version", THICKET_VERSION);
  r.set("command", "lowerbound");
  r.set("target", "x < 2^(n-1) over [0, 2^n)");
  r.set("options.depth_cap", std::to_string(options.depth_cap));
  r.set("options.budget", std::to_string(options.budget));
  r.set("table.columns", "n depth_equality depth_order");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const std::string e = eq.empty() ? "-" : lower_bound_cell(eq[i]);
    const std::string o = ord.empty() ? "-" : lower_bound_cell(ord[i]);
    r.set("table.row." + std::to_string(ns[i]), std::to_string(ns[i]) + " " + e + " " + o);
  }
  return r;
}

std::vector<std::string> verify_report(const Report& report, const InputFile& input) {
  std::vector<std::string> failures;
  const auto crc = report.get("input.crc32");
  if (!crc) return failures;
  if (*crc != crc32_hex(input.text)) {
    failures.push_back("input.crc32 does not match " + input.path);
    return failures;
  }
  const auto command = report.get("command").value_or("");
  try {
    if (command == "analyze") {
      verify_analyze(report, load(input, parse_format_name(report.get("input.format").value_or("auto"))), failures);
    } else if (command == "typetree") {
      verify_typetree(report, load_graph(input), failures);
    } else if (command == "eh") {
      verify_eh(report, load_graph(input), failures);
    } else {
      failures.push_back("unknown command '" + command + "'");
    }
  } catch (const InputError& e) {
    failures.push_back(std::string("malformed witness: ") + e.what());
  }
  return failures;
}

Report load_report(const std::string& text, const InputFile& input) {
  Report r = Report::parse(text);
  const auto failures = verify_report(r, input);
  if (!failures.empty()) {
    std::string msg = "report does not re-verify:";
    for (const auto& f : failures) msg += "\n  " + f;
    throw ConsistencyError(msg);
  }
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thicket complexity toolkit"};
  app.set_version_flag("--version", THICKET_VERSION);
  app.require_subcommand(1);

  std::string input_path, out_path, dot_path, format = "auto", pivot = "lowest", structure = "both";
  AnalyzeOptions aopt;
  LowerBoundOptions lopt;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;

  auto* analyze = app.add_subcommand("analyze", "dimensions, shatter tables and ladders of a set system or graph");
  analyze->add_option("input", input_path, "incidence matrix or edge list")->required();
  analyze->add_option("--format", format, "incidence, edges or auto")->check(CLI::IsMember({"incidence", "edges", "auto"}));
  analyze->add_option("--nmax", aopt.nmax, "last depth of the shatter table");
  analyze->add_option("--sigma-max", aopt.sigma_max, "last size of the sigma table");
  analyze->add_option("--budget", budget, "ladder search node budget");
  analyze->add_option("--out", out_path, "report file (default: stdout)");

  auto* typetree = app.add_subcommand("typetree", "type tree of a graph");
  auto* eh = app.add_subcommand("eh", "homogeneous set of a graph");
  for (auto* sub : {typetree, eh}) {
    sub->add_option("input", input_path, "edge list")->required();
    sub->add_option("--pivot", pivot, "lowest, maxdeg or random")->check(CLI::IsMember({"lowest", "maxdeg", "random"}));
    sub->add_option("--seed", seed, "seed for the random pivot");
    sub->add_option("--out", out_path, "report file (default: stdout)");
  }
  typetree->add_option("--dot", dot_path, "DOT file (default: <out>.dot when --out is given)");

  auto* lowerbound = app.add_subcommand("lowerbound", "decision depth of x < 2^(n-1) from equality or order atoms");
  lowerbound->add_option("--structure", structure, "equality, order or both")
      ->check(CLI::IsMember({"equality", "order", "both"}));
  lowerbound->add_option("--nmin", lopt.nmin);
  lowerbound->add_option("--nmax", lopt.nmax);
  lowerbound->add_option("--cap", lopt.depth_cap, "largest depth searched");
  lowerbound->add_option("--budget", budget, "memo entry budget");
  lowerbound->add_option("--out", out_path, "report file (default: stdout)");

  std::string report_path;
  auto* verify = app.add_subcommand("verify", "re-check every witness of a report against its input");
  verify->add_option("report", report_path)->required();
  verify->add_option("input", input_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  auto emit = [&](const Report& r) {
    if (out_path.empty()) out << r.serialize();
    else write_file(out_path, r.serialize());
  };

  try {
    if (analyze->parsed()) {
      aopt.format = parse_format_name(format);
      if (budget) aopt.budget = budget;
      emit(cmd_analyze(read_input(input_path), aopt));
    } else if (typetree->parsed() || eh->parsed()) {
      const GraphOptions gopt{parse_pivot(pivot), seed};
      const InputFile in = read_input(input_path);
      if (eh->parsed()) {
        emit(cmd_eh(in, gopt));
      } else {
        auto res = cmd_typetree(in, gopt);
        if (dot_path.empty() && !out_path.empty()) dot_path = out_path + ".dot";
        res.report.set("dot", dot_path.empty() ? "none" : dot_path);
        if (!dot_path.empty()) write_file(dot_path, res.dot);
        emit(res.report);
      }
    } else if (lowerbound->parsed()) {
      if (structure == "both") lopt.structures = {AtomStructure::equality, AtomStructure::order};
      else lopt.structures = {parse_structure(structure)};
      if (budget) lopt.budget = budget;
      emit(cmd_lowerbound(lopt));
    } else if (verify->parsed()) {
      const InputFile report_file = read_input(report_path);
      const Report r = Report::parse(report_file.text);
      InputFile in;
      if (r.has("input.crc32")) {
        const std::string path = input_path.empty() ? r.get("input.path").value_or("") : input_path;
        in = read_input(path);
      }
      const auto failures = verify_report(r, in);
      for (const auto& f : failures) err << "verify: " << f << "\n";
      if (!failures.empty()) return 3;
      out << "verified " << report_path << "\n";
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

} // namespace thicket
