#include "thicket/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "thicket/complexity.hpp"
#include "thicket/errors.hpp"

namespace thicket {

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= size() || v >= size())
    throw InputError("edge " + std::to_string(u) + "-" + std::to_string(v) + " out of range for " +
                     std::to_string(size()) + " vertices");
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  adj_[u].set(v);
  adj_[v].set(u);
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < size(); ++u)
    for (auto v = adj_[u].find_next(u); v != Bits::npos; v = adj_[u].find_next(v)) out.emplace_back(u, v);
  return out;
}

bool Graph::is_clique(const std::vector<std::size_t>& vs) const {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i] == vs[j] || !adjacent(vs[i], vs[j])) return false;
  return true;
}

bool Graph::is_independent(const std::vector<std::size_t>& vs) const {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i] == vs[j] || adjacent(vs[i], vs[j])) return false;
  return true;
}

Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto data_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out = line;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) -> Graph {
    throw InputError("line " + std::to_string(lineno) + ": " + what);
  };

  std::string header;
  if (!data_line(header)) throw InputError("empty input: missing `n m` header");
  std::istringstream hs(header);
  long long n = -1, m = -1;
  std::string extra;
  if (!(hs >> n >> m) || n < 0 || m < 0 || (hs >> extra)) return fail("expected header `n m`");

  Graph g(static_cast<std::size_t>(n));
  for (long long e = 0; e < m; ++e) {
    std::string row;
    if (!data_line(row))
      throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(m) + " edges, found " +
                       std::to_string(e));
    std::istringstream rs(row);
    long long u = -1, v = -1;
    if (!(rs >> u >> v) || (rs >> extra)) return fail("expected `u v`");
    if (u < 0 || v < 0 || u >= n || v >= n) return fail("vertex out of range");
    if (u == v) return fail("self-loop at vertex " + std::to_string(u));
    g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  std::string rest;
  if (data_line(rest)) return fail("trailing data after " + std::to_string(m) + " edges");
  return g;
}

Graph parse_edge_list_string(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  auto es = g.edges();
  out << g.size() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) out << u << ' ' << v << '\n';
  return out.str();
}

Graph ladder_without_half_graph() { return Graph::from_edges(5, {{0, 1}, {0, 2}, {2, 3}}); }

NeighborhoodSystem neighborhoods(const Graph& g) {
  std::vector<Bits> rows;
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < g.size(); ++v) {
    rows.push_back(g.neighbors(v));
    labels.push_back("N(" + std::to_string(v) + ")");
  }
  NeighborhoodSystem ns{SetSystem(g.size(), rows, labels), {}, {}};
  ns.vertices_of_set.resize(ns.system.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto idx = *ns.system.index_of(rows[v]);
    ns.set_of_vertex.push_back(idx);
    ns.vertices_of_set[idx].push_back(v);
  }
  return ns;
}

SetSystem neighborhood_system(const Graph& g) { return neighborhoods(g).system; }

Graph half_graph(std::size_t k) {
  if (k == 0) throw InputError("half_graph needs k >= 1");
  Graph g(2 * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) g.add_edge(i, k + j);
  return g;
}

bool verify_half_graph(const Graph& g, const HalfGraphWitness& w, HalfGraphMode mode) {
  const std::size_t k = w.u.size();
  if (w.v.size() != k) return false;
  std::vector<std::size_t> all = w.u;
  all.insert(all.end(), w.v.begin(), w.v.end());
  for (auto x : all)
    if (x >= g.size()) return false;
  auto sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const bool e = g.adjacent(w.u[i], w.v[j]);
      if (i < j && !e) return false;
      if (i >= j && e && mode != HalfGraphMode::subgraph) return false;
      if (mode == HalfGraphMode::induced && i != j &&
          (g.adjacent(w.u[i], w.u[j]) || g.adjacent(w.v[i], w.v[j])))
        return false;
    }
  return true;
}

namespace {

class HalfGraphSearch {
public:
  HalfGraphSearch(const Graph& g, std::size_t k, HalfGraphMode mode, std::uint64_t budget)
      : g_(g), k_(k), mode_(mode), budget_(budget) {}

  std::optional<HalfGraphWitness> run() {
    if (2 * k_ > g_.size()) return std::nullopt;
    Bits used(g_.size());
    if (extend(used)) return w_;
    return std::nullopt;
  }

private:
  bool extend(Bits& used) {
    if (++nodes_ > budget_) throw BudgetExceeded("half-graph search exceeded " + std::to_string(budget_) + " nodes");
    const std::size_t t = w_.u.size();
    if (t == k_) return true;
    const bool exact = mode_ != HalfGraphMode::subgraph;

    // v_t must be adjacent to every earlier u; u_t must avoid every earlier v.
    Bits v_cand = ~used;
    for (auto u : w_.u) v_cand &= g_.neighbors(u);
    Bits u_cand = ~used;
    if (exact)
      for (auto v : w_.v) u_cand -= g_.neighbors(v);
    if (mode_ == HalfGraphMode::induced) {
      for (auto u : w_.u) u_cand -= g_.neighbors(u);
      for (auto v : w_.v) v_cand -= g_.neighbors(v);
    }
    for (auto u = u_cand.find_first(); u != Bits::npos; u = u_cand.find_next(u)) {
      used.set(u);
      w_.u.push_back(u);
      Bits vs = v_cand;
      vs.reset(u);
      if (exact) vs -= g_.neighbors(u);
      for (auto v = vs.find_first(); v != Bits::npos; v = vs.find_next(v)) {
        used.set(v);
        w_.v.push_back(v);
        if (extend(used)) return true;
        w_.v.pop_back();
        used.reset(v);
      }
      w_.u.pop_back();
      used.reset(u);
    }
    return false;
  }

  const Graph& g_;
  std::size_t k_;
  HalfGraphMode mode_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  HalfGraphWitness w_;
};

} // namespace

std::optional<HalfGraphWitness> contains_half_graph(const Graph& g, std::size_t k, HalfGraphMode mode,
                                                    std::uint64_t budget) {
  auto w = HalfGraphSearch(g, k, mode, budget).run();
  if (w && !verify_half_graph(g, *w, mode)) throw ConsistencyError("half-graph search returned a bad witness");
  return w;
}

std::size_t distinct_ladder_length(std::size_t k) {
  return k * (k + 1);
}

bool is_strict_vertex_ladder(const Graph& g, const VertexLadder& l) {
  if (l.u.size() != l.v.size()) return false;
  for (std::size_t i = 0; i < l.u.size(); ++i)
    for (std::size_t j = 0; j < l.v.size(); ++j)
      if (g.adjacent(l.u[i], l.v[j]) != (i < j)) return false;
  return true;
}

namespace {

// Rung i takes b_i from position q_i and then a_i from position p_i >= q_i,
// with q_{i+1} > p_i. Then a_i ∈ Γ(b_j) ⟺ p_i < q_j ⟺ i < j. A greedy pass
// can get stuck when b_i lands on the only usable element, so backtrack.
bool extend_rungs(const NeighborhoodSystem& ns, const Ladder& strict, std::size_t k, std::size_t pos, Bits& chosen,
                  VertexLadder& out) {
  if (out.u.size() == k) return true;
  const std::size_t len = strict.length();
  for (std::size_t q = pos; q < len; ++q)
    for (auto b : ns.vertices_of_set[strict.sets[q]]) {
      if (chosen.test(b)) continue;
      for (std::size_t p = q; p < len; ++p) {
        const std::size_t a = strict.elements[p];
        if (chosen.test(a) || a == b) continue;
        chosen.set(a);
        chosen.set(b);
        out.u.push_back(a);
        out.v.push_back(b);
        if (extend_rungs(ns, strict, k, p + 1, chosen, out)) return true;
        out.u.pop_back();
        out.v.pop_back();
        chosen.reset(a);
        chosen.reset(b);
      }
    }
  return false;
}

} // namespace

std::optional<VertexLadder> extract_distinct(const NeighborhoodSystem& ns, const Ladder& strict, std::size_t k) {
  if (!is_strict_ladder(ns.system, strict)) throw InputError("extract_distinct: input is not a strict ladder");
  VertexLadder out;
  Bits chosen(ns.system.domain_size());
  if (!extend_rungs(ns, strict, k, 0, chosen, out)) return std::nullopt;
  return out;
}

std::optional<VertexLadder> distinct_strict_ladder(const Graph& g, std::size_t k, std::uint64_t budget) {
  if (k == 0) return VertexLadder{};
  const NeighborhoodSystem ns = neighborhoods(g);
  const std::size_t ell = distinct_ladder_length(k);
  const Ladder l = max_ladder(ns.system, ell, true, budget);
  // Shorter ladders may still admit a selection; only length ℓ guarantees one.
  auto out = extract_distinct(ns, l, k);
  if (!out && l.length() < ell) return std::nullopt;
  if (!out) throw ConsistencyError("extraction failed on a strict " + std::to_string(ell) + "-ladder");
  if (!is_strict_vertex_ladder(g, *out)) throw ConsistencyError("extracted ladder fails the strict pattern");
  return out;
}

PivotStrategy parse_pivot(const std::string& name) {
  if (name == "lowest") return PivotStrategy::lowest;
  if (name == "maxdeg") return PivotStrategy::max_degree;
  if (name == "random") return PivotStrategy::random;
  throw InputError("unknown pivot strategy '" + name + "' (expected lowest, maxdeg or random)");
}

std::string pivot_name(PivotStrategy p) {
  switch (p) {
  case PivotStrategy::lowest: return "lowest";
  case PivotStrategy::max_degree: return "maxdeg";
  case PivotStrategy::random: return "random";
  }
  return "lowest";
}

std::size_t TypeTree::depth() const {
  std::size_t d = 0;
  for (const auto& [v, s] : label) d = std::max(d, v.size());
  return d;
}

std::vector<Vertex> TypeTree::terminals() const {
  std::vector<Vertex> out;
  for (const auto& [v, s] : label)
    if (!label.count(v + '0') && !label.count(v + '1')) out.push_back(v);
  return out;
}

std::map<Vertex, std::size_t> TypeTree::internal_labels() const {
  std::map<Vertex, std::size_t> out;
  for (const auto& [v, s] : label)
    if (label.count(v + '0') || label.count(v + '1')) out.emplace(v, s);
  return out;
}

TypeTree type_tree(const Graph& g, const std::vector<std::size_t>& s_set, PivotStrategy pivot, std::uint64_t seed) {
  TypeTree t;
  t.pivot = pivot;
  t.seed = seed;
  Bits s(g.size());
  for (auto v : s_set) {
    if (v >= g.size()) throw InputError("vertex " + std::to_string(v) + " out of range");
    s.set(v);
  }
  std::mt19937_64 rng(seed);

  auto choose = [&](const Bits& members) -> std::size_t {
    switch (pivot) {
    case PivotStrategy::lowest: return members.find_first();
    case PivotStrategy::max_degree: {
      std::size_t best = members.find_first(), best_deg = 0;
      for (auto v = members.find_first(); v != Bits::npos; v = members.find_next(v)) {
        const std::size_t deg = (g.neighbors(v) & members).count();
        if (deg > best_deg) best = v, best_deg = deg;
      }
      return best;
    }
    case PivotStrategy::random: {
      auto skip = rng() % members.count();
      auto v = members.find_first();
      while (skip--) v = members.find_next(v);
      return v;
    }
    }
    return members.find_first();
  };

  std::vector<std::pair<Vertex, Bits>> work{{"", s}};
  while (!work.empty()) {
    auto [at, members] = std::move(work.back());
    work.pop_back();
    if (members.none()) continue;
    const std::size_t pivot_vertex = choose(members);
    t.label.emplace(at, pivot_vertex);
    t.element_of.emplace(pivot_vertex, at);
    members.reset(pivot_vertex);
    work.emplace_back(at + '1', members - g.neighbors(pivot_vertex));
    work.emplace_back(at + '0', members & g.neighbors(pivot_vertex));
  }
  return t;
}

std::string type_tree_dot(const TypeTree& t, const std::string& graph_name) {
  auto id = [](const Vertex& v) { return "n" + (v.empty() ? std::string("root") : v); };
  std::string out = "digraph " + graph_name + " {\n  node [shape=circle];\n";
  for (const auto& [v, s] : t.label) out += "  " + id(v) + " [label=\"" + std::to_string(s) + "\"];\n";
  for (const auto& [v, s] : t.label) {
    if (v.empty()) continue;
    const Vertex parent = v.substr(0, v.size() - 1);
    out += "  " + id(parent) + " -> " + id(v) + " [label=\"" + (v.back() == '0' ? "adj" : "non") + "\"];\n";
  }
  return out + "}\n";
}

bool verify_type_tree(const Graph& g, const TypeTree& t, const std::vector<std::size_t>& s_set) {
  std::vector<std::size_t> sorted = s_set;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (t.element_of.size() != sorted.size() || t.label.size() != sorted.size()) return false;
  for (auto s : sorted) {
    auto it = t.element_of.find(s);
    if (it == t.element_of.end()) return false;
    auto lt = t.label.find(it->second);
    if (lt == t.label.end() || lt->second != s) return false;
  }
  const SetSystem ns = neighborhood_system(g);
  const auto internal = t.internal_labels();
  for (const auto& [w, s] : t.label) {
    if (!w.empty() && !t.label.count(w.substr(0, w.size() - 1))) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::size_t r = t.label.at(w.substr(0, i));
      if (g.adjacent(r, s) != (w[i] == '0')) return false;
    }
  }
  // Fullness: every terminal has a solution in the neighborhood family.
  for (const auto& w : t.terminals()) {
    bool realized = false;
    for (const auto& nb : ns.family()) {
      bool ok = true;
      for (std::size_t i = 0; i < w.size() && ok; ++i) ok = nb.test(internal.at(w.substr(0, i))) == (w[i] == '0');
      if (ok) {
        realized = true;
        break;
      }
    }
    if (!realized) return false;
  }
  return true;
}

PathSplit path_split(const Graph& g, const TypeTree& t, const Vertex& end) {
  auto it = t.label.find(end);
  if (it == t.label.end()) throw InputError("vertex '" + end + "' is not in the type tree");
  PathSplit out;
  for (std::size_t i = 0; i < end.size(); ++i) {
    const std::size_t r = t.label.at(end.substr(0, i));
    (end[i] == '0' ? out.clique : out.independent).push_back(r);
  }
  (out.clique.size() >= out.independent.size() ? out.clique : out.independent).push_back(it->second);
  if (!g.is_clique(out.clique)) throw ConsistencyError("path split: left-branching labels are not a clique");
  if (!g.is_independent(out.independent))
    throw ConsistencyError("path split: right-branching labels are not independent");
  return out;
}

HomogeneousSet eh_extract(const Graph& g, PivotStrategy pivot, std::uint64_t seed) {
  if (g.size() == 0) throw InputError("eh_extract needs a nonempty graph");
  std::vector<std::size_t> all(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) all[v] = v;
  const TypeTree t = type_tree(g, all, pivot, seed);

  Vertex deepest;
  for (const auto& w : t.terminals())
    if (w.size() > deepest.size()) deepest = w;
  PathSplit split = path_split(g, t, deepest);

  HomogeneousSet out;
  if (split.clique.size() >= split.independent.size()) {
    out.vertices = std::move(split.clique);
    out.kind = HomogeneousKind::clique;
  } else {
    out.vertices = std::move(split.independent);
    out.kind = HomogeneousKind::independent;
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.tree_depth = t.depth();
  out.neighborhood_dim = thicket_dim(neighborhood_system(g));
  out.depth_bound = (out.tree_depth + 2) / 2;
  const double root = std::pow(static_cast<double>(g.size()), 1.0 / (out.neighborhood_dim + 1));
  const double half = (root - 2.0) / 2.0;
  out.dimension_bound = half <= 0 ? 0 : static_cast<std::size_t>(std::ceil(half - 1e-9));
  if (out.vertices.size() < std::max(out.depth_bound, out.dimension_bound))
    throw ConsistencyError("homogeneous set smaller than the guaranteed bound");
  return out;
}

} // namespace thicket
