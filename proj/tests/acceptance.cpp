// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "thicket/complexity.hpp"
#include "thicket/decision.hpp"
#include "thicket/errors.hpp"
#include "thicket/graph.hpp"
#include "thicket/ladder.hpp"

using namespace thicket;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string describe(const SetSystem& s) {
  std::ostringstream out;
  out << "domain " << s.domain_size() << " family";
  for (const auto& f : s.family()) out << ' ' << to_setstring(f);
  return out.str();
}

const std::vector<SetSystem>& small_corpus() {
  static const auto c = corpus::exhaustive(4, 8);
  return c;
}

const std::vector<SetSystem>& random_corpus() {
  static const auto c = corpus::random(500, 7, 20, 20240601);
  return c;
}

template <class F> void each_system(F&& f) {
  for (const auto& s : small_corpus()) f(s);
  for (const auto& s : random_corpus()) f(s);
}

// 1. thicket_dim = bruteforce (cap 3), rho = bruteforce for n <= 3
Outcome oracle_equivalence() {
  Outcome o;
  each_system([&](const SetSystem& s) {
    if (!o.pass) return;
    o.expect(std::min(thicket_dim(s), 3) == thicket_dim_bruteforce(s, 3), "dim mismatch on " + describe(s));
    const auto table = rho_table(s, 3);
    for (std::size_t n = 0; n <= 3; ++n)
      o.expect(table[n] == rho_bruteforce(s, n), "rho(" + std::to_string(n) + ") mismatch on " + describe(s));
  });
  // the test-side labeling oracle on a slice of the corpus
  std::mt19937 rng(1);
  for (int i = 0; i < 300; ++i) {
    const auto& s = small_corpus()[rng() % small_corpus().size()];
    const auto sets = oracle::sets_of(s);
    for (std::size_t n = 0; n <= 3; ++n)
      o.expect(rho(s, n) == oracle::rho_enum(sets, s.domain_size(), n), "rho oracle mismatch on " + describe(s));
    o.expect(std::min(thicket_dim(s), 3) == oracle::dim_enum(sets, s.domain_size(), 3),
             "dim oracle mismatch on " + describe(s));
  }
  o.detail = o.pass ? std::to_string(small_corpus().size()) + " exhaustive + " +
                          std::to_string(random_corpus().size()) + " random systems"
                    : o.detail;
  return o;
}

// 2. Sauer-Shelah both branches for n <= 6, and the integer-labeled tree bound
Outcome sauer_shelah() {
  Outcome o;
  each_system([&](const SetSystem& s) {
    if (!o.pass) return;
    ShatterTable t;
    try {
      t = sauer_shelah_report(s, 6);
    } catch (const ConsistencyError& e) {
      o.expect(false, std::string(e.what()) + " on " + describe(s));
      return;
    }
    for (std::size_t n = 0; n <= 6; ++n) {
      if (static_cast<int>(n) <= t.dim) o.expect(t.rho[n] == (std::uint64_t{1} << n), "rho below 2^n on " + describe(s));
      if (t.dim >= 0) o.expect(t.rho[n] <= oracle::pascal_sum(n, t.dim), "rho above phi on " + describe(s));
      o.expect(t.rho[n] <= std::min<std::uint64_t>(std::uint64_t{1} << n, s.size()), "rho above min(2^n,|F|)");
    }
  });
  for (std::size_t n = 0; n <= 3; ++n)
    for (int k = 0; k <= 2; ++k) {
      const std::size_t best = oracle::integer_tree_max(n, k);
      o.expect(best <= phi(n, static_cast<std::size_t>(k)),
               "integer-labeled tree above phi at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  if (o.pass) o.detail = "corpus n <= 6; integer labelings n <= 3, k <= 2";
  return o;
}

// 3. residue tree leaf order and the filled-leaf pattern over 2-subsets
Outcome worked_examples() {
  Outcome o;
  const ShatterWitness w = residue_shatter_tree(3);
  std::vector<std::size_t> order;
  for (const auto& r : leaf_regions(w.tree, w.family, full_bits(8))) {
    o.expect(r.region.count() == 1, "residue leaf region is not a singleton");
    order.push_back(r.region.find_first());
  }
  o.expect(order == std::vector<std::size_t>{0, 4, 2, 6, 1, 5, 3, 7}, "residue leaf order differs");

  std::vector<std::vector<std::size_t>> pairs;
  for (std::size_t a = 0; a < 11; ++a)
    for (std::size_t b = a + 1; b < 11; ++b) pairs.push_back({a, b});
  const SetSystem s = build_system(11, pairs);
  const LabeledTree t =
      build_balanced(3, {{"", 1}, {"0", 1}, {"1", 2}, {"00", 2}, {"01", 0}, {"10", 3}, {"11", 10}});
  std::vector<bool> filled;
  for (const auto& leaf : t.leaves()) filled.push_back(is_realized(t, leaf, s).has_value());
  o.expect(filled == std::vector<bool>{true, true, false, false, true, true, true, true}, "filled-leaf pattern differs");
  o.expect(realized_leaf_count(t, s) == 6, "realized count is not 6");
  if (o.pass) o.detail = "leaf order 0 4 2 6 1 5 3 7; 6 of 8 leaves filled";
  return o;
}

SetSystem below(std::size_t n) {
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<std::size_t> s;
    for (std::size_t x = 0; x < j; ++x) s.push_back(x);
    sets.push_back(s);
  }
  return build_system(n, sets);
}

// 4. strictify, ladder trees, and ladders from dimension
Outcome ladders() {
  Outcome o;
  std::size_t strictified = 0;
  each_system([&](const SetSystem& s) {
    if (!o.pass || s.size() == 0) return;
    Ladder l = max_ladder(s, 8, false);
    if (l.length() % 2) {
      l.elements.pop_back();
      l.sets.pop_back();
    }
    if (l.length() == 0) return;
    o.expect(is_strict_ladder(s, strictify(s, l)), "strictify output not strict on " + describe(s));
    ++strictified;
  });

  for (std::size_t k = 0; k <= 3; ++k) {
    const std::size_t len = std::size_t{1} << k;
    // thresholds: strictify the 2^(k+1) canonical ladder
    const SetSystem t = below(2 * len);
    Ladder canonical;
    for (std::size_t i = 0; i < 2 * len; ++i) {
      canonical.elements.push_back(i);
      canonical.sets.push_back(i);
    }
    const LadderTree tt = ladder_to_tree(t, strictify(t, canonical));
    o.expect(tt.tree.is_balanced() && tt.tree.depth() == k && is_full(tt.tree, t), "threshold ladder tree not full");
    // half-graph: the a-side against the b-side neighborhoods
    const NeighborhoodSystem h = neighborhoods(half_graph(len));
    Ladder hl;
    for (std::size_t i = 0; i < len; ++i) {
      hl.elements.push_back(i);
      hl.sets.push_back(h.set_of_vertex[len + i]);
    }
    hl.strict = true;
    const LadderTree ht = ladder_to_tree(h.system, hl);
    o.expect(ht.tree.is_balanced() && ht.tree.depth() == k && is_full(ht.tree, h.system),
             "half-graph ladder tree not full");
  }

  std::mt19937 rng(4);
  for (std::size_t k = 1; k <= 2; ++k) {
    const int need = static_cast<int>((std::size_t{1} << k) - 1);
    std::size_t found = 0;
    while (found < 200 && o.pass) {
      const SetSystem s = corpus::random_system(rng, 3 + rng() % 5, 6 + rng() % 20);
      if (thicket_dim(s) < need) continue;
      try {
        const Ladder l = thicket_to_ladder_check(s, k);
        o.expect(l.length() >= k && is_ladder(s, l), "invalid ladder returned on " + describe(s));
      } catch (const ConsistencyError& e) {
        o.expect(false, std::string(e.what()) + " on " + describe(s));
      }
      ++found;
    }
  }
  if (o.pass) o.detail = std::to_string(strictified) + " strictified; k <= 3 trees; 2 x 200 ladder searches";
  return o;
}

// 5. double dual and the duality bound on the small corpus
Outcome duality() {
  Outcome o;
  for (const auto& s : small_corpus()) {
    const auto iso = double_dual_isomorphism(s);
    o.expect(iso.has_value() && verify_isomorphism(s, dualize(dualize(s)), *iso), "double dual fails on " + describe(s));
    const int d = thicket_dim(s);
    const int dd = dual_dim(s);
    o.expect(dd >= -1 && dd <= static_cast<int>(s.domain_size()), "dual dimension out of range on " + describe(s));
    o.expect(within_duality_bound(d, dd), "duality bound fails on " + describe(s));
    if (!o.pass) break;
  }
  if (o.pass) o.detail = std::to_string(small_corpus().size()) + " systems";
  return o;
}

// 6. type trees, path splits, homogeneous sets, and the five-vertex graph
Outcome graph_pipeline() {
  Outcome o;
  std::mt19937 rng(6);
  for (int round = 0; round < 300 && o.pass; ++round) {
    const std::size_t n = 1 + rng() % 12;
    const Graph g = corpus::random_graph(rng, n, 0.15 + 0.7 * (rng() % 1000) / 1000.0);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const int k = thicket_dim(neighborhood_system(g));
    for (auto pivot : {PivotStrategy::lowest, PivotStrategy::max_degree, PivotStrategy::random}) {
      const TypeTree t = type_tree(g, all, pivot, round);
      std::set<std::size_t> seen;
      for (const auto& [v, x] : t.label) seen.insert(x);
      o.expect(seen.size() == n && t.label.size() == n, "type tree labeling is not a bijection");
      o.expect(verify_type_tree(g, t, all), "type tree fails verification");
      for (const auto& end : t.terminals()) {
        const PathSplit s = path_split(g, t, end);
        o.expect(g.is_clique(s.clique) && g.is_independent(s.independent), "path split not homogeneous");
      }
      const HomogeneousSet h = eh_extract(g, pivot, round);
      const bool homogeneous = h.kind == HomogeneousKind::clique ? g.is_clique(h.vertices) : g.is_independent(h.vertices);
      o.expect(homogeneous, "homogeneous set fails adjacency check");
      o.expect(h.vertices.size() >= (h.tree_depth + 2) / 2, "homogeneous set below the depth bound");
      const double bound = std::ceil((std::pow(static_cast<double>(n), 1.0 / (k + 1)) - 2) / 2);
      o.expect(static_cast<double>(h.vertices.size()) >= bound, "homogeneous set below the dimension bound");
    }
  }
  const Graph cex = ladder_without_half_graph();
  const NeighborhoodSystem ns = neighborhoods(cex);
  const Ladder l = max_ladder(ns.system, 12, false);
  o.expect(l.length() >= 3 && is_ladder(ns.system, l), "five-vertex graph lacks a 3-ladder");
  o.expect(max_ladder(ns.system, 12, true).length() >= 3, "five-vertex graph lacks a strict 3-ladder");
  o.expect(!contains_half_graph(cex, 3, HalfGraphMode::semi_induced).has_value(), "five-vertex graph contains H_3");
  if (o.pass) o.detail = "300 graphs x 3 pivots; 3-ladder without H_3";
  return o;
}

// 7. the substitution T -> T*
Outcome composition() {
  Outcome o;
  std::mt19937 rng(7);
  auto random_tree = [&](std::size_t depth, std::size_t labels) {
    return build_balanced(depth, [&](const Vertex&) { return static_cast<std::size_t>(rng() % labels); });
  };
  for (int round = 0; round < 100 && o.pass; ++round) {
    const std::size_t n = 4 + rng() % 13;
    const SetSystem inner = corpus::random_system(rng, n, 2 + rng() % 8);
    Bits y(n);
    for (std::size_t x = 0; x < n; ++x)
      if (rng() % 3) y.set(x);
    std::vector<Bits> outer_sets;
    std::vector<LabeledTree> computing;
    for (int i = 0; i < 4; ++i) {
      const LabeledTree tg = random_tree(rng() % 4, inner.size());
      Bits g(n);
      for (const auto& r : leaf_regions(tg, inner, full_bits(n)))
        if (rng() % 2) g |= r.region;
      outer_sets.push_back(g);
      computing.push_back(tg);
    }
    const SetSystem outer(n, outer_sets);
    std::map<std::size_t, LabeledTree> trees;
    for (std::size_t i = 0; i < outer.size(); ++i)
      for (std::size_t j = 0; j < outer_sets.size(); ++j)
        if (outer_sets[j] == outer.set(i)) {
          trees.emplace(i, computing[j]);
          break;
        }
    const LabeledTree t = random_tree(rng() % 4, outer.size());
    const LabeledTree star = compose(t, outer, trees, inner, y);
    o.expect(refines(leaf_regions(star, inner, y), leaf_regions(t, outer, y)), "T* does not refine T");
    o.expect(realized_region_count(star, inner, y) >= realized_region_count(t, outer, y), "T* realizes fewer leaves");
    std::size_t inner_depth = 0;
    for (const auto& [i, tg] : trees) inner_depth = std::max(inner_depth, tg.depth());
    o.expect(star.depth() <= inner_depth * t.depth(), "T* deeper than the depth product");
  }
  if (o.pass) o.detail = "100 random instances";
  return o;
}

// 8. equality versus threshold atoms
Outcome lower_bounds() {
  Outcome o;
  const auto eq = lower_bound_experiment(AtomStructure::equality, {2, 3, 4});
  const auto ord = lower_bound_experiment(AtomStructure::order, {2, 3, 4});
  std::string e, r;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t n = i + 2;
    o.expect(eq[i].depth == std::optional<std::size_t>(std::size_t{1} << (n - 1)), "equality depth differs");
    o.expect(ord[i].depth == std::optional<std::size_t>(1), "order depth differs");
    e += (e.empty() ? "" : ",") + (eq[i].depth ? std::to_string(*eq[i].depth) : "-");
    r += (r.empty() ? "" : ",") + (ord[i].depth ? std::to_string(*ord[i].depth) : "-");
  }
  if (o.pass) o.detail = "equality " + e + " vs order " + r;
  return o;
}

// 9. VC dimension bounds thicket dimension from below; thresholds show the gap
Outcome vc_gap() {
  Outcome o;
  each_system([&](const SetSystem& s) {
    if (o.pass) o.expect(vc_dim(s) <= thicket_dim(s), "vc above thicket dim on " + describe(s));
  });
  std::string dims;
  for (std::size_t k = 1; k <= 6; ++k) {
    const std::size_t n = std::size_t{1} << k;
    const SetSystem t = threshold_family(n);
    o.expect(vc_dim(t) == 1, "threshold vc is not 1");
    // x_i = i, F_j = {x <= j}: an n-ladder; strictify and build the tree
    Ladder l;
    for (std::size_t i = 0; i < n; ++i) {
      l.elements.push_back(i);
      l.sets.push_back(i);
    }
    o.expect(is_ladder(t, l), "threshold ladder fails the checker");
    const LadderTree tree = ladder_to_tree(t, strictify(t, l));
    o.expect(tree.tree.depth() == k - 1 && is_full(tree.tree, t), "threshold ladder tree not full");
    o.expect(thicket_dim(t) >= static_cast<int>(k) - 1, "threshold dim below k-1");
    dims += (dims.empty() ? "" : ",") + std::to_string(thicket_dim(t));
  }
  if (o.pass) o.detail = "corpus ok; threshold dims k=1..6: " + dims + " with vc 1";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 120, oracle_equivalence},
      {2, "Sauer-Shelah dichotomy", 120, sauer_shelah},
      {3, "worked examples", 1, worked_examples},
      {4, "ladder machinery", 120, ladders},
      {5, "duality", 60, duality},
      {6, "graph pipeline", 180, graph_pipeline},
      {7, "composition", 60, composition},
      {8, "lower-bound contrast", 60, lower_bounds},
      {9, "VC lower bound", 60, vc_gap},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail = "exceeded the time limit";
    }
    std::printf("criterion %d %-24s %s  (%.2fs, limit %.0fs) %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                c.limit_seconds, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
