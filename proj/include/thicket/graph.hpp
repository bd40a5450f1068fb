#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thicket/bits.hpp"
#include "thicket/ladder.hpp"
#include "thicket/set_system.hpp"
#include "thicket/tree.hpp"

namespace thicket {

/// Finite simple graph as a symmetric, irreflexive adjacency matrix.
class Graph {
public:
  explicit Graph(std::size_t n = 0) : adj_(n, Bits(n)) {}

  /// Throws InputError on self-loops or out-of-range endpoints; repeated
  /// edges are harmless.
  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  static Graph complete(std::size_t n);

  std::size_t size() const { return adj_.size(); }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u].test(v); }
  const Bits& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_[v].count(); }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  void add_edge(std::size_t u, std::size_t v);

  bool is_clique(const std::vector<std::size_t>& vs) const;
  bool is_independent(const std::vector<std::size_t>& vs) const;

private:
  std::vector<Bits> adj_;
};

/// Edge-list text: header `n m`, then m lines `u v` (0-based). `#` starts a
/// comment. Errors carry 1-based line numbers.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_string(const std::string& text);
std::string format_edge_list(const Graph& g);

/// Five vertices a..e = 0..4 with edges ab, ac, cd: the neighborhood system
/// has a strict 3-ladder, yet the graph contains no H_3.
Graph ladder_without_half_graph();

struct NeighborhoodSystem {
  SetSystem system;           // domain = vertices, family = distinct neighborhoods
  std::vector<std::size_t> set_of_vertex;               // v ↦ index of Γ_v
  std::vector<std::vector<std::size_t>> vertices_of_set; // twins sharing a neighborhood
};

NeighborhoodSystem neighborhoods(const Graph& g);
/// Family {Γ_v}, twins collapsed (duplicates_dropped() reports how many).
SetSystem neighborhood_system(const Graph& g);

/// Half-graph H_k: a_i = i-1, b_j = k+j-1, edge a_i b_j iff i < j.
Graph half_graph(std::size_t k);

enum class HalfGraphMode {
  /// Cross edges exactly for i < j; edges inside either side unconstrained.
  semi_induced,
  /// Cross edges at least for i < j; everything else unconstrained.
  subgraph,
  /// Exactly the edges of H_k among the 2k vertices.
  induced,
};

struct HalfGraphWitness {
  std::vector<std::size_t> u; // a-side
  std::vector<std::size_t> v; // b-side
};

bool verify_half_graph(const Graph& g, const HalfGraphWitness& w, HalfGraphMode mode);

/// 2k distinct vertices forming H_k in the requested sense, or nullopt.
/// Throws BudgetExceeded after `budget` search nodes.
std::optional<HalfGraphWitness> contains_half_graph(const Graph& g, std::size_t k,
                                                    HalfGraphMode mode = HalfGraphMode::semi_induced,
                                                    std::uint64_t budget = 50'000'000);

/// k(k+1): rung i needs up to i positions to place b_i and i more for a_i.
std::size_t distinct_ladder_length(std::size_t k);

struct VertexLadder {
  std::vector<std::size_t> u;         // ladder elements
  std::vector<std::size_t> v;         // ladder sets are Γ_{v_i}
};

/// Starting from a strict ℓ-ladder (ℓ = distinct_ladder_length(k)) in the
/// neighborhood system, extracts a strict k-ladder on 2k pairwise distinct
/// vertices by rung-by-rung selection along the ladder. The longest strict
/// ladder found is tried even when shorter than ℓ; nullopt if it admits no
/// selection.
std::optional<VertexLadder> distinct_strict_ladder(const Graph& g, std::size_t k,
                                                   std::uint64_t budget = kDefaultLadderBudget);

/// The extraction step alone, on a given strict ladder over the neighborhood
/// system. nullopt if no selection fits in the ladder.
std::optional<VertexLadder> extract_distinct(const NeighborhoodSystem& ns, const Ladder& strict, std::size_t k);

bool is_strict_vertex_ladder(const Graph& g, const VertexLadder& l);

enum class PivotStrategy { lowest, max_degree, random };

PivotStrategy parse_pivot(const std::string& name);
std::string pivot_name(PivotStrategy p);

/// Θ(S): every member of S sits at exactly one vertex. Its vertex set is
/// prefix-closed but, unlike LabeledTree, a vertex may have a single child
/// (an empty side of a split), so it is kept as its own structure.
struct TypeTree {
  std::map<Vertex, std::size_t> label;          // every vertex carries a graph vertex
  std::map<std::size_t, Vertex> element_of;     // graph vertex ↦ tree vertex
  PivotStrategy pivot = PivotStrategy::lowest;
  std::uint64_t seed = 0;

  bool empty() const { return label.empty(); }
  std::size_t depth() const;                    // longest vertex string
  std::vector<Vertex> terminals() const;        // vertices without children
  /// The tree with terminal labels deleted (internal vertices keep theirs).
  std::map<Vertex, std::size_t> internal_labels() const;
};

TypeTree type_tree(const Graph& g, const std::vector<std::size_t>& s_set, PivotStrategy pivot,
                   std::uint64_t seed = 0);

/// Checks the bijection, the left/right adjacency implications and that
/// every terminal is realized over the neighborhood family (its own
/// neighborhood solves it).
bool verify_type_tree(const Graph& g, const TypeTree& t, const std::vector<std::size_t>& s_set);

/// Graphviz rendering; edges are marked "adj" (left) and "non" (right).
std::string type_tree_dot(const TypeTree& t, const std::string& graph_name = "Theta");

struct PathSplit {
  std::vector<std::size_t> clique;      // labels whose path branches left
  std::vector<std::size_t> independent; // labels whose path branches right
};

/// Splits the labels on the root path to `end` (inclusive). The end label
/// joins the larger side (the clique on ties); both sides are checked against
/// the adjacency matrix. Throws InputError if `end` is not in the tree.
PathSplit path_split(const Graph& g, const TypeTree& t, const Vertex& end);

enum class HomogeneousKind { clique, independent };

struct HomogeneousSet {
  std::vector<std::size_t> vertices;
  HomogeneousKind kind = HomogeneousKind::clique;
  std::size_t tree_depth = 0;
  int neighborhood_dim = -1;
  std::size_t depth_bound = 0;     // ceil((depth+1)/2)
  std::size_t dimension_bound = 0; // ceil((n^(1/(k+1)) - 2) / 2), clamped at 0
};

/// Builds Θ(V), splits a deepest path and returns its larger homogeneous
/// side. Throws InputError on the empty graph and ConsistencyError if a
/// guaranteed bound fails.
HomogeneousSet eh_extract(const Graph& g, PivotStrategy pivot = PivotStrategy::lowest, std::uint64_t seed = 0);

} // namespace thicket
