#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thicket/bits.hpp"
#include "thicket/set_system.hpp"

namespace thicket {

/// A vertex is its path from the root: "" is the root, '0' steps left and
/// '1' steps right.
using Vertex = std::string;

/// Binary tree in canonical form: every vertex has zero or two children,
/// internal vertices carry a label index and leaves carry none.
///
/// The label is an element index for element-labeled trees and a family
/// index for set-labeled (decision) trees; the tree itself does not care.
/// Only the internal labeling is stored; the vertex set is the labeled
/// vertices plus their children.
class LabeledTree {
public:
  /// The single-leaf tree.
  LabeledTree() = default;

  static LabeledTree leaf() { return {}; }
  static LabeledTree node(std::size_t label, const LabeledTree& left, const LabeledTree& right);

  /// Validates that the labeled vertex set is prefix-closed and spelled over
  /// {0,1}; throws InputError otherwise.
  static LabeledTree from_labels(std::map<Vertex, std::size_t> internal);

  const std::map<Vertex, std::size_t>& internal_labels() const { return labels_; }

  bool contains(const Vertex& v) const;
  bool is_leaf(const Vertex& v) const { return contains(v) && !labels_.count(v); }
  bool is_internal(const Vertex& v) const { return labels_.count(v) != 0; }
  /// Label of an internal vertex; throws InputError for leaves and strangers.
  std::size_t label(const Vertex& v) const;

  /// Leaves in left-to-right order.
  std::vector<Vertex> leaves() const;
  std::vector<Vertex> vertices() const;
  std::size_t leaf_count() const { return labels_.size() + 1; }
  std::size_t vertex_count() const { return 2 * labels_.size() + 1; }
  std::size_t depth() const;
  bool is_balanced() const;

  LabeledTree subtree(const Vertex& v) const;
  /// Replaces leaf `at` by a copy of `sub`.
  LabeledTree graft(const Vertex& at, const LabeledTree& sub) const;

  friend bool operator==(const LabeledTree& a, const LabeledTree& b) { return a.labels_ == b.labels_; }

private:
  explicit LabeledTree(std::map<Vertex, std::size_t> labels) : labels_(std::move(labels)) {}
  std::map<Vertex, std::size_t> labels_;
};

/// Balanced tree of the given depth; `labeling` must cover every string of
/// length < depth (InputError names the first missing vertex).
LabeledTree build_balanced(std::size_t depth, const std::map<Vertex, std::size_t>& labeling);

/// Balanced tree labeled by a function of the vertex.
LabeledTree build_balanced(std::size_t depth, const std::function<std::size_t(const Vertex&)>& labeling);

/// Descends from the root, left when the current element label is in
/// `member`, right otherwise. `member` is a solution to exactly the leaf
/// returned.
Vertex trace(const LabeledTree& tree, const Bits& member);

/// F is a solution to v: F ∩ P(v) = P_L(v) for the element labels on v's path.
bool solves(const LabeledTree& tree, const Vertex& leaf, const Bits& set);

/// Lowest-index family member solving `leaf`, or nullopt. Throws InputError
/// when `leaf` is not a leaf of `tree`.
std::optional<std::size_t> is_realized(const LabeledTree& tree, const Vertex& leaf, const SetSystem& system);

std::size_t realized_leaf_count(const LabeledTree& tree, const SetSystem& system);
bool is_full(const LabeledTree& tree, const SetSystem& system);

struct LeafRegion {
  Vertex leaf;
  Bits region;
};

/// Regions A_v of a set-labeled tree: A_root = reference, left child keeps the
/// part inside the label set, right child the part outside. Returned in leaf
/// order; they partition `reference`.
std::vector<LeafRegion> leaf_regions(const LabeledTree& tree, const SetSystem& family, const Bits& reference);

/// Number of leaves whose region meets `reference`.
std::size_t realized_region_count(const LabeledTree& tree, const SetSystem& family, const Bits& reference);

/// Graphviz rendering. Internal vertices show `namer(label)`; when `system`
/// is given, leaves are drawn filled if realized over it.
std::string to_dot(const LabeledTree& tree, const std::function<std::string(std::size_t)>& namer,
                   const SetSystem* system = nullptr, const std::string& graph_name = "T");

} // namespace thicket
