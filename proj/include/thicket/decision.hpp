#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thicket/bits.hpp"
#include "thicket/set_system.hpp"
#include "thicket/tree.hpp"

namespace thicket {

/// Decision-tree computation over a finite ambient domain. Labels of the
/// trees index into label_family; target and reference are subsets of its
/// domain.
struct ComputationInstance {
  SetSystem label_family;
  Bits target;
  Bits reference;
};

/// Leaves whose regions over the reference together make up target ∩
/// reference, or nullopt if the tree's partition of the reference does not
/// refine {Y ∩ G, Y \ G}. Leaves with empty regions are not selected.
std::optional<std::vector<Vertex>> computes(const LabeledTree& tree, const ComputationInstance& instance);

/// Substitutes computing trees for the labels of an outer tree. `outer` is
/// labeled by indices into `outer_family`; computing_trees[G] is a tree over
/// `inner_family` computing outer_family[G] over y. At a vertex labeled G the
/// leaves of T_G whose region over y lies inside G (empty regions included)
/// receive the substituted left subtree, the rest the right subtree. Throws
/// InputError naming G when a computing tree is missing or fails to compute.
LabeledTree compose(const LabeledTree& outer, const SetSystem& outer_family,
                    const std::map<std::size_t, LabeledTree>& computing_trees, const SetSystem& inner_family,
                    const Bits& y);

/// True iff every region of `fine` (over y) lies inside some region of
/// `coarse`.
bool refines(const std::vector<LeafRegion>& fine, const std::vector<LeafRegion>& coarse);

/// {x ≤ k : 0 ≤ k < N} over [0, N); set k is {0..k}.
SetSystem threshold_family(std::size_t n);
/// {x : rem(x, k) = l} for 1 ≤ k ≤ N, 0 ≤ l < k, over [0, N), deduplicated.
SetSystem residue_family(std::size_t n);
/// ∅, the singletons {0}..{N-1}, and [0, N): the one-variable atomic sets of
/// (ℕ; 0, 1, +, −, =) truncated to [0, N).
SetSystem atomic_equality_family(std::size_t n);

/// Row-major index of a point in [0, N)^arity.
std::size_t flatten(const std::vector<std::size_t>& point, std::size_t n);

/// {(x, y) : x ≤ y} over [0, N)^2.
Bits order_relation(std::size_t n);
/// {(x, y, z) : y > 0 and rem(x, y) = z} over [0, N)^3.
Bits remainder_relation(std::size_t n);

/// {x : (x, fixed...) ∈ set} for a set over [0, N)^(1 + fixed.size()).
Bits slice(const Bits& set, std::size_t n, const std::vector<std::size_t>& fixed);
/// slice applied to every set, deduplicated, over [0, N).
SetSystem slice_family(const SetSystem& box_family, std::size_t n, const std::vector<std::size_t>& fixed);

struct ShatterWitness {
  SetSystem family;
  LabeledTree tree;
  /// leaf_element[i]: the unique element of [0, 2^n) in the i-th leaf region.
  std::vector<std::size_t> leaf_element;
};

/// Balanced depth-n tree over residue_family(2^n). Level j asks
/// rem(x, 2^(j+1)) = c where c is the residue fixed by the path so far.
ShatterWitness residue_shatter_tree(std::size_t n);
/// Balanced depth-n binary search over threshold_family(2^n).
ShatterWitness threshold_shatter_tree(std::size_t n);

/// Leaf regions over [0, 2^depth) are singletons covering the interval.
bool verify_shatter(const ShatterWitness& w);

inline constexpr std::uint64_t kDefaultMemoBudget = 4'000'000;

/// Least depth of a label_family tree computing target over reference, or
/// nullopt when it exceeds depth_cap. Throws BudgetExceeded when the memo
/// table outgrows `memo_budget` regions.
std::optional<std::size_t> min_decision_depth(const ComputationInstance& instance, std::size_t depth_cap,
                                              std::uint64_t memo_budget = kDefaultMemoBudget);

enum class AtomStructure { equality, order };

AtomStructure parse_structure(const std::string& name);
std::string structure_name(AtomStructure s);

struct LowerBoundRow {
  std::size_t n = 0;
  std::optional<std::size_t> depth; // nullopt: exceeded the cap or the memo budget
  bool budget_exhausted = false;
  bool too_large = false;           // n above kLowerBoundMaxN, not attempted
};

/// Largest n the experiment materializes (the label family has 2^n sets of
/// 2^n bits each).
inline constexpr std::size_t kLowerBoundMaxN = 12;

/// For each n: the least depth computing {x : x < 2^(n-1)} over [0, 2^n) with
/// the atomic equality family or the threshold family as labels. n = 0 is an
/// InputError; n above kLowerBoundMaxN yields a too_large row.
std::vector<LowerBoundRow> lower_bound_experiment(AtomStructure structure, const std::vector<std::size_t>& ns,
                                                  std::size_t depth_cap = 16,
                                                  std::uint64_t memo_budget = kDefaultMemoBudget);

} // namespace thicket
