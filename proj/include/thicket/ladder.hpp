#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thicket/errors.hpp"
#include "thicket/set_system.hpp"
#include "thicket/tree.hpp"

namespace thicket {

/// (x_1, F_1, ..., x_k, F_k) with x_i ∈ F_j ⟺ i < j for i ≠ j; strict
/// ladders also have x_i ∉ F_i. Elements and sets may repeat.
struct Ladder {
  std::vector<std::size_t> elements;
  std::vector<std::size_t> sets; // family indices
  bool strict = false;

  std::size_t length() const { return elements.size(); }
  friend bool operator==(const Ladder&, const Ladder&) = default;
};

/// Checks the membership pattern (and strictness when flagged).
bool is_ladder(const SetSystem& system, const Ladder& ladder);
/// Checks the pattern including x_i ∉ F_i regardless of the flag.
bool is_strict_ladder(const SetSystem& system, const Ladder& ladder);

inline constexpr std::uint64_t kDefaultLadderBudget = 20'000'000;

class LadderBudgetExceeded : public BudgetExceeded {
public:
  LadderBudgetExceeded(const std::string& what, Ladder best) : BudgetExceeded(what), best_(std::move(best)) {}
  const Ladder& best_so_far() const { return best_; }

private:
  Ladder best_;
};

/// A longest ladder of length at most k_max, by depth-first extension. Each
/// step keeps only sets containing every earlier element and elements lying
/// in no earlier set. Throws LadderBudgetExceeded after `budget` search nodes.
Ladder max_ladder(const SetSystem& system, std::size_t k_max, bool strict,
                  std::uint64_t budget = kDefaultLadderBudget);

/// (x_2, F_1, x_4, F_3, ..., x_2k, F_2k-1) from a ladder of length 2k.
Ladder strictify(const SetSystem& system, const Ladder& ladder);

struct LadderTree {
  LabeledTree tree;
  /// leaf_witness[i] is the family index realizing the i-th leaf (left to
  /// right), verified with is_realized.
  std::vector<std::size_t> leaf_witness;
};

/// Balanced depth-k tree over a strict 2^k-ladder with every leaf realized by
/// a ladder set. The vertex over a block of ladder positions [a..b] with
/// midpoint m = (a+b-1)/2 is labeled x_m: the upper half of the block
/// contains x_m and goes left, the lower half excludes it (strictness at m)
/// and goes right. Leaves therefore list F_{2^k}, ..., F_1 from left to right.
LadderTree ladder_to_tree(const SetSystem& system, const Ladder& ladder);

/// Searches for a k-ladder when thicket_dim(system) >= 2^k - 1. Throws
/// InputError when the dimension is too small and ConsistencyError when the
/// exhaustive search comes back short.
Ladder thicket_to_ladder_check(const SetSystem& system, std::size_t k,
                               std::uint64_t budget = kDefaultLadderBudget);

/// The same ladder read in dualize(system): dual elements are the sets in
/// reverse order, dual sets the element profiles in reverse order.
Ladder dual_ladder(const SetSystem& system, const Ladder& ladder);

/// dual <= 2^(2^(dim+2)) - 2, evaluated without overflow (dim >= -1).
bool within_duality_bound(int dim, int dual);

} // namespace thicket
