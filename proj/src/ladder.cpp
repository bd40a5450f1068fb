#include "thicket/ladder.hpp"

#include <algorithm>

#include "thicket/complexity.hpp"

namespace thicket {
namespace {

bool pattern_holds(const SetSystem& s, const Ladder& l, bool strict) {
  if (l.elements.size() != l.sets.size()) return false;
  const std::size_t k = l.length();
  for (std::size_t i = 0; i < k; ++i) {
    if (l.elements[i] >= s.domain_size() || l.sets[i] >= s.size()) return false;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const bool member = s.contains(l.sets[j], l.elements[i]);
      if (i == j) {
        if (strict && member) return false;
      } else if (member != (i < j)) {
        return false;
      }
    }
  return true;
}

class LadderSearch {
public:
  LadderSearch(const SetSystem& s, std::size_t k_max, bool strict, std::uint64_t budget)
      : sys_(s), k_max_(k_max), strict_(strict), budget_(budget) {}

  Ladder run() {
    best_.strict = strict_;
    current_.strict = strict_;
    if (k_max_ == 0 || sys_.empty()) return best_;
    extend(sys_.all_sets(), Bits(sys_.domain_size()));
    return best_;
  }

private:
  /// candidates: sets containing every chosen element; covered: union of the
  /// chosen sets (a new element must avoid all of them).
  void extend(const Bits& candidates, const Bits& covered) {
    if (++nodes_ > budget_)
      throw LadderBudgetExceeded("ladder search exceeded " + std::to_string(budget_) + " nodes", best_);
    if (current_.length() > best_.length()) {
      best_.elements = current_.elements;
      best_.sets = current_.sets;
    }
    if (best_.length() >= k_max_) return;
    Bits free = ~covered;
    // Repeats are only possible at adjacent positions, so each remaining
    // set or element can fill at most two more rungs.
    const std::size_t bound = current_.length() + 2 * std::min(candidates.count(), free.count());
    if (bound <= best_.length()) return;

    for (auto f = candidates.find_first(); f != Bits::npos; f = candidates.find_next(f)) {
      const Bits& set = sys_.set(f);
      Bits grown = covered | set;
      for (auto x = free.find_first(); x != Bits::npos; x = free.find_next(x)) {
        if (strict_ && set.test(x)) continue;
        current_.elements.push_back(x);
        current_.sets.push_back(f);
        extend(candidates & sys_.containing(x), grown);
        current_.elements.pop_back();
        current_.sets.pop_back();
        if (best_.length() >= k_max_) return;
      }
    }
  }

  const SetSystem& sys_;
  std::size_t k_max_;
  bool strict_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  Ladder current_, best_;
};

} // namespace

bool is_ladder(const SetSystem& system, const Ladder& ladder) { return pattern_holds(system, ladder, ladder.strict); }

bool is_strict_ladder(const SetSystem& system, const Ladder& ladder) { return pattern_holds(system, ladder, true); }

Ladder max_ladder(const SetSystem& system, std::size_t k_max, bool strict, std::uint64_t budget) {
  Ladder out = LadderSearch(system, k_max, strict, budget).run();
  if (!is_ladder(system, out)) throw ConsistencyError("ladder search returned an invalid ladder");
  return out;
}

Ladder strictify(const SetSystem& system, const Ladder& ladder) {
  if (!is_ladder(system, ladder)) throw InputError("strictify: input is not a ladder");
  if (ladder.length() % 2 != 0)
    throw InputError("strictify: ladder length " + std::to_string(ladder.length()) + " is odd");
  Ladder out;
  out.strict = true;
  for (std::size_t i = 0; i + 1 < ladder.length(); i += 2) {
    out.elements.push_back(ladder.elements[i + 1]);
    out.sets.push_back(ladder.sets[i]);
  }
  if (!is_strict_ladder(system, out)) throw ConsistencyError("strictify produced a non-strict ladder");
  return out;
}

namespace {

/// Block of 1-based ladder positions [a..b].
LabeledTree block_tree(const Ladder& l, std::size_t a, std::size_t b) {
  if (a == b) return LabeledTree::leaf();
  const std::size_t m = (a + b - 1) / 2;
  return LabeledTree::node(l.elements[m - 1], block_tree(l, m + 1, b), block_tree(l, a, m));
}

} // namespace

LadderTree ladder_to_tree(const SetSystem& system, const Ladder& ladder) {
  if (!is_strict_ladder(system, ladder)) throw InputError("ladder_to_tree: input is not a strict ladder");
  const std::size_t len = ladder.length();
  if (len == 0 || (len & (len - 1)) != 0)
    throw InputError("ladder_to_tree: length " + std::to_string(len) + " is not a power of two");
  LadderTree out{block_tree(ladder, 1, len), {}};
  const auto leaves = out.tree.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const std::size_t f = ladder.sets[len - 1 - i];
    if (!solves(out.tree, leaves[i], system.set(f)))
      throw ConsistencyError("ladder_to_tree: F_" + std::to_string(len - i) + " does not realize leaf '" +
                             leaves[i] + "'");
    out.leaf_witness.push_back(f);
  }
  return out;
}

Ladder thicket_to_ladder_check(const SetSystem& system, std::size_t k, std::uint64_t budget) {
  const int dim = thicket_dim(system);
  const long long need = (1LL << k) - 1;
  if (dim < need)
    throw InputError("thicket dimension " + std::to_string(dim) + " is below 2^" + std::to_string(k) + "-1");
  Ladder l = max_ladder(system, k, false, budget);
  if (l.length() < k)
    throw ConsistencyError("dimension " + std::to_string(dim) + " but no " + std::to_string(k) +
                           "-ladder exists");
  return l;
}

Ladder dual_ladder(const SetSystem& system, const Ladder& ladder) {
  if (!is_ladder(system, ladder)) throw InputError("dual_ladder: input is not a ladder");
  const Dualized dual = dualize_with_map(system);
  const std::size_t k = ladder.length();
  Ladder out;
  out.strict = ladder.strict;
  for (std::size_t i = 0; i < k; ++i) {
    out.elements.push_back(ladder.sets[k - 1 - i]);
    out.sets.push_back(dual.element_to_set[ladder.elements[k - 1 - i]]);
  }
  if (!is_ladder(dual.system, out)) throw ConsistencyError("dual ladder fails the membership pattern");
  return out;
}

bool within_duality_bound(int dim, int dual) {
  const int exponent_log = std::max(dim + 2, 0); // bound = 2^(2^exponent_log) - 2
  if (exponent_log >= 6) return true;             // bound >= 2^64 - 2
  const unsigned __int128 bound = (static_cast<unsigned __int128>(1) << (1u << exponent_log)) - 2;
  return dual < 0 || static_cast<unsigned __int128>(dual) <= bound;
}

} // namespace thicket
