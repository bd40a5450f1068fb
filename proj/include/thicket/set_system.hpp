#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thicket/bits.hpp"

namespace thicket {

enum class Sign { in, out };

/// A finite ground set {0..domain_size-1} with a deduplicated, ordered family
/// of subsets. Immutable after construction.
///
/// Besides the rows (one bit vector per set) the system caches the columns:
/// for each element x the mask of family indices whose set contains x. Every
/// restriction-based algorithm works on those masks.
class SetSystem {
public:
  SetSystem() = default;

  /// Builds a system, dropping repeated sets (first occurrence wins). Labels
  /// are optional; when given they must match `sets` one-to-one and follow
  /// their set through deduplication.
  SetSystem(std::size_t domain_size, std::vector<Bits> sets,
            std::vector<std::string> labels = {});

  std::size_t domain_size() const { return domain_size_; }
  std::size_t size() const { return family_.size(); }
  bool empty() const { return family_.empty(); }

  const std::vector<Bits>& family() const { return family_; }
  const Bits& set(std::size_t i) const { return family_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(std::size_t i) const;

  /// Mask over family indices of the sets containing x.
  const Bits& containing(std::size_t x) const { return columns_.at(x); }
  bool contains(std::size_t set_index, std::size_t x) const { return family_[set_index].test(x); }

  /// Mask selecting the whole family.
  Bits all_sets() const { return full_bits(family_.size()); }

  /// Number of input sets discarded as duplicates when this value was built.
  std::size_t duplicates_dropped() const { return dropped_; }

  std::optional<std::size_t> index_of(const Bits& s) const;

  /// Subfamily selected by a family-index mask, keeping domain and order.
  SetSystem subfamily(const Bits& mask) const;

  friend bool operator==(const SetSystem& a, const SetSystem& b) {
    return a.domain_size_ == b.domain_size_ && a.family_ == b.family_;
  }

private:
  std::size_t domain_size_ = 0;
  std::vector<Bits> family_;
  std::vector<std::string> labels_;
  std::vector<Bits> columns_;
  std::size_t dropped_ = 0;
};

/// Builds a system from member lists; throws InputError naming the first set
/// with an out-of-range element.
SetSystem build_system(std::size_t domain_size,
                       const std::vector<std::vector<std::size_t>>& sets,
                       std::vector<std::string> labels = {});

/// F_x (keep = in) or F_x̄ (keep = out).
SetSystem restrict(const SetSystem& system, std::size_t x, Sign keep);

struct Dualized {
  SetSystem system;
  /// element x of the input ↦ index of its membership profile in system.family
  std::vector<std::size_t> element_to_set;
};

/// Transposes the incidence matrix: dual element i is input set i, and each
/// input element contributes its membership profile as a dual set. Elements
/// with identical profiles collapse to one dual set.
Dualized dualize_with_map(const SetSystem& system);
SetSystem dualize(const SetSystem& system);

/// Deduplicated union (a's sets first). Throws InputError on domain mismatch.
SetSystem union_systems(const SetSystem& a, const SetSystem& b);

/// Structure-preserving map from a system onto another: elements may collapse
/// (twins with identical profiles), sets map bijectively.
struct Isomorphism {
  std::vector<std::size_t> element_map;
  std::vector<std::size_t> set_map;
};

/// True iff x ∈ F_i ⟺ element_map[x] ∈ target_{set_map[i]} for all x, i and
/// set_map is a bijection onto the target family.
bool verify_isomorphism(const SetSystem& source, const SetSystem& target, const Isomorphism& iso);

/// The map S → dualize(dualize(S)). Every element goes to the class of its
/// profile; sets keep their index. Verified before returning; nullopt only if
/// verification fails.
std::optional<Isomorphism> double_dual_isomorphism(const SetSystem& system);

/// Sets are equal as families up to order.
bool same_family(const SetSystem& a, const SetSystem& b);

} // namespace thicket
