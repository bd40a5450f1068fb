#include "thicket/set_system.hpp"

#include <unordered_map>
#include <unordered_set>

#include "thicket/errors.hpp"

namespace thicket {

SetSystem::SetSystem(std::size_t domain_size, std::vector<Bits> sets,
                     std::vector<std::string> labels)
    : domain_size_(domain_size) {
  if (!labels.empty() && labels.size() != sets.size())
    throw InputError("label count " + std::to_string(labels.size()) + " does not match set count " +
                     std::to_string(sets.size()));

  std::unordered_set<Bits, BitsHash> seen;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() != domain_size)
      throw InputError("set " + std::to_string(i) + " has width " + std::to_string(sets[i].size()) +
                       ", expected " + std::to_string(domain_size));
    if (!seen.insert(sets[i]).second) {
      ++dropped_;
      continue;
    }
    family_.push_back(std::move(sets[i]));
    if (!labels.empty()) labels_.push_back(std::move(labels[i]));
  }

  columns_.assign(domain_size_, Bits(family_.size()));
  for (std::size_t i = 0; i < family_.size(); ++i)
    for (auto x = family_[i].find_first(); x != Bits::npos; x = family_[i].find_next(x))
      columns_[x].set(i);
}

std::string SetSystem::label(std::size_t i) const {
  if (i < labels_.size()) return labels_[i];
  return "F" + std::to_string(i);
}

std::optional<std::size_t> SetSystem::index_of(const Bits& s) const {
  for (std::size_t i = 0; i < family_.size(); ++i)
    if (family_[i] == s) return i;
  return std::nullopt;
}

SetSystem SetSystem::subfamily(const Bits& mask) const {
  std::vector<Bits> sets;
  std::vector<std::string> labels;
  for (auto i = mask.find_first(); i != Bits::npos; i = mask.find_next(i)) {
    sets.push_back(family_[i]);
    if (!labels_.empty()) labels.push_back(labels_[i]);
  }
  return SetSystem(domain_size_, std::move(sets), std::move(labels));
}

SetSystem build_system(std::size_t domain_size,
                       const std::vector<std::vector<std::size_t>>& sets,
                       std::vector<std::string> labels) {
  std::vector<Bits> rows;
  rows.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Bits row(domain_size);
    for (auto x : sets[i]) {
      if (x >= domain_size)
        throw InputError("set " + std::to_string(i) + ": element " + std::to_string(x) +
                         " out of range for domain size " + std::to_string(domain_size));
      row.set(x);
    }
    rows.push_back(std::move(row));
  }
  return SetSystem(domain_size, std::move(rows), std::move(labels));
}

SetSystem restrict(const SetSystem& system, std::size_t x, Sign keep) {
  if (x >= system.domain_size())
    throw InputError("element " + std::to_string(x) + " out of range for domain size " +
                     std::to_string(system.domain_size()));
  Bits mask = system.containing(x);
  if (keep == Sign::out) mask.flip();
  return system.subfamily(mask);
}

Dualized dualize_with_map(const SetSystem& system) {
  const std::size_t m = system.size();
  std::vector<Bits> profiles;
  std::vector<std::size_t> element_to_set(system.domain_size());
  std::unordered_map<Bits, std::size_t, BitsHash> index;
  for (std::size_t x = 0; x < system.domain_size(); ++x) {
    const Bits& col = system.containing(x);
    auto [it, inserted] = index.emplace(col, profiles.size());
    if (inserted) profiles.push_back(col);
    element_to_set[x] = it->second;
  }
  return {SetSystem(m, std::move(profiles)), std::move(element_to_set)};
}

SetSystem dualize(const SetSystem& system) { return dualize_with_map(system).system; }

SetSystem union_systems(const SetSystem& a, const SetSystem& b) {
  if (a.domain_size() != b.domain_size())
    throw InputError("cannot unite systems over domains of size " + std::to_string(a.domain_size()) +
                     " and " + std::to_string(b.domain_size()));
  std::vector<Bits> sets = a.family();
  sets.insert(sets.end(), b.family().begin(), b.family().end());
  return SetSystem(a.domain_size(), std::move(sets));
}

bool verify_isomorphism(const SetSystem& source, const SetSystem& target, const Isomorphism& iso) {
  if (iso.element_map.size() != source.domain_size() || iso.set_map.size() != source.size())
    return false;
  if (source.size() != target.size()) return false;
  std::vector<bool> hit(target.size(), false);
  for (auto j : iso.set_map) {
    if (j >= target.size() || hit[j]) return false;
    hit[j] = true;
  }
  for (auto y : iso.element_map)
    if (y >= target.domain_size()) return false;
  for (std::size_t i = 0; i < source.size(); ++i)
    for (std::size_t x = 0; x < source.domain_size(); ++x)
      if (source.contains(i, x) != target.contains(iso.set_map[i], iso.element_map[x])) return false;
  return true;
}

std::optional<Isomorphism> double_dual_isomorphism(const SetSystem& system) {
  Dualized once = dualize_with_map(system);
  SetSystem twice = dualize(once.system);
  // Dual-dual elements are the dual sets (element profiles); dual-dual sets
  // are the dual elements, i.e. the original set indices, in order.
  Isomorphism iso;
  iso.element_map = once.element_to_set;
  iso.set_map.resize(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) {
    auto j = twice.index_of([&] {
      Bits row(twice.domain_size());
      for (std::size_t p = 0; p < once.system.size(); ++p)
        if (once.system.contains(p, i)) row.set(p);
      return row;
    }());
    if (!j) return std::nullopt;
    iso.set_map[i] = *j;
  }
  if (!verify_isomorphism(system, twice, iso)) return std::nullopt;
  return iso;
}

bool same_family(const SetSystem& a, const SetSystem& b) {
  if (a.domain_size() != b.domain_size() || a.size() != b.size()) return false;
  std::unordered_set<Bits, BitsHash> sa(a.family().begin(), a.family().end());
  for (const auto& s : b.family())
    if (!sa.count(s)) return false;
  return true;
}

} // namespace thicket
