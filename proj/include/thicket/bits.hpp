#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/functional/hash.hpp>

namespace thicket {

/// Fixed-width bit vector. Used both for subsets of a ground set and for
/// subfamilies (bitmasks over family indices).
using Bits = boost::dynamic_bitset<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return boost::hash_value(b); }
};

inline Bits make_bits(std::size_t width, std::initializer_list<std::size_t> members) {
  Bits b(width);
  for (auto m : members) b.set(m);
  return b;
}

inline Bits make_bits(std::size_t width, const std::vector<std::size_t>& members) {
  Bits b(width);
  for (auto m : members) b.set(m);
  return b;
}

inline Bits full_bits(std::size_t width) {
  Bits b(width);
  b.set();
  return b;
}

inline std::vector<std::size_t> members(const Bits& b) {
  std::vector<std::size_t> out;
  out.reserve(b.count());
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(i);
  return out;
}

/// True iff a ⊆ b. Widths must agree.
inline bool subset_of(const Bits& a, const Bits& b) { return a.is_subset_of(b); }

/// Characteristic string, index 0 first ("0110" for {1,2} over 4 elements).
inline std::string to_charstring(const Bits& b) {
  std::string s(b.size(), '0');
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.test(i)) s[i] = '1';
  return s;
}

/// "{1,2}"
inline std::string to_setstring(const Bits& b) {
  std::string s = "{";
  bool first = true;
  for (auto i : members(b)) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

} // namespace thicket
