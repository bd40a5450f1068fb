#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thicket/tree.hpp"

namespace thicket {

/// Ordered key-value report. Serialized as `key = value` lines after a fixed
/// header; key order is insertion order, so identical runs give identical
/// bytes.
class Report {
public:
  static constexpr const char* kHeader = "# thicket report v1";

  /// Replaces an existing key in place, otherwise appends.
  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  bool has(const std::string& key) const { return get(key).has_value(); }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string serialize() const;
  /// Throws InputError on a missing header or malformed line.
  static Report parse(const std::string& text);

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string crc32_hex(const std::string& bytes);

template <class Range> std::string join(const Range& r, const std::string& sep = " ") {
  std::string out;
  bool first = true;
  for (const auto& v : r) {
    if (!first) out += sep;
    out += std::to_string(v);
    first = false;
  }
  return out;
}

std::vector<std::size_t> parse_indices(const std::string& text);

/// "-:3 0:1 1:2" (root written as '-'); "leaf" for the single-leaf tree.
std::string serialize_labels(const std::map<Vertex, std::size_t>& labels);
std::map<Vertex, std::size_t> parse_labels(const std::string& text);

} // namespace thicket
