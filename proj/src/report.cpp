#include "thicket/report.hpp"

#include <cstdio>
#include <sstream>

#include <boost/crc.hpp>

#include "thicket/errors.hpp"

namespace thicket {

void Report::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_)
    if (k == key) {
      v = value;
      return;
    }
  entries_.emplace_back(key, value);
}

std::optional<std::string> Report::get(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

std::string Report::serialize() const {
  std::string out = std::string(kHeader) + "\n";
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

Report Report::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  Report r;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header) {
      if (line != kHeader) throw InputError("line 1: missing report header");
      header = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find(" = ");
    if (eq == std::string::npos) {
      // `key =` with an empty value
      if (line.size() >= 2 && line.compare(line.size() - 2, 2, " =") == 0) {
        r.set(line.substr(0, line.size() - 2), "");
        continue;
      }
      throw InputError("line " + std::to_string(lineno) + ": expected `key = value`");
    }
    r.set(line.substr(0, eq), line.substr(eq + 3));
  }
  if (!header) throw InputError("empty report");
  return r;
}

std::string crc32_hex(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::size_t> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok[0] == '-') throw InputError("expected an index, found '" + tok + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string serialize_labels(const std::map<Vertex, std::size_t>& labels) {
  if (labels.empty()) return "leaf";
  std::string out;
  for (const auto& [v, l] : labels) {
    if (!out.empty()) out += ' ';
    out += (v.empty() ? "-" : v) + ":" + std::to_string(l);
  }
  return out;
}

std::map<Vertex, std::size_t> parse_labels(const std::string& text) {
  std::map<Vertex, std::size_t> out;
  if (text == "leaf") return out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw InputError("expected vertex:label, found '" + tok + "'");
    Vertex v = tok.substr(0, colon);
    if (v == "-") v.clear();
    auto idx = parse_indices(tok.substr(colon + 1));
    if (idx.size() != 1) throw InputError("bad label in '" + tok + "'");
    out.emplace(v, idx[0]);
  }
  return out;
}

} // namespace thicket
