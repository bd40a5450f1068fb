#include "thicket/io.hpp"

#include <istream>
#include <sstream>

#include "thicket/errors.hpp"

namespace thicket {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

} // namespace

SetSystem parse_incidence(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0, m = 0;

  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream hs(line);
    long long nn = -1, mm = -1;
    std::string extra;
    if (!(hs >> nn >> mm) || nn < 0 || mm < 0 || (hs >> extra))
      fail(lineno, "expected header `n m` with two nonnegative integers");
    n = static_cast<std::size_t>(nn);
    m = static_cast<std::size_t>(mm);
    break;
  }
  if (lineno == 0) throw InputError("empty input: missing `n m` header");

  std::vector<Bits> rows;
  std::vector<std::string> labels;
  bool any_label = false;
  while (rows.size() < m && std::getline(in, line)) {
    ++lineno;
    std::string body = line, name;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      body = line.substr(0, hash);
      name = trim(line.substr(hash + 1));
    }
    body = trim(body);
    if (body.empty() && n > 0) continue; // blank or comment line
    if (body.size() != n)
      fail(lineno, "row has " + std::to_string(body.size()) + " characters, expected " + std::to_string(n));
    Bits row(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (body[i] == '1') row.set(i);
      else if (body[i] != '0') fail(lineno, std::string("unexpected character '") + body[i] + "'");
    }
    rows.push_back(std::move(row));
    any_label = any_label || !name.empty();
    labels.push_back(name);
  }
  if (rows.size() < m)
    throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(m) + " rows, found " +
                     std::to_string(rows.size()));
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (!t.empty() && t[0] != '#') fail(lineno, "trailing data after " + std::to_string(m) + " rows");
  }
  if (!any_label) labels.clear();
  return SetSystem(n, std::move(rows), std::move(labels));
}

SetSystem parse_incidence_string(const std::string& text) {
  std::istringstream in(text);
  return parse_incidence(in);
}

std::string format_incidence(const SetSystem& system) {
  std::ostringstream out;
  out << system.domain_size() << ' ' << system.size() << '\n';
  for (std::size_t i = 0; i < system.size(); ++i) {
    out << to_charstring(system.set(i));
    if (i < system.labels().size() && !system.labels()[i].empty()) out << " # " << system.labels()[i];
    out << '\n';
  }
  return out.str();
}

InputFormat parse_format_name(const std::string& name) {
  if (name == "incidence") return InputFormat::incidence;
  if (name == "edges") return InputFormat::edges;
  if (name == "auto") return InputFormat::automatic;
  throw InputError("unknown format '" + name + "' (expected incidence, edges or auto)");
}

std::string format_name(InputFormat f) {
  switch (f) {
  case InputFormat::incidence: return "incidence";
  case InputFormat::edges: return "edges";
  case InputFormat::automatic: return "auto";
  }
  return "auto";
}

InputFormat detect_format(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (auto hash = t.find('#'); hash != std::string::npos) t = trim(t.substr(0, hash));
    if (t.empty()) continue;
    if (!header) {
      header = true;
      continue;
    }
    std::istringstream ls(t);
    std::string a, b;
    ls >> a >> b;
    return b.empty() ? InputFormat::incidence : InputFormat::edges;
  }
  return InputFormat::incidence;
}

} // namespace thicket
