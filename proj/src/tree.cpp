#include "thicket/tree.hpp"

#include <algorithm>
#include <sstream>

#include "thicket/errors.hpp"

namespace thicket {

LabeledTree LabeledTree::node(std::size_t label, const LabeledTree& left, const LabeledTree& right) {
  std::map<Vertex, std::size_t> labels{{"", label}};
  for (const auto& [v, l] : left.labels_) labels.emplace("0" + v, l);
  for (const auto& [v, l] : right.labels_) labels.emplace("1" + v, l);
  return LabeledTree(std::move(labels));
}

LabeledTree LabeledTree::from_labels(std::map<Vertex, std::size_t> internal) {
  for (const auto& [v, l] : internal) {
    if (v.find_first_not_of("01") != std::string::npos)
      throw InputError("vertex '" + v + "' is not a binary string");
    if (!v.empty() && !internal.count(v.substr(0, v.size() - 1)))
      throw InputError("vertex '" + v + "' has no labeled parent");
  }
  return LabeledTree(std::move(internal));
}

bool LabeledTree::contains(const Vertex& v) const {
  if (v.empty()) return true;
  if (v.find_first_not_of("01") != std::string::npos) return false;
  return labels_.count(v.substr(0, v.size() - 1)) != 0;
}

std::size_t LabeledTree::label(const Vertex& v) const {
  auto it = labels_.find(v);
  if (it == labels_.end()) throw InputError("vertex '" + v + "' is not an internal vertex");
  return it->second;
}

std::vector<Vertex> LabeledTree::leaves() const {
  if (labels_.empty()) return {""};
  std::vector<Vertex> out;
  out.reserve(labels_.size() + 1);
  for (const auto& [v, l] : labels_)
    for (char c : {'0', '1'}) {
      Vertex child = v + c;
      if (!labels_.count(child)) out.push_back(std::move(child));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> LabeledTree::vertices() const {
  std::vector<Vertex> out{""};
  for (const auto& [v, l] : labels_) {
    out.push_back(v + '0');
    out.push_back(v + '1');
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t LabeledTree::depth() const {
  std::size_t d = 0;
  for (const auto& [v, l] : labels_) d = std::max(d, v.size() + 1);
  return d;
}

bool LabeledTree::is_balanced() const {
  const std::size_t d = depth();
  if (d == 0) return true;
  return labels_.size() == (std::size_t{1} << d) - 1; // prefix-closed, all < d
}

LabeledTree LabeledTree::subtree(const Vertex& v) const {
  if (!contains(v)) throw InputError("vertex '" + v + "' not in tree");
  std::map<Vertex, std::size_t> out;
  for (auto it = labels_.lower_bound(v); it != labels_.end() && it->first.compare(0, v.size(), v) == 0; ++it)
    out.emplace(it->first.substr(v.size()), it->second);
  return LabeledTree(std::move(out));
}

LabeledTree LabeledTree::graft(const Vertex& at, const LabeledTree& sub) const {
  if (!is_leaf(at)) throw InputError("cannot graft at '" + at + "': not a leaf");
  auto out = labels_;
  for (const auto& [v, l] : sub.labels_) out.emplace(at + v, l);
  return LabeledTree(std::move(out));
}

LabeledTree build_balanced(std::size_t depth, const std::map<Vertex, std::size_t>& labeling) {
  return build_balanced(depth, [&](const Vertex& v) {
    auto it = labeling.find(v);
    if (it == labeling.end()) throw InputError("missing label for vertex '" + v + "'");
    return it->second;
  });
}

LabeledTree build_balanced(std::size_t depth, const std::function<std::size_t(const Vertex&)>& labeling) {
  std::map<Vertex, std::size_t> labels;
  std::vector<Vertex> level{""};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Vertex> next;
    for (const auto& v : level) {
      labels.emplace(v, labeling(v));
      next.push_back(v + '0');
      next.push_back(v + '1');
    }
    level = std::move(next);
  }
  return LabeledTree::from_labels(std::move(labels));
}

Vertex trace(const LabeledTree& tree, const Bits& member) {
  Vertex v;
  const auto& labels = tree.internal_labels();
  for (auto it = labels.find(v); it != labels.end(); it = labels.find(v))
    v += member.test(it->second) ? '0' : '1';
  return v;
}

bool solves(const LabeledTree& tree, const Vertex& leaf, const Bits& set) {
  for (std::size_t i = 0; i < leaf.size(); ++i) {
    bool left = leaf[i] == '0';
    if (set.test(tree.label(leaf.substr(0, i))) != left) return false;
  }
  return true;
}

std::optional<std::size_t> is_realized(const LabeledTree& tree, const Vertex& leaf, const SetSystem& system) {
  if (!tree.is_leaf(leaf)) throw InputError("vertex '" + leaf + "' is not a leaf");
  for (std::size_t i = 0; i < system.size(); ++i)
    if (solves(tree, leaf, system.set(i))) return i;
  return std::nullopt;
}

std::size_t realized_leaf_count(const LabeledTree& tree, const SetSystem& system) {
  std::size_t n = 0;
  for (const auto& leaf : tree.leaves())
    if (is_realized(tree, leaf, system)) ++n;
  return n;
}

bool is_full(const LabeledTree& tree, const SetSystem& system) {
  return realized_leaf_count(tree, system) == tree.leaf_count();
}

std::vector<LeafRegion> leaf_regions(const LabeledTree& tree, const SetSystem& family, const Bits& reference) {
  std::vector<LeafRegion> out;
  // Depth-first, left before right, so leaves come out in order.
  std::vector<std::pair<Vertex, Bits>> stack{{"", reference}};
  while (!stack.empty()) {
    auto [v, region] = std::move(stack.back());
    stack.pop_back();
    if (!tree.is_internal(v)) {
      out.push_back({v, std::move(region)});
      continue;
    }
    const std::size_t l = tree.label(v);
    if (l >= family.size())
      throw InputError("vertex '" + v + "' labeled by set " + std::to_string(l) + ", family has " +
                       std::to_string(family.size()));
    Bits in = region & family.set(l);
    Bits out_part = region - family.set(l);
    stack.emplace_back(v + '1', std::move(out_part));
    stack.emplace_back(v + '0', std::move(in));
  }
  return out;
}

std::size_t realized_region_count(const LabeledTree& tree, const SetSystem& family, const Bits& reference) {
  std::size_t n = 0;
  for (const auto& r : leaf_regions(tree, family, reference))
    if (r.region.any()) ++n;
  return n;
}

std::string to_dot(const LabeledTree& tree, const std::function<std::string(std::size_t)>& namer,
                   const SetSystem* system, const std::string& graph_name) {
  std::ostringstream out;
  auto id = [](const Vertex& v) { return "\"v" + v + "\""; };
  out << "digraph " << graph_name << " {\n";
  for (const auto& v : tree.vertices()) {
    out << "  " << id(v) << " [";
    if (tree.is_internal(v)) {
      out << "label=\"" << namer(tree.label(v)) << "\"";
    } else {
      bool filled = system && is_realized(tree, v, *system).has_value();
      out << "label=\"\", shape=circle, width=0.2";
      if (system) out << ", style=" << (filled ? "filled, fillcolor=black" : "solid");
    }
    out << "];\n";
  }
  for (const auto& [v, l] : tree.internal_labels()) {
    out << "  " << id(v) << " -> " << id(v + '0') << " [label=\"in\"];\n";
    out << "  " << id(v) << " -> " << id(v + '1') << " [label=\"out\"];\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace thicket
