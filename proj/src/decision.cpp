#include "thicket/decision.hpp"

#include <unordered_map>
#include <unordered_set>

#include "thicket/errors.hpp"

namespace thicket {

std::optional<std::vector<Vertex>> computes(const LabeledTree& tree, const ComputationInstance& instance) {
  std::vector<Vertex> selected;
  for (const auto& [leaf, region] : leaf_regions(tree, instance.label_family, instance.reference)) {
    if (region.is_subset_of(instance.target)) {
      if (region.any()) selected.push_back(leaf);
    } else if (region.intersects(instance.target)) {
      return std::nullopt;
    }
  }
  return selected;
}

namespace {

class Composer {
public:
  Composer(const SetSystem& outer_family, const std::map<std::size_t, LabeledTree>& computing,
           const SetSystem& inner_family, const Bits& y)
      : outer_family_(outer_family), computing_(computing), inner_family_(inner_family), y_(y) {}

  LabeledTree star(const LabeledTree& t) {
    if (!t.is_internal("")) return LabeledTree::leaf();
    const std::size_t g = t.label("");
    const auto& [tg, inside] = computing_tree(g);
    const LabeledTree left = star(t.subtree("0"));
    const LabeledTree right = star(t.subtree("1"));
    LabeledTree out = tg;
    for (const auto& [leaf, in_g] : inside) out = out.graft(leaf, in_g ? left : right);
    return out;
  }

private:
  /// T_G together with, per leaf, whether its region over y lies inside G.
  const std::pair<LabeledTree, std::vector<std::pair<Vertex, bool>>>& computing_tree(std::size_t g) {
    if (auto it = cache_.find(g); it != cache_.end()) return it->second;
    auto found = computing_.find(g);
    if (found == computing_.end()) throw InputError("no computing tree for outer label G" + std::to_string(g));
    if (g >= outer_family_.size()) throw InputError("outer label G" + std::to_string(g) + " out of range");
    const Bits& target = outer_family_.set(g);
    const ComputationInstance inst{inner_family_, target, y_};
    if (!computes(found->second, inst))
      throw InputError("computing tree for G" + std::to_string(g) + " does not compute it over y");
    std::vector<std::pair<Vertex, bool>> inside;
    for (const auto& [leaf, region] : leaf_regions(found->second, inner_family_, y_))
      inside.emplace_back(leaf, region.is_subset_of(target));
    return cache_.emplace(g, std::make_pair(found->second, std::move(inside))).first->second;
  }

  const SetSystem& outer_family_;
  const std::map<std::size_t, LabeledTree>& computing_;
  const SetSystem& inner_family_;
  const Bits& y_;
  std::map<std::size_t, std::pair<LabeledTree, std::vector<std::pair<Vertex, bool>>>> cache_;
};

} // namespace

LabeledTree compose(const LabeledTree& outer, const SetSystem& outer_family,
                    const std::map<std::size_t, LabeledTree>& computing_trees, const SetSystem& inner_family,
                    const Bits& y) {
  if (outer_family.domain_size() != inner_family.domain_size() || y.size() != inner_family.domain_size())
    throw InputError("compose: outer family, inner family and y must share one domain");
  return Composer(outer_family, computing_trees, inner_family, y).star(outer);
}

bool refines(const std::vector<LeafRegion>& fine, const std::vector<LeafRegion>& coarse) {
  for (const auto& f : fine) {
    if (f.region.none()) continue;
    bool inside = false;
    for (const auto& c : coarse)
      if (f.region.is_subset_of(c.region)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

SetSystem threshold_family(std::size_t n) {
  std::vector<Bits> sets;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) {
    Bits s(n);
    for (std::size_t x = 0; x <= k; ++x) s.set(x);
    sets.push_back(std::move(s));
    labels.push_back("x<=" + std::to_string(k));
  }
  return SetSystem(n, std::move(sets), std::move(labels));
}

SetSystem residue_family(std::size_t n) {
  std::vector<Bits> sets;
  std::vector<std::string> labels;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t l = 0; l < k; ++l) {
      Bits s(n);
      for (std::size_t x = l; x < n; x += k) s.set(x);
      sets.push_back(std::move(s));
      labels.push_back("rem(x," + std::to_string(k) + ")=" + std::to_string(l));
    }
  return SetSystem(n, std::move(sets), std::move(labels));
}

SetSystem atomic_equality_family(std::size_t n) {
  std::vector<Bits> sets{Bits(n)};
  std::vector<std::string> labels{"false"};
  for (std::size_t x = 0; x < n; ++x) {
    sets.push_back(make_bits(n, {x}));
    labels.push_back("x=" + std::to_string(x));
  }
  sets.push_back(full_bits(n));
  labels.push_back("true");
  return SetSystem(n, std::move(sets), std::move(labels));
}

std::size_t flatten(const std::vector<std::size_t>& point, std::size_t n) {
  std::size_t idx = 0;
  for (auto c : point) {
    if (c >= n) throw InputError("coordinate " + std::to_string(c) + " outside [0," + std::to_string(n) + ")");
    idx = idx * n + c;
  }
  return idx;
}

Bits order_relation(std::size_t n) {
  Bits r(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) r.set(flatten({x, y}, n));
  return r;
}

Bits remainder_relation(std::size_t n) {
  Bits r(n * n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 1; y < n; ++y) r.set(flatten({x, y, x % y}, n));
  return r;
}

Bits slice(const Bits& set, std::size_t n, const std::vector<std::size_t>& fixed) {
  std::size_t width = n;
  for (std::size_t i = 0; i < fixed.size(); ++i) width *= n;
  if (set.size() != width) throw InputError("slice: set width does not match the box");
  Bits out(n);
  std::vector<std::size_t> point{0};
  point.insert(point.end(), fixed.begin(), fixed.end());
  for (std::size_t x = 0; x < n; ++x) {
    point[0] = x;
    if (set.test(flatten(point, n))) out.set(x);
  }
  return out;
}

SetSystem slice_family(const SetSystem& box_family, std::size_t n, const std::vector<std::size_t>& fixed) {
  std::vector<Bits> sets;
  for (const auto& s : box_family.family()) sets.push_back(slice(s, n, fixed));
  return SetSystem(n, std::move(sets));
}

ShatterWitness residue_shatter_tree(std::size_t n) {
  if (n > 20) throw InputError("residue_shatter_tree: depth " + std::to_string(n) + " too large");
  const std::size_t size = std::size_t{1} << n;
  ShatterWitness w{residue_family(size), {}, {}};
  auto residue = [](const Vertex& v) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == '1') c |= std::size_t{1} << i;
    return c;
  };
  w.tree = build_balanced(n, [&](const Vertex& v) {
    const std::size_t modulus = std::size_t{2} << v.size();
    Bits s(size);
    for (std::size_t x = residue(v); x < size; x += modulus) s.set(x);
    return *w.family.index_of(s);
  });
  for (const auto& leaf : w.tree.leaves()) w.leaf_element.push_back(residue(leaf));
  return w;
}

ShatterWitness threshold_shatter_tree(std::size_t n) {
  if (n > 20) throw InputError("threshold_shatter_tree: depth " + std::to_string(n) + " too large");
  const std::size_t size = std::size_t{1} << n;
  ShatterWitness w{threshold_family(size), {}, {}};
  auto low_end = [n](const Vertex& v) {
    std::size_t lo = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == '1') lo += std::size_t{1} << (n - 1 - i);
    return lo;
  };
  // Left keeps the lower half of the interval, so left must mean "x <= k".
  w.tree = build_balanced(n, [&](const Vertex& v) {
    const std::size_t half = std::size_t{1} << (n - 1 - v.size());
    return low_end(v) + half - 1;
  });
  for (const auto& leaf : w.tree.leaves()) w.leaf_element.push_back(low_end(leaf));
  return w;
}

bool verify_shatter(const ShatterWitness& w) {
  if (!w.tree.is_balanced()) return false;
  const std::size_t size = std::size_t{1} << w.tree.depth();
  if (w.family.domain_size() != size) return false;
  const auto regions = leaf_regions(w.tree, w.family, full_bits(size));
  if (regions.size() != size || w.leaf_element.size() != size) return false;
  for (std::size_t i = 0; i < size; ++i) {
    if (w.leaf_element[i] >= size) return false;
    if (regions[i].region != make_bits(size, {w.leaf_element[i]})) return false;
  }
  return true;
}

namespace {

class DepthSearch {
public:
  DepthSearch(const ComputationInstance& inst, std::uint64_t budget) : inst_(inst), budget_(budget) {
    find_blocks();
  }

  bool within(const Bits& raw, std::size_t d) {
    if (raw.is_subset_of(inst_.target) || !raw.intersects(inst_.target)) return true;
    if (d == 0) return false;
    const Bits region = canonical(raw);
    auto it = memo_.find(region);
    if (it != memo_.end()) {
      if (it->second.success_from <= d) return true;
      if (it->second.fail_upto >= static_cast<long long>(d)) return false;
    } else {
      if (memo_.size() >= budget_)
        throw BudgetExceeded("decision-depth memo exceeded " + std::to_string(budget_) + " regions");
      it = memo_.emplace(region, Bounds{}).first;
    }
    bool ok = false;
    for (const auto& label : inst_.label_family.family()) {
      Bits in = region & label;
      if (in.none() || in == region) continue; // splits nothing
      if (within(in, d - 1) && within(region - label, d - 1)) {
        ok = true;
        break;
      }
    }
    auto& b = memo_.at(region);
    if (ok) b.success_from = std::min(b.success_from, d);
    else b.fail_upto = std::max(b.fail_upto, static_cast<long long>(d));
    return ok;
  }

private:
  struct Bounds {
    long long fail_upto = -1;
    std::size_t success_from = ~std::size_t{0};
  };
  // Points x, y are swappable when they agree on the target and exchanging
  // them maps every label to a label. Swappability is an equivalence, and
  // any permutation inside a class is a symmetry of the instance, so the
  // least depth of a region depends only on how many points of each class
  // it holds. Regions are stored with those points packed to the front.
  void find_blocks() {
    const SetSystem& f = inst_.label_family;
    const std::size_t n = f.domain_size();
    for (const auto& l : f.family()) labels_.insert(l);
    std::vector<std::size_t> reps;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t x = 0; x < n; ++x) {
      bool placed = false;
      for (std::size_t b = 0; b < reps.size() && !placed; ++b) {
        if (swappable(reps[b], x)) {
          members[b].push_back(x);
          placed = true;
        }
      }
      if (!placed) {
        reps.push_back(x);
        members.push_back({x});
      }
    }
    for (const auto& m : members) {
      if (m.size() == 1) continue;
      Block b{Bits(n), {}};
      Bits prefix(n);
      b.prefix.push_back(prefix);
      for (auto x : m) {
        b.mask.set(x);
        prefix.set(x);
        b.prefix.push_back(prefix);
      }
      blocks_.push_back(std::move(b));
    }
  }

  bool swappable(std::size_t x, std::size_t y) const {
    if (inst_.target.test(x) != inst_.target.test(y)) return false;
    const SetSystem& f = inst_.label_family;
    if (f.containing(x).count() != f.containing(y).count()) return false;
    const Bits differ = f.containing(x) ^ f.containing(y);
    for (auto i = differ.find_first(); i != Bits::npos; i = differ.find_next(i)) {
      Bits image = f.set(i);
      image.flip(x);
      image.flip(y);
      if (!labels_.count(image)) return false;
    }
    return true;
  }

  Bits canonical(const Bits& region) const {
    Bits out = region;
    for (const auto& b : blocks_) {
      out -= b.mask;
      out |= b.prefix[(region & b.mask).count()];
    }
    return out;
  }

  const ComputationInstance& inst_;
  std::uint64_t budget_;
  struct Block {
    Bits mask;
    std::vector<Bits> prefix; // prefix[c]: the first c members of the block
  };
  std::vector<Block> blocks_;
  std::unordered_set<Bits, BitsHash> labels_;
  std::unordered_map<Bits, Bounds, BitsHash> memo_;
};

} // namespace

std::optional<std::size_t> min_decision_depth(const ComputationInstance& instance, std::size_t depth_cap,
                                              std::uint64_t memo_budget) {
  const std::size_t n = instance.label_family.domain_size();
  if (instance.target.size() != n || instance.reference.size() != n)
    throw InputError("target and reference must be subsets of the label family's domain");
  DepthSearch search(instance, memo_budget);
  for (std::size_t d = 0; d <= depth_cap; ++d)
    if (search.within(instance.reference, d)) return d;
  return std::nullopt;
}

AtomStructure parse_structure(const std::string& name) {
  if (name == "equality") return AtomStructure::equality;
  if (name == "order") return AtomStructure::order;
  throw InputError("unknown structure '" + name + "' (expected equality or order)");
}

std::string structure_name(AtomStructure s) { return s == AtomStructure::equality ? "equality" : "order"; }

std::vector<LowerBoundRow> lower_bound_experiment(AtomStructure structure, const std::vector<std::size_t>& ns,
                                                  std::size_t depth_cap, std::uint64_t memo_budget) {
  std::vector<LowerBoundRow> rows;
  for (auto n : ns) {
    if (n == 0) throw InputError("lower-bound experiment needs n >= 1");
    if (n > kLowerBoundMaxN) {
      rows.push_back({n, std::nullopt, false, true});
      continue;
    }
    const std::size_t size = std::size_t{1} << n;
    ComputationInstance inst{structure == AtomStructure::equality ? atomic_equality_family(size)
                                                                  : threshold_family(size),
                             Bits(size), full_bits(size)};
    for (std::size_t x = 0; x < size / 2; ++x) inst.target.set(x);
    LowerBoundRow row{n, std::nullopt, false, false};
    try {
      row.depth = min_decision_depth(inst, depth_cap, memo_budget);
    } catch (const BudgetExceeded&) {
      row.budget_exhausted = true;
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace thicket
