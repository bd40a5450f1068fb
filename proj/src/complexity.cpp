#include "thicket/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "thicket/errors.hpp"
#include "thicket/generators.hpp"

namespace thicket {
namespace {

/// Restriction recursion over subfamily masks. One instance per public call;
/// the memo tables never outlive it.
class Restrictions {
public:
  explicit Restrictions(const SetSystem& s) : sys_(s) {}

  struct Split {
    Bits in, out;
  };

  /// Elements that split `mask` into two nonempty parts.
  template <class F> void for_each_split(const Bits& mask, F&& f) const {
    for (std::size_t x = 0; x < sys_.domain_size(); ++x) {
      Bits in = mask & sys_.containing(x);
      if (in.none() || in == mask) continue;
      if (!f(x, Split{in, mask - in})) return;
    }
  }

  bool has_non_splitting(const Bits& mask) const {
    for (std::size_t x = 0; x < sys_.domain_size(); ++x) {
      Bits in = mask & sys_.containing(x);
      if (in.none() || in == mask) return true;
    }
    return false;
  }

  int dim(const Bits& mask) {
    if (mask.none()) return -1;
    if (auto it = dim_.find(mask); it != dim_.end()) return it->second;
    const int ceiling = static_cast<int>(std::log2(static_cast<double>(mask.count())) + 1e-9);
    int best = 0;
    for_each_split(mask, [&](std::size_t, const Split& s) {
      int a = dim(s.in);
      if (a + 1 <= best) return true;
      int b = dim(s.out);
      best = std::max(best, 1 + std::min(a, b));
      return best < ceiling;
    });
    dim_.emplace(mask, best);
    return best;
  }

  std::uint64_t rho(const Bits& mask, std::size_t n) {
    if (mask.none()) return 0;
    if (n == 0) return 1;
    auto& row = rho_[mask];
    if (row.size() > n && row[n] != kUnknown) return row[n];
    const std::uint64_t cap = n >= 63 ? mask.count() : std::min<std::uint64_t>(pow2(n), mask.count());
    std::uint64_t best = 0;
    if (has_non_splitting(mask)) best = rho(mask, n - 1);
    if (best < cap)
      for_each_split(mask, [&](std::size_t, const Split& s) {
        best = std::max(best, rho(s.in, n - 1) + rho(s.out, n - 1));
        return best < cap;
      });
    auto& slot = rho_[mask]; // rehash may have moved `row`
    if (slot.size() <= n) slot.resize(n + 1, kUnknown);
    slot[n] = best;
    return best;
  }

  std::uint64_t msz(const Bits& mask, std::size_t d) {
    if (d == 0) return 1;
    auto& row = msz_[mask];
    if (row.size() > d && row[d] != kUnknown) return row[d];
    std::uint64_t best = 1;
    for_each_split(mask, [&](std::size_t, const Split& s) {
      best = std::max(best, 1 + msz(s.in, d - 1) + msz(s.out, d - 1));
      return true;
    });
    auto& slot = msz_[mask];
    if (slot.size() <= d) slot.resize(d + 1, kUnknown);
    slot[d] = best;
    return best;
  }

  std::optional<LabeledTree> full(const Bits& mask, std::size_t depth) {
    if (dim(mask) < static_cast<int>(depth)) return std::nullopt;
    if (depth == 0) return LabeledTree::leaf();
    std::optional<LabeledTree> out;
    for_each_split(mask, [&](std::size_t x, const Split& s) {
      const int need = static_cast<int>(depth) - 1;
      if (dim(s.in) < need || dim(s.out) < need) return true;
      out = LabeledTree::node(x, *full(s.in, depth - 1), *full(s.out, depth - 1));
      return false;
    });
    return out;
  }

  LabeledTree rho_tree(const Bits& mask, std::size_t n) {
    if (n == 0) return LabeledTree::leaf();
    const std::uint64_t target = rho(mask, n);
    if (sys_.domain_size() == 0)
      throw InputError("no element-labeled tree of positive depth exists over an empty domain");
    if (mask.none()) return build_balanced(n, [](const Vertex&) { return std::size_t{0}; });
    std::optional<LabeledTree> out;
    for_each_split(mask, [&](std::size_t x, const Split& s) {
      if (rho(s.in, n - 1) + rho(s.out, n - 1) != target) return true;
      out = LabeledTree::node(x, rho_tree(s.in, n - 1), rho_tree(s.out, n - 1));
      return false;
    });
    if (out) return *out;
    // Only a non-splitting element attains the maximum.
    for (std::size_t x = 0; x < sys_.domain_size(); ++x) {
      Bits in = mask & sys_.containing(x);
      if (!in.none() && in != mask) continue;
      Bits out_part = mask - in;
      return LabeledTree::node(x, rho_tree(in, n - 1), rho_tree(out_part, n - 1));
    }
    throw ConsistencyError("rho witness: no element attains rho");
  }

private:
  static constexpr std::uint64_t kUnknown = ~std::uint64_t{0};
  const SetSystem& sys_;
  std::unordered_map<Bits, int, BitsHash> dim_;
  std::unordered_map<Bits, std::vector<std::uint64_t>, BitsHash> rho_;
  std::unordered_map<Bits, std::vector<std::uint64_t>, BitsHash> msz_;
};

/// Exhaustive enumeration of balanced labelings, in heap order (vertex k has
/// children 2k, 2k+1). Region masks over the family are propagated as the
/// labels are fixed; a leaf is realized iff its mask is nonzero.
class LabelingEnumerator {
public:
  LabelingEnumerator(const SetSystem& s, std::size_t depth, std::uint64_t budget)
      : depth_(depth), internal_(pow2(depth) - 1), columns_(s.domain_size()) {
    if (s.size() > 64) throw BudgetExceeded("brute-force enumeration supports at most 64 sets");
    const double labelings = static_cast<double>(internal_) * std::log2(std::max<double>(1, s.domain_size()));
    if (s.domain_size() > 1 && labelings > std::log2(static_cast<double>(budget)))
      throw BudgetExceeded("enumerating depth-" + std::to_string(depth) + " labelings over " +
                           std::to_string(s.domain_size()) + " elements exceeds budget " + std::to_string(budget));
    for (std::size_t x = 0; x < s.domain_size(); ++x)
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s.contains(i, x)) columns_[x] |= std::uint64_t{1} << i;
    all_ = s.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s.size()) - 1;
    cap_ = std::min<std::uint64_t>(pow2(depth), s.size());
  }

  /// Maximum number of nonempty leaf regions.
  std::uint64_t max_realized() {
    if (all_ == 0) return 0;
    if (depth_ == 0) return 1;
    if (columns_.empty()) return 0;
    mask_.assign(2 * (internal_ + 1), 0);
    mask_[1] = all_;
    best_ = 0;
    visit(1);
    return best_;
  }

private:
  void visit(std::size_t k) {
    if (best_ == cap_) return;
    if (k > internal_) {
      std::uint64_t n = 0;
      for (std::size_t leaf = internal_ + 1; leaf <= 2 * internal_ + 1; ++leaf) n += mask_[leaf] != 0;
      best_ = std::max(best_, n);
      return;
    }
    for (auto col : columns_) {
      mask_[2 * k] = mask_[k] & col;
      mask_[2 * k + 1] = mask_[k] & ~col;
      visit(k + 1);
    }
  }

  std::size_t depth_;
  std::uint64_t internal_;
  std::vector<std::uint64_t> columns_;
  std::vector<std::uint64_t> mask_;
  std::uint64_t all_ = 0, cap_ = 0, best_ = 0;
};

} // namespace

std::uint64_t pow2(std::size_t n) {
  if (n > 63) throw std::overflow_error("2^" + std::to_string(n) + " exceeds 64 bits");
  return std::uint64_t{1} << n;
}

std::uint64_t phi(std::size_t n, std::size_t k) {
  unsigned __int128 binom = 1, sum = 0;
  const auto limit = static_cast<unsigned __int128>(~std::uint64_t{0});
  for (std::size_t i = 0; i <= std::min(n, k); ++i) {
    sum += binom;
    if (sum > limit) throw std::overflow_error("phi(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds 64 bits");
    binom = binom * (n - i) / (i + 1);
    if (binom > limit && i + 1 <= std::min(n, k))
      throw std::overflow_error("phi(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(sum);
}

int thicket_dim(const SetSystem& system) { return Restrictions(system).dim(system.all_sets()); }

int thicket_dim_bruteforce(const SetSystem& system, std::size_t max_depth, std::uint64_t budget) {
  if (system.empty()) return -1;
  for (std::size_t d = 1; d <= max_depth; ++d)
    if (LabelingEnumerator(system, d, budget).max_realized() != pow2(d)) return static_cast<int>(d) - 1;
  return static_cast<int>(max_depth);
}

std::uint64_t rho(const SetSystem& system, std::size_t n) { return Restrictions(system).rho(system.all_sets(), n); }

std::vector<std::uint64_t> rho_table(const SetSystem& system, std::size_t n_max) {
  Restrictions r(system);
  std::vector<std::uint64_t> out;
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(r.rho(system.all_sets(), n));
  return out;
}

std::uint64_t rho_bruteforce(const SetSystem& system, std::size_t n, std::uint64_t budget) {
  return LabelingEnumerator(system, n, budget).max_realized();
}

std::optional<LabeledTree> full_tree(const SetSystem& system, std::size_t depth) {
  return Restrictions(system).full(system.all_sets(), depth);
}

LabeledTree rho_witness(const SetSystem& system, std::size_t n) {
  return Restrictions(system).rho_tree(system.all_sets(), n);
}

std::uint64_t max_full_size(const SetSystem& system, std::size_t d) {
  if (system.empty()) return 0;
  return Restrictions(system).msz(system.all_sets(), d);
}

std::optional<std::size_t> sigma(const SetSystem& system, std::size_t n) {
  auto table = sigma_table(system, n);
  return table.back();
}

std::vector<std::optional<std::size_t>> sigma_table(const SetSystem& system, std::size_t n_max) {
  if (system.empty()) throw InputError("sigma is undefined for an empty family");
  Restrictions r(system);
  const Bits all = system.all_sets();
  // A full canonical tree has at most |F| leaves, hence depth at most |F| - 1.
  std::vector<std::uint64_t> sizes;
  for (std::size_t d = 0; d < system.size(); ++d) {
    sizes.push_back(r.msz(all, d));
    if (sizes.back() >= n_max) break;
  }
  std::vector<std::optional<std::size_t>> out(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto it = std::find_if(sizes.begin(), sizes.end(), [&](std::uint64_t s) { return s >= n; });
    if (it != sizes.end()) out[n] = static_cast<std::size_t>(it - sizes.begin());
  }
  return out;
}

namespace {

bool shatters(const SetSystem& s, const std::vector<std::size_t>& subset) {
  std::vector<bool> seen(std::size_t{1} << subset.size(), false);
  std::size_t distinct = 0;
  for (const auto& set : s.family()) {
    std::size_t code = 0;
    for (std::size_t j = 0; j < subset.size(); ++j)
      if (set.test(subset[j])) code |= std::size_t{1} << j;
    if (!seen[code]) {
      seen[code] = true;
      ++distinct;
    }
  }
  return distinct == seen.size();
}

bool find_shattered(const SetSystem& s, std::size_t size, std::size_t start, std::vector<std::size_t>& chosen) {
  if (chosen.size() == size) return shatters(s, chosen);
  for (std::size_t x = start; x + (size - chosen.size()) <= s.domain_size(); ++x) {
    chosen.push_back(x);
    if (find_shattered(s, size, x + 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

} // namespace

std::vector<std::size_t> vc_witness(const SetSystem& system) {
  if (system.empty()) return {};
  std::vector<std::size_t> best;
  // Shattering is hereditary, so sizes can be tried in increasing order.
  for (std::size_t size = 1; pow2(size) <= system.size() && size <= system.domain_size(); ++size) {
    std::vector<std::size_t> chosen;
    if (!find_shattered(system, size, 0, chosen)) break;
    best = chosen;
  }
  return best;
}

int vc_dim(const SetSystem& system) {
  if (system.empty()) return -1;
  return static_cast<int>(vc_witness(system).size());
}

int dual_dim(const SetSystem& system) { return thicket_dim(dualize(system)); }

std::uint64_t dual_rho(const SetSystem& system, std::size_t n) { return rho(dualize(system), n); }

ShatterTable sauer_shelah_report(const SetSystem& system, std::size_t n_max) {
  ShatterTable t;
  t.dim = thicket_dim(system);
  t.rho = rho_table(system, n_max);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const std::uint64_t r = t.rho[n];
    auto fail = [&](const std::string& what) {
      throw ConsistencyError("Sauer-Shelah check failed at n=" + std::to_string(n) + ": " + what);
    };
    if (n < 64 && r > std::min<std::uint64_t>(pow2(n), system.size())) fail("rho exceeds min(2^n, |F|)");
    if (t.dim < 0) {
      if (r != 0) fail("empty family with nonzero rho");
      continue;
    }
    const std::uint64_t bound = phi(n, static_cast<std::size_t>(t.dim));
    t.phi_bounds.push_back(bound);
    if (n <= static_cast<std::size_t>(t.dim) && r != pow2(n)) fail("rho(n) != 2^n below the dimension");
    if (r > bound) fail("rho(n) exceeds phi(n, dim)");
  }
  return t;
}

int finite_density(const SetSystem& system) { return system.empty() ? -1 : 0; }

DensityProbe density_probe(const std::string& generator_id, const std::vector<std::size_t>& sizes) {
  auto gen = find_generator(generator_id);
  if (!gen) throw InputError("unknown generator '" + generator_id + "'");
  DensityProbe p;
  p.generator_id = generator_id;
  p.sizes = sizes;
  std::vector<double> xs, ys;
  for (auto s : sizes) {
    SetSystem sys = gen->make(s);
    std::size_t n = 0;
    while (n < 63 && pow2(n) < s) ++n;
    std::uint64_t r = rho(sys, n);
    p.depths.push_back(n);
    p.rho_values.push_back(r);
    p.exact_density.push_back(finite_density(sys));
    if (r > 0 && s > 0) {
      xs.push_back(std::log(static_cast<double>(s)));
      ys.push_back(std::log(static_cast<double>(r)));
    }
  }
  const std::size_t m = xs.size();
  if (m >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < m; ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx > 0) {
      const double slope = sxy / sxx, icept = my - slope * mx;
      double ss = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double e = ys[i] - (icept + slope * xs[i]);
        ss += e * e;
      }
      p.slope_estimate = slope;
      p.residual = std::sqrt(ss / m);
    }
  }
  return p;
}

} // namespace thicket
