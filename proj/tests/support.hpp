#pragma once

// Oracles written against plain integer masks, sharing no code with the
// library algorithms they check, plus the test corpora.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "thicket/graph.hpp"
#include "thicket/set_system.hpp"

namespace oracle {

using Sets = std::vector<std::uint32_t>;

inline Sets sets_of(const thicket::SetSystem& s) {
  Sets out;
  for (const auto& f : s.family()) {
    std::uint32_t m = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
      if (f.test(x)) m |= 1u << x;
    out.push_back(m);
  }
  return out;
}

inline thicket::SetSystem system_of(std::size_t domain, const Sets& sets) {
  std::vector<thicket::Bits> rows;
  for (auto m : sets) {
    thicket::Bits b(domain);
    for (std::size_t x = 0; x < domain; ++x)
      if (m >> x & 1u) b.set(x);
    rows.push_back(b);
  }
  return thicket::SetSystem(domain, rows);
}

/// Realized leaves of the balanced tree whose element labels are listed in
/// heap order (children of i at 2i+1 = left = member, 2i+2 = right).
inline std::size_t realized(const Sets& sets, const std::vector<std::size_t>& heap, std::size_t depth) {
  std::size_t count = 0;
  for (std::size_t leaf = 0; leaf < (std::size_t{1} << depth); ++leaf) {
    std::uint32_t must_in = 0, must_out = 0;
    std::size_t v = 0;
    for (std::size_t level = 0; level < depth; ++level) {
      const bool right = leaf >> (depth - 1 - level) & 1u;
      (right ? must_out : must_in) |= 1u << heap[v];
      v = 2 * v + 1 + (right ? 1 : 0);
    }
    if (must_in & must_out) continue;
    for (auto f : sets)
      if ((f & must_in) == must_in && (f & must_out) == 0) {
        ++count;
        break;
      }
  }
  return count;
}

/// ρ(depth) by trying every labeling.
inline std::uint64_t rho_enum(const Sets& sets, std::size_t domain, std::size_t depth) {
  if (sets.empty()) return 0;
  if (depth == 0) return 1;
  if (domain == 0) return 0;
  const std::size_t internal = (std::size_t{1} << depth) - 1;
  std::vector<std::size_t> heap(internal, 0);
  std::uint64_t best = 0;
  while (true) {
    best = std::max<std::uint64_t>(best, realized(sets, heap, depth));
    std::size_t i = 0;
    while (i < internal && ++heap[i] == domain) heap[i++] = 0;
    if (i == internal) break;
  }
  return best;
}

/// Largest d <= cap with ρ(d) = 2^d; -1 for the empty family.
inline int dim_enum(const Sets& sets, std::size_t domain, std::size_t cap) {
  if (sets.empty()) return -1;
  int d = 0;
  while (static_cast<std::size_t>(d) < cap && rho_enum(sets, domain, d + 1) == (std::uint64_t{1} << (d + 1))) ++d;
  return d;
}

inline int vc(const Sets& sets, std::size_t domain) {
  if (sets.empty()) return -1;
  int best = 0;
  for (std::uint32_t w = 1; w < (1u << domain); ++w) {
    std::vector<bool> seen(std::size_t{1} << domain, false);
    std::size_t distinct = 0;
    for (auto f : sets) {
      const auto trace = f & w;
      if (!seen[trace]) {
        seen[trace] = true;
        ++distinct;
      }
    }
    const int size = __builtin_popcount(w);
    if (distinct == (std::size_t{1} << size)) best = std::max(best, size);
  }
  return best;
}

/// Sum of a row of Pascal's triangle up to column k.
inline std::uint64_t pascal_sum(std::size_t n, long k) {
  if (k < 0) return 0;
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = next;
  }
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < row.size() && static_cast<long>(j) <= k; ++j) s += row[j];
  return s;
}

/// Most nonnegative leaves over every labeling of the balanced depth-n tree
/// by {-1..k} with children <= parent, and some child < parent whenever the
/// parent is nonnegative, root <= k. Enumerates the labelings one by one.
inline std::size_t integer_tree_max(std::size_t n, int k, std::size_t* labelings = nullptr) {
  const std::size_t vertices = (std::size_t{1} << (n + 1)) - 1;
  std::vector<int> lab(vertices, -1);
  std::size_t best = 0, total = 0;
  std::function<void(std::size_t)> fill = [&](std::size_t v) {
    if (v == vertices) {
      ++total;
      std::size_t leaves = 0;
      for (std::size_t u = (std::size_t{1} << n) - 1; u < vertices; ++u) leaves += lab[u] >= 0;
      best = std::max(best, leaves);
      return;
    }
    const int hi = v == 0 ? k : lab[(v - 1) / 2];
    for (int value = -1; value <= hi; ++value) {
      if (v > 0 && v % 2 == 0) { // right child: check the sibling pair
        const int parent = lab[(v - 1) / 2];
        if (parent >= 0 && std::min(lab[v - 1], value) >= parent) continue;
      }
      lab[v] = value;
      fill(v + 1);
    }
  };
  fill(0);
  if (labelings) *labelings = total;
  return best;
}

} // namespace oracle

namespace corpus {

/// Every family (as a set of subsets) over domains 0..max_domain with at
/// most max_family members.
inline std::vector<thicket::SetSystem> exhaustive(std::size_t max_domain = 4, std::size_t max_family = 8) {
  std::vector<thicket::SetSystem> out;
  for (std::size_t n = 0; n <= max_domain; ++n) {
    const std::size_t subsets = std::size_t{1} << n;
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << subsets); ++choice) {
      if (static_cast<std::size_t>(__builtin_popcountll(choice)) > max_family) continue;
      oracle::Sets sets;
      for (std::uint32_t m = 0; m < subsets; ++m)
        if (choice >> m & 1u) sets.push_back(m);
      out.push_back(oracle::system_of(n, sets));
    }
  }
  return out;
}

inline thicket::SetSystem random_system(std::mt19937& rng, std::size_t domain, std::size_t family) {
  std::uniform_int_distribution<std::uint32_t> pick(0, (1u << domain) - 1);
  oracle::Sets sets;
  for (std::size_t i = 0; i < family; ++i) sets.push_back(domain == 0 ? 0 : pick(rng));
  return oracle::system_of(domain, sets);
}

inline std::vector<thicket::SetSystem> random(std::size_t count, std::size_t max_domain, std::size_t max_family,
                                              std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<thicket::SetSystem> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_domain)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, max_family)(rng);
    out.push_back(random_system(rng, n, m));
  }
  return out;
}

inline thicket::Graph random_graph(std::mt19937& rng, std::size_t n, double p) {
  thicket::Graph g(n);
  std::bernoulli_distribution edge(p);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (edge(rng)) g.add_edge(u, v);
  return g;
}

} // namespace corpus
