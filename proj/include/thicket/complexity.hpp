#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thicket/set_system.hpp"
#include "thicket/tree.hpp"

namespace thicket {

/// Default cap on exhaustive labeling enumerations (number of labelings).
inline constexpr std::uint64_t kDefaultEnumerationBudget = 50'000'000;

/// C(n,0) + C(n,1) + ... + C(n,k). Throws std::overflow_error past 64 bits.
std::uint64_t phi(std::size_t n, std::size_t k);

/// 2^n, throwing std::overflow_error for n > 63.
std::uint64_t pow2(std::size_t n);

/// Depth of the deepest full balanced element-labeled tree; -1 for the empty
/// family. Computed by restriction recursion, memoized on subfamily masks.
int thicket_dim(const SetSystem& system);

/// Same quantity, capped at max_depth, by enumerating every balanced
/// labeling. Throws BudgetExceeded when a depth would need more than `budget`
/// labelings or the family has more than 64 sets.
int thicket_dim_bruteforce(const SetSystem& system, std::size_t max_depth,
                           std::uint64_t budget = kDefaultEnumerationBudget);

/// Thicket shatter function: most realized leaves over depth-n element trees.
std::uint64_t rho(const SetSystem& system, std::size_t n);
/// rho(0..n_max) sharing one memo table.
std::vector<std::uint64_t> rho_table(const SetSystem& system, std::size_t n_max);

std::uint64_t rho_bruteforce(const SetSystem& system, std::size_t n,
                             std::uint64_t budget = kDefaultEnumerationBudget);

/// A full balanced tree of the given depth, or nullopt if depth > dim.
std::optional<LabeledTree> full_tree(const SetSystem& system, std::size_t depth);
/// A balanced depth-n tree with rho(n) realized leaves.
LabeledTree rho_witness(const SetSystem& system, std::size_t n);

/// Largest vertex count of a full canonical tree of depth <= d.
std::uint64_t max_full_size(const SetSystem& system, std::size_t d);

/// Least depth of a full canonical tree with at least n vertices; nullopt
/// when no full tree is that large. Throws InputError on an empty family.
std::optional<std::size_t> sigma(const SetSystem& system, std::size_t n);
std::vector<std::optional<std::size_t>> sigma_table(const SetSystem& system, std::size_t n_max);

/// Classical VC dimension (-1 for the empty family).
int vc_dim(const SetSystem& system);
/// Some largest classically shattered subset of the domain.
std::vector<std::size_t> vc_witness(const SetSystem& system);

int dual_dim(const SetSystem& system);
std::uint64_t dual_rho(const SetSystem& system, std::size_t n);

struct ShatterTable {
  int dim = -1;
  std::vector<std::uint64_t> rho;        // index n
  std::vector<std::uint64_t> phi_bounds; // phi(n, dim); empty when dim < 0
};

/// Fills the table and checks both branches of the thicket Sauer-Shelah
/// dichotomy (rho(n) = 2^n up to dim, rho(n) <= phi(n, dim) after) together
/// with rho(n) <= min(2^n, |F|). Any violation throws ConsistencyError.
ShatterTable sauer_shelah_report(const SetSystem& system, std::size_t n_max);

/// Exact thicket density of a finite system: -1 if empty, otherwise 0.
int finite_density(const SetSystem& system);

struct DensityProbe {
  std::string generator_id;
  std::vector<std::size_t> sizes;       // generator parameters
  std::vector<std::size_t> depths;      // n = ceil(log2 size) at which rho is taken
  std::vector<std::uint64_t> rho_values;
  std::vector<int> exact_density;       // per finite instance
  /// Least-squares slope of log rho against log size. An estimate for the
  /// limiting family, never the density of any member.
  std::optional<double> slope_estimate;
  double residual = 0.0;                // root-mean-square fit residual
};

/// Throws InputError for an unknown generator (see generators.hpp).
DensityProbe density_probe(const std::string& generator_id, const std::vector<std::size_t>& sizes);

} // namespace thicket
