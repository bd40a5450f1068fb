#include "thicket/generators.hpp"

#include "thicket/decision.hpp"
#include "thicket/errors.hpp"
#include "thicket/graph.hpp"

namespace thicket {

SetSystem powerset_family(std::size_t n) {
  if (n > 20) throw InputError("powerset of " + std::to_string(n) + " elements is too large");
  std::vector<Bits> sets;
  for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) sets.emplace_back(n, code);
  return SetSystem(n, std::move(sets));
}

namespace {

const std::vector<Generator>& registry() {
  static const std::vector<Generator> gens{
      {"empty", "no sets over [0,s)", [](std::size_t s) { return SetSystem(s, {}); }},
      {"singleton", "the single set [0,s)", [](std::size_t s) { return SetSystem(s, {full_bits(s)}); }},
      {"threshold", "{x<=k : k<s} over [0,s)", threshold_family},
      {"residue", "{x : rem(x,k)=l} over [0,s)", residue_family},
      {"equality", "empty set, singletons and [0,s)", atomic_equality_family},
      {"half-graph", "neighborhoods of the half-graph H_s", [](std::size_t s) {
         return neighborhood_system(half_graph(s));
       }},
      {"powerset", "all subsets of [0,s)", powerset_family},
  };
  return gens;
}

} // namespace

std::optional<Generator> find_generator(const std::string& id) {
  for (const auto& g : registry())
    if (g.id == id) return g;
  return std::nullopt;
}

std::vector<std::string> generator_ids() {
  std::vector<std::string> out;
  for (const auto& g : registry()) out.push_back(g.id);
  return out;
}

} // namespace thicket
