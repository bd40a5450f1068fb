#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thicket/set_system.hpp"

namespace thicket {

/// A parametric family of finite set systems, used to probe asymptotics.
struct Generator {
  std::string id;
  std::string description;
  std::function<SetSystem(std::size_t)> make;
};

/// Known ids: empty, singleton, threshold, residue, equality, half-graph,
/// powerset.
std::optional<Generator> find_generator(const std::string& id);
std::vector<std::string> generator_ids();

/// All 2^n subsets of [0, n), in binary counting order.
SetSystem powerset_family(std::size_t n);

} // namespace thicket
