#pragma once

#include <iosfwd>
#include <string>

#include "thicket/set_system.hpp"

namespace thicket {

/// Incidence-matrix text: header `n m`, then m rows of n characters over
/// {0,1}, each optionally followed by `# label`. Throws InputError with a
/// 1-based line number on malformed input.
SetSystem parse_incidence(std::istream& in);
SetSystem parse_incidence_string(const std::string& text);

std::string format_incidence(const SetSystem& system);

enum class InputFormat { incidence, edges, automatic };

InputFormat parse_format_name(const std::string& name);
std::string format_name(InputFormat f);

/// Decides between incidence and edge-list text by the first data line: two
/// whitespace-separated integers mean an edge list. With no data lines the
/// text is read as an incidence matrix.
InputFormat detect_format(const std::string& text);

} // namespace thicket
