#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "thicket/complexity.hpp"
#include "thicket/decision.hpp"
#include "thicket/graph.hpp"
#include "thicket/io.hpp"
#include "thicket/ladder.hpp"
#include "thicket/report.hpp"

namespace thicket {

struct InputFile {
  std::string path;
  std::string text;
};

/// Throws InputError when the file cannot be read.
InputFile read_input(const std::string& path);

struct AnalyzeOptions {
  InputFormat format = InputFormat::automatic;
  std::size_t nmax = 6;
  std::size_t sigma_max = 16;
  std::uint64_t budget = kDefaultLadderBudget; // ladder search nodes
};

/// Dimensions, shatter and sigma tables, longest ladders and the
/// Sauer-Shelah certificate. Ladder searches that run out of budget are
/// reported with their best ladder; the rest of the report is unaffected.
Report cmd_analyze(const InputFile& input, const AnalyzeOptions& options);

struct GraphOptions {
  PivotStrategy pivot = PivotStrategy::lowest;
  std::uint64_t seed = 0;
};

struct TypeTreeOutput {
  Report report;
  std::string dot;
};

TypeTreeOutput cmd_typetree(const InputFile& input, const GraphOptions& options);
Report cmd_eh(const InputFile& input, const GraphOptions& options);

struct LowerBoundOptions {
  std::vector<AtomStructure> structures{AtomStructure::equality, AtomStructure::order};
  std::size_t nmin = 2;
  std::size_t nmax = 4;
  std::size_t depth_cap = 16;
  std::uint64_t budget = kDefaultMemoBudget;
};

Report cmd_lowerbound(const LowerBoundOptions& options);

/// Re-checks every witness in `report` against `input` (ignored for reports
/// without an input). Returns one message per failure.
std::vector<std::string> verify_report(const Report& report, const InputFile& input);

/// Parses and verifies; throws ConsistencyError listing the failures.
Report load_report(const std::string& text, const InputFile& input);

/// Exit codes: 0 success, 1 usage, 2 input error, 3 internal inconsistency.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace thicket
