#pragma once

#include <cstdint>
#include <string>

#include "weylstrip/grid.hpp"

namespace weylstrip::cli {

struct CommandResult {
  std::string report;  // JSON text, fixed formatting (17 significant digits)
  bool pass = true;
};

// Runs one of: growth-pair, hs-norm, apply, semigroup-check, moyal-check,
// eig-check, region, norm-bound. config_text is the JSON run configuration;
// out_stem prefixes side artifacts (CSV/PGM), empty for defaults in the
// working directory. Throws std::runtime_error on malformed configs.
CommandResult run_command(const std::string& command, const std::string& config_text,
                          std::uint64_t seed, const std::string& out_stem);

// Grid data artifacts: header row, comma separated, axis coordinates first,
// then re, im, all floats at 17 significant digits.
void write_grid_csv(const std::string& path, const GridFunction& f);
GridFunction read_grid_csv(const std::string& path, const GridSpec& expected);

}  // namespace weylstrip::cli
