#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "emt/solvers.hpp"

namespace emt {

struct CliConfig {
  std::string subcommand;
  std::optional<std::string> test_case;
  std::vector<std::string> instances;  // "family:path" entries, used instead of a test case
  std::string solver = "at-mfcga";     // experiment also accepts "all" or a comma list
  std::uint64_t seed = 1;
  std::size_t reps = 20;
  std::size_t jobs = 1;
  std::string out_dir = "out";
  std::string instance_dir;  // empty: $EMT_INSTANCE_DIR or data/instances
  std::optional<std::string> control;
  SolverConfig solver_config;
  // SolverConfig keys given explicitly; the rest follow the size-class defaults.
  std::set<std::string> overridden;
};

// Keys accepted in config files; each also exists as a --flag of the same
// name with '_' replaced by '-'.
const std::vector<std::string>& config_keys();

// Parses and stores one value. Throws ConfigError naming the key on an
// unknown key, a malformed value or an out-of-range value.
void set_config_value(CliConfig& config, const std::string& key, const std::string& value);

// Flat "key = value" lines; '#' starts a comment. Errors carry the line number.
void read_config(std::istream& in, CliConfig& config);
CliConfig load_config(const std::filesystem::path& path);

// SolverConfig for a test case of the given size: size-class population and
// grid unless overridden, plus the seed.
SolverConfig resolve_solver_config(const CliConfig& config, SizeClass size);

// Every key with its effective value, one per line, plus a format-version stamp.
std::string effective_config_text(const CliConfig& config, const SolverConfig& solver_config);

}  // namespace emt
