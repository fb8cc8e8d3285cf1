#pragma once

// Command-line front end. Exit codes: 0 success (separated, feasible),
// 1 usage/config/input error, 2 not separated or infeasible, 3 blow-up guard.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgres/experiment.hpp"
#include "kgres/resonance.hpp"

namespace kgres::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotSeparated = 2;
inline constexpr int kExitBlowUp = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line-oriented "key = value"; '#' starts a comment. Throws ConfigError on
/// malformed lines and duplicate keys.
std::map<std::string, std::string> parse_config(std::istream& in, const std::string& source = "<config>");
std::map<std::string, std::string> load_config(const std::filesystem::path& path);

struct SimulateConfig {
  double c = 5.0;
  ScanOptions scan;
  sim::ExperimentConfig experiment;
  std::string output;  // JSON record; empty for stdout
  std::string csv;     // time series; empty to skip
};

/// Throws ConfigError on unknown keys or unparsable values.
SimulateConfig simulate_config(const std::map<std::string, std::string>& values);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kgres::cli
