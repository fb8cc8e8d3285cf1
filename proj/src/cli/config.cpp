#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>

#include "kgres/cli.hpp"

namespace kgres::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE) throw ConfigError("bad number for '" + key + "': " + v);
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError("bad integer for '" + key + "': " + v);
  return x;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, std::string> values;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(number);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!values.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return values;
}

std::map<std::string, std::string> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

SimulateConfig simulate_config(const std::map<std::string, std::string>& values) {
  SimulateConfig cfg;
  auto& e = cfg.experiment;
  auto& k = e.coeffs;
  auto real = [](double& dst) { return [&dst](const std::string& key, const std::string& v) { dst = to_double(key, v); }; };
  auto integer = [](auto& dst) {
    return [&dst](const std::string& key, const std::string& v) {
      const long x = to_long(key, v);
      if (x < 0) throw ConfigError("'" + key + "' must be non-negative");
      dst = static_cast<std::remove_reference_t<decltype(dst)>>(x);
    };
  };
  const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters{
      {"c", real(cfg.c)},
      {"r_max", real(cfg.scan.r_max)},
      {"grid_step", real(cfg.scan.grid_step)},
      {"tau_sep", real(cfg.scan.tau_sep)},
      {"phase",
       [&e](const std::string& key, const std::string& v) {
         try {
           e.phase = parse_phase_index(v);
         } catch (const std::exception& ex) {
           throw ConfigError("bad phase for '" + key + "': " + ex.what());
         }
       }},
      {"alpha", real(k.alpha)},
      {"beta", real(k.beta)},
      {"gamma", real(k.gamma)},
      {"delta", real(k.delta)},
      {"epsilon", real(k.epsilon)},
      {"zeta", real(k.zeta)},
      {"amplitude", real(e.amplitude)},
      {"bandwidth", real(e.bandwidth)},
      {"seed_fraction", real(e.seed_fraction)},
      {"detune_factor", real(e.detune_factor)},
      {"band_halfwidth", real(e.band_halfwidth)},
      {"T_final", real(e.T_final)},
      {"dt", real(e.dt)},
      {"n", integer(e.n)},
      {"cells_per_bandwidth", integer(e.cells_per_bandwidth)},
      {"samples", integer(e.samples)},
      {"output", [&cfg](const std::string&, const std::string& v) { cfg.output = v; }},
      {"csv", [&cfg](const std::string&, const std::string& v) { cfg.csv = v; }},
  };
  for (const auto& [key, value] : values) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(key, value);
  }
  return cfg;
}

}  // namespace kgres::cli
