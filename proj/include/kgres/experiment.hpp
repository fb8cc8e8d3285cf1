#pragma once

// Resonant amplification on a 1-D periodic box. Wave packets are placed at
// the source radii of one space-time resonant component; the outcome band
// |xi| ~ |lambda| R of the output species is monitored and compared with a
// control run whose carriers are detuned by a multiple of the bandwidth.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgres/resonance.hpp"
#include "kgres/simulator.hpp"

namespace kgres::sim {

struct ExperimentConfig {
  std::optional<PhaseIndex> phase;  // canonical resonant phase; defaults to c11+-- when present
  NonlinearityCoefficients coeffs{0.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  double amplitude = 0.05;      // peak of each input packet
  double bandwidth = 0.02;      // Gaussian standard deviation in frequency
  double seed_fraction = 1.0;   // outcome-band seed amplitude in units of amplitude^2
  double detune_factor = 10.0;
  double band_halfwidth = 2.0;  // in units of bandwidth
  double T_final = 200.0;
  double dt = 0.1;
  std::size_t n = 1024;
  int cells_per_bandwidth = 4;
  int samples = 20;
};

struct RunRecord {
  std::vector<double> input_radii;
  double outcome_radius = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  std::vector<double> band_energy;  // one per sample time
  bool completed = true;
  std::string failure;
  double growth() const;
};

struct ExperimentRecord {
  double c = 0.0;
  PhaseIndex phase;
  double R = 0.0;
  double lambda = 0.0;
  SpeedTag output_species = SpeedTag::c;
  double box_length = 0.0;
  double dk = 0.0;
  double carrier_rounding = 0.0;  // largest relative lattice rounding of a carrier
  ExperimentConfig config;
  std::vector<double> times;
  RunRecord resonant;
  RunRecord detuned;
  double growth_resonant = 1.0;
  double growth_detuned = 1.0;
  double ratio = 1.0;
  bool inconclusive = false;
  std::string caveat;
};

/// Throws std::invalid_argument when the report is not separated, the phase
/// has no component, or the grid cannot hold the detuned outcome band.
ExperimentRecord run_resonant_amplification(const ResonanceReport& report, const ExperimentConfig& config);

inline constexpr const char* kExperimentSchema = "experiment-record/1";

nlohmann::ordered_json to_json(const ExperimentRecord& record);
/// CSV "t,resonant_band_energy,detuned_band_energy".
void write_experiment_csv(std::ostream& out, const ExperimentRecord& record);

}  // namespace kgres::sim
