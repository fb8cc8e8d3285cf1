#include "kgres/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "kgres/report_io.hpp"

namespace kgres::sim {

namespace {

constexpr const char* kCaveat =
    "1-D run: resonance radii come from the 3-D radial analysis and are reused as 1-D carrier "
    "frequencies; along colinear configurations the phase depends only on the moduli, so the "
    "time-resonance condition is unchanged.";

struct Packet {
  SpeedTag species;
  double radius;
  double amplitude;
};

// Real packet with spectrum G(xi - r) + G(xi + r), scaled to the given peak.
SpectralField real_packet(const Grid& grid, double radius, double bandwidth, double amplitude) {
  SpectralField f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k = grid.frequency(i);
    const double a = (k - radius) / bandwidth;
    const double b = (k + radius) / bandwidth;
    f.coeffs[i] = std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b);
  }
  const auto values = inverse(f);
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  for (auto& v : f.coeffs) v *= amplitude / peak;
  return f;
}

double snap(double r, double dk) { return std::round(r / dk) * dk; }

RunRecord run(const Grid& grid, double c, const std::vector<Packet>& packets, const Packet& seed,
              const ExperimentConfig& cfg, int steps, int every) {
  std::array<SpectralField, 2> u0{SpectralField(grid), SpectralField(grid)};
  std::array<SpectralField, 2> u1{SpectralField(grid), SpectralField(grid)};
  RunRecord rec;
  for (const auto& p : packets) {
    rec.input_radii.push_back(p.radius);
    const auto f = real_packet(grid, p.radius, cfg.bandwidth, p.amplitude);
    auto& dst = u0[slot(p.species)].coeffs;
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += f.coeffs[i];
  }
  {
    const auto f = real_packet(grid, seed.radius, cfg.bandwidth, seed.amplitude);
    auto& dst = u0[slot(seed.species)].coeffs;
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += f.coeffs[i];
  }
  rec.outcome_radius = seed.radius;
  rec.band_lo = seed.radius - cfg.band_halfwidth * cfg.bandwidth;
  rec.band_hi = seed.radius + cfg.band_halfwidth * cfg.bandwidth;

  SystemState state = diagonalize(c, u0, u1);
  rec.band_energy.push_back(band_energy(state, rec.band_lo, rec.band_hi, seed.species));
  try {
    for (int s = 1; s <= steps; ++s) {
      state = step(state, cfg.dt, cfg.coeffs);
      if (s % every == 0) rec.band_energy.push_back(band_energy(state, rec.band_lo, rec.band_hi, seed.species));
    }
  } catch (const StepRejected& e) {
    rec.completed = false;
    rec.failure = e.what();
  }
  return rec;
}

}  // namespace

double RunRecord::growth() const {
  if (band_energy.empty() || band_energy.front() <= 0.0) return 1.0;
  return band_energy.back() / band_energy.front();
}

ExperimentRecord run_resonant_amplification(const ResonanceReport& report, const ExperimentConfig& cfg) {
  if (!report.separated) throw std::invalid_argument("resonant amplification needs a separated report");
  if (!(cfg.dt > 0.0) || !(cfg.T_final > 0.0) || cfg.samples < 1)
    throw std::invalid_argument("experiment needs dt > 0, T_final > 0 and samples >= 1");
  if (!(cfg.bandwidth > 0.0) || cfg.cells_per_bandwidth < 1)
    throw std::invalid_argument("experiment needs a positive bandwidth");

  const ResonantComponent* comp = nullptr;
  const PhaseIndex wanted = cfg.phase.value_or(parse_phase_index("c11+--"));
  for (const auto& c : report.components) {
    if (c.idx == wanted) comp = &c;
  }
  if (comp == nullptr && !cfg.phase && !report.components.empty()) comp = &report.components.front();
  if (comp == nullptr) throw std::invalid_argument("no resonant component for phase " + to_string(wanted));

  ExperimentRecord rec;
  rec.c = report.c;
  rec.phase = comp->idx;
  rec.R = comp->radius;
  rec.lambda = comp->lambda;
  rec.output_species = comp->idx.k;
  rec.config = cfg;
  rec.caveat = kCaveat;

  // Inputs eta (species l) and xi - eta (species m), signed along the ray.
  const double eta = comp->radius;
  const double zeta = (comp->lambda - 1.0) * comp->radius;
  const double shift = cfg.detune_factor * cfg.bandwidth;
  const double eta_d = eta + shift;
  const double zeta_d = zeta + std::copysign(shift, zeta);

  // Lattice spacing anchored on the smaller input radius.
  const double anchor = std::min(std::abs(eta), std::abs(zeta));
  const double target = cfg.bandwidth / cfg.cells_per_bandwidth;
  const double dk = anchor / std::max(1.0, std::round(anchor / target));
  const Grid grid(1, cfg.n, 2.0 * std::numbers::pi / dk);
  rec.box_length = grid.box_length();
  rec.dk = dk;

  const double reach = std::max({std::abs(eta_d + zeta_d), std::abs(eta_d), std::abs(zeta_d)}) +
                       (cfg.band_halfwidth + 3.0) * cfg.bandwidth;
  if (reach > static_cast<double>(cfg.n / 3) * dk)
    throw std::invalid_argument("grid too small for the detuned outcome band; increase n");

  auto packets_for = [&](double a, double b) {
    const double ra = snap(std::abs(a), dk);
    const double rb = snap(std::abs(b), dk);
    for (double r : {std::abs(a), std::abs(b)}) {
      rec.carrier_rounding = std::max(rec.carrier_rounding, std::abs(snap(r, dk) - r) / r);
    }
    std::vector<Packet> out{{comp->idx.l, ra, cfg.amplitude}};
    if (comp->idx.l == comp->idx.m && std::abs(ra - rb) < 0.5 * dk) return out;
    out.push_back({comp->idx.m, rb, cfg.amplitude});
    return out;
  };
  const auto res_packets = packets_for(eta, zeta);
  const auto det_packets = packets_for(eta_d, zeta_d);
  const double seed_amp = cfg.seed_fraction * cfg.amplitude * cfg.amplitude;
  const Packet res_seed{rec.output_species, snap(std::abs(eta + zeta), dk), seed_amp};
  const Packet det_seed{rec.output_species, snap(std::abs(eta_d + zeta_d), dk), seed_amp};

  const int steps = static_cast<int>(std::llround(cfg.T_final / cfg.dt));
  const int every = std::max(1, steps / cfg.samples);
  for (int s = 0; s <= steps; s += every) rec.times.push_back(s * cfg.dt);

  auto res = std::async(std::launch::async, [&] { return run(grid, report.c, res_packets, res_seed, cfg, steps, every); });
  auto det = std::async(std::launch::async, [&] { return run(grid, report.c, det_packets, det_seed, cfg, steps, every); });
  rec.resonant = res.get();
  rec.detuned = det.get();

  rec.inconclusive = !rec.resonant.completed || !rec.detuned.completed;
  rec.growth_resonant = rec.resonant.growth();
  rec.growth_detuned = rec.detuned.growth();
  rec.ratio = rec.growth_resonant / rec.growth_detuned;
  return rec;
}

nlohmann::ordered_json to_json(const ExperimentRecord& r) {
  nlohmann::ordered_json doc;
  const auto& c = r.config;
  auto run_json = [](const RunRecord& run) {
    nlohmann::ordered_json j;
    j["input_radii"] = run.input_radii;
    j["outcome_radius"] = run.outcome_radius;
    j["band"] = {run.band_lo, run.band_hi};
    j["band_energy"] = run.band_energy;
    j["growth"] = run.growth();
    j["completed"] = run.completed;
    j["failure"] = run.failure;
    return j;
  };
  doc["schema"] = kExperimentSchema;
  doc["c"] = r.c;
  doc["phase"] = to_string(r.phase);
  doc["R"] = r.R;
  doc["lambda"] = r.lambda;
  doc["output_species"] = r.output_species == SpeedTag::c ? "c" : "1";
  doc["parameters"] = {{"amplitude", c.amplitude},
                       {"bandwidth", c.bandwidth},
                       {"seed_fraction", c.seed_fraction},
                       {"detune_factor", c.detune_factor},
                       {"band_halfwidth", c.band_halfwidth},
                       {"T_final", c.T_final},
                       {"dt", c.dt},
                       {"n", c.n},
                       {"cells_per_bandwidth", c.cells_per_bandwidth},
                       {"samples", c.samples},
                       {"coefficients",
                        {{"alpha", c.coeffs.alpha},
                         {"beta", c.coeffs.beta},
                         {"gamma", c.coeffs.gamma},
                         {"delta", c.coeffs.delta},
                         {"epsilon", c.coeffs.epsilon},
                         {"zeta", c.coeffs.zeta}}}};
  doc["box_length"] = r.box_length;
  doc["dk"] = r.dk;
  doc["carrier_rounding"] = r.carrier_rounding;
  doc["times"] = r.times;
  doc["resonant"] = run_json(r.resonant);
  doc["detuned"] = run_json(r.detuned);
  doc["growth_resonant"] = r.growth_resonant;
  doc["growth_detuned"] = r.growth_detuned;
  doc["growth_ratio"] = r.ratio;
  doc["inconclusive"] = r.inconclusive;
  doc["caveat"] = r.caveat;
  return doc;
}

void write_experiment_csv(std::ostream& out, const ExperimentRecord& r) {
  out << "t,resonant_band_energy,detuned_band_energy\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    const auto at = [i](const RunRecord& run) {
      return i < run.band_energy.size() ? io::format_double(run.band_energy[i]) : std::string();
    };
    out << io::format_double(r.times[i]) << ',' << at(r.resonant) << ',' << at(r.detuned) << '\n';
  }
}

}  // namespace kgres::sim
