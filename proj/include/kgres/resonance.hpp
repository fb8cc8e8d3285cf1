#pragma once

// Space, time and space-time resonant sets of the quadratic interactions.
//
// On the space-resonant set the two input frequencies are colinear:
// eta = r w, xi = lambda(r) r w with w on the unit sphere. Along that ray the
// phase reduces to a scalar function Z(r) whose zeros are the radii R of the
// space-time resonant spheres {|eta| = R, xi = lambda eta}.

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kgres/dispersion.hpp"

namespace kgres {

struct ResonantComponent {
  PhaseIndex idx;
  double radius = 0.0;  // R = |eta|
  double lambda = 0.0;  // xi = lambda eta
  int order = 1;        // order of the zero of Z at R
  bool tangent = false; // found as a touching minimum of |Z| rather than a sign change
  bool order_fit_ok = true;

  double outcome_radius() const;               // |lambda| R
  std::array<double, 2> source_radii() const;  // R, |lambda - 1| R
  /// Point (lambda R w, R w) of the component.
  FrequencyPair point(const Vec3& unit_direction) const;
};

struct ScanOptions {
  double r_max = 100.0;
  double grid_step = 1e-3;
  double tau_sep = 1e-6;
};

struct ComponentScan {
  std::vector<ResonantComponent> components;
  double r_end = 0.0;              // right end of the scanned interval
  bool asymptote_warning = false;  // |Z| small at r_max without a sign change
};

struct SeparationVerdict {
  bool separated = true;
  double min_gap = std::numeric_limits<double>::infinity();
  double delta0 = 1.0;
};

struct ResonanceReport {
  double c = 0.0;
  ScanOptions options;
  std::vector<ResonantComponent> components;  // one per canonical phase and root
  std::vector<double> outcome_radii;           // sorted, deduplicated
  std::vector<double> source_radii;            // sorted, deduplicated
  bool separated = true;
  double min_gap = std::numeric_limits<double>::infinity();
  double delta0 = 1.0;
  std::vector<std::string> warnings;

  /// Canonical phases owning at least one component, sorted.
  std::vector<PhaseIndex> resonant_phases() const;
};

/// lambda with d_eta phase(lambda r w, r w) = 0, or nullopt when the scalar
/// group-velocity equation has no solution at this radius. Requires r > 0.
std::optional<double> space_resonance_lambda(const SpeedPair& speeds, const PhaseIndex& idx, double r);

/// Supremum of the radii admitting a space resonance (infinity when all do).
double space_resonance_limit(const SpeedPair& speeds, const PhaseIndex& idx);

/// Z(r) = phase(idx, (lambda(r) r w, r w)); nullopt where lambda is absent.
std::optional<double> time_resonance_gap(const SpeedPair& speeds, const PhaseIndex& idx, double r);

ComponentScan find_resonant_components(const SpeedPair& speeds, const PhaseIndex& idx,
                                       const ScanOptions& options = {});

/// Scan every canonical phase. Throws std::invalid_argument for c = 1 or c <= 0.
ResonanceReport scan_all(double c, const ScanOptions& options = {});

SeparationVerdict check_separation(const ResonanceReport& report, double tau_sep);

struct SweepRow {
  double c = 0.0;
  bool separated = true;
  double min_gap = 0.0;
  bool exceptional = false;  // min_gap below tau_sep
};

/// Evenly spaced speeds from c_min to c_max inclusive (steps == 1 gives c_min).
/// Throws std::invalid_argument when the range contains 1 or steps < 1.
std::vector<SweepRow> sweep_speed(double c_min, double c_max, int steps, const ScanOptions& options = {});

/// Euclidean distance in R^6 from p to {(lambda R w, R w) : |w| = 1}.
double dist_to_R(const FrequencyPair& p, const ResonantComponent& comp);

struct ZeroOrderFit {
  int order = 0;
  double slope = 0.0;
  bool ok = false;
};

/// Log-log slope of |f(root +- d)| for d in [d_min, d_max], restricted to
/// the open interval (lo, hi). The order is the rounded slope; the fit is
/// flagged when the slope is more than 0.2 away from an integer.
ZeroOrderFit estimate_zero_order(const std::function<double(double)>& f, double root, double d_min,
                                 double d_max, double lo, double hi);

ZeroOrderFit intersection_order(const SpeedPair& speeds, const ResonantComponent& comp);

}  // namespace kgres
