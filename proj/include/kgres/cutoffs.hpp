#pragma once

// Frequency cut-offs adapted to the resonant structure of one phase:
// the high/low splitter theta, the outcome pair chi_O + chi_O~ = 1, and the
// partition chi_R + chi_S + chi_T = 1 of the (xi, eta) space.
//
// chi_S is localised away from the time-resonant set T (where phi can be
// divided by) and chi_T away from the space-resonant set S (where one can
// integrate by parts in eta). Distances to T and S are first-order surrogates:
//
//   dist(p, T) ~ |phi| / |grad phi|,   dist(p, S) ~ |d_eta phi| / H,
//
// with H = c_l^2 / <eta>_l + 2 c_m^2 / <xi - eta>_m bounding the eta-Hessian,
// both clamped to 1.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kgres/resonance.hpp"
#include "kgres/smooth.hpp"

namespace kgres {

struct CutoffOptions {
  double M = 0.0;       // 0: chosen so that every component lies in B(0, M/2) with margin
  double delta0 = 0.0;  // 0: taken from the report
  int n = 0;            // 0: largest zero order among the phase's components
  smooth::BumpProfile bump{};
};

struct CutoffValues {
  double R = 0.0;
  double S = 0.0;
  double T = 0.0;
};

enum class CutoffKind { theta, chi_O, chi_O_tilde, chi_R, chi_S, chi_T };

std::string_view to_string(CutoffKind kind);
/// Throws std::invalid_argument on an unknown name.
CutoffKind parse_cutoff_kind(std::string_view name);

class CutoffFamily {
 public:
  /// Cut-offs for `phase`, using the components of its orbit found in `report`.
  CutoffFamily(ResonanceReport report, PhaseIndex phase, CutoffOptions options = {});

  const ResonanceReport& report() const { return report_; }
  const PhaseIndex& phase() const { return phase_; }
  /// Components of the resonant set of this phase (orbit images mapped back).
  const std::vector<ResonantComponent>& components() const { return components_; }
  double M() const { return M_; }
  double delta0() const { return delta0_; }
  int n() const { return n_; }

  /// 1 on |p| <= M, 0 on |p| >= M + 1.
  double theta(const FrequencyPair& p) const;
  /// 1 within delta0/2 of an outcome sphere, 0 beyond delta0.
  /// Throws std::logic_error when the report is not separated.
  double chi_O(const Vec3& xi) const;
  double chi_O_tilde(const Vec3& xi) const;

  /// Product of bumps around one component, additionally cut to B_{delta0/2}
  /// of that component, where chi_O = 1. Equal to 1 on the component for
  /// every rho.
  double chi_R_component(const FrequencyPair& p, const ResonantComponent& comp, double rho) const;
  /// All components combined as 1 - prod(1 - chi_j).
  double chi_R(const FrequencyPair& p, double rho) const;
  double chi_S(const FrequencyPair& p, double rho) const;
  double chi_T(const FrequencyPair& p, double rho) const;
  CutoffValues partition(const FrequencyPair& p, double rho) const;

  double evaluate(CutoffKind kind, const FrequencyPair& p, double rho) const;

  double dist_to_resonant(const FrequencyPair& p) const;
  double dist_time_surrogate(const FrequencyPair& p) const;
  double dist_space_surrogate(const FrequencyPair& p) const;

  /// Radius C with chi_R_component(p) = 0 whenever dist_to_R(p) > C.
  double support_radius(const ResonantComponent& comp, double rho) const;

 private:
  double chi_S_low(const FrequencyPair& p, double chi_r) const;
  double chi_S_high(const FrequencyPair& p) const;

  ResonanceReport report_;
  PhaseIndex phase_;
  SpeedPair speeds_;
  std::vector<ResonantComponent> components_;
  double M_ = 1.0;
  double delta0_ = 1.0;
  int n_ = 1;
  smooth::BumpProfile bump_;
  // High-frequency asymptote of the space-resonant set: |xi - eta| -> s_inf
  // when c_l < c_m, |eta| -> r_lim when c_l > c_m, none for equal speeds.
  enum class Asymptote { xi_minus_eta, eta, none } asymptote_ = Asymptote::none;
  double asymptote_radius_ = 0.0;
};

struct BoundProbeRow {
  double rho = 0.0;
  double sup_S_over_phi = 0.0;
  double sup_T_over_grad = 0.0;  // sup chi_T / |d_eta phi|
};

struct BoundProbe {
  std::vector<BoundProbeRow> rows;
  double exponent_S = 0.0;  // log-log slope of sup chi_S/|phi| against 1/rho
  double exponent_T = 0.0;
  int n = 1;
  // High-frequency shell M <= |p| <= high_radius.
  double high_radius = 0.0;
  double high_sup_S_over_phi = 0.0;
  double high_sup_T_over_grad = 0.0;
  double high_exponent = 0.0;  // growth of the weighted sups in |p|
};

/// Monte-Carlo sup estimates. Half of the samples are uniform in the 6-ball of
/// radius M, half are concentrated around the resonant components at
/// log-uniform distances between the smallest rho and 1.
BoundProbe bound_probe(const CutoffFamily& family, const std::vector<double>& rhos, int sample_count,
                       std::uint64_t seed, double high_radius = 1e3);

/// Planar lattice origin + (i/(nu-1)) u + (j/(nv-1)) v in R^6 = (xi, eta).
struct CutoffGrid {
  std::array<double, 6> origin{};
  std::array<double, 6> u{};
  std::array<double, 6> v{};
  int nu = 2;
  int nv = 2;
};

/// CSV with header xi1,xi2,xi3,eta1,eta2,eta3,value.
void export_cutoff_grid(std::ostream& out, const CutoffFamily& family, CutoffKind kind, double rho,
                        const CutoffGrid& grid);

}  // namespace kgres
