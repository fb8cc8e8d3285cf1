#pragma once

// Pseudo-spectral integration of the diagonalised system
//
//   d_t u^k_{+-} = +- i <D>_k u^k_{+-} + Q^k(u^1, u^c),
//   u^k_{+-} = d_t u^k +- i <D>_k u^k,   u^k = (u^k_+ - u^k_-) / (2 i <D>_k),
//
// Q^1 = alpha (u^1)^2 + beta (u^c)^2 + gamma u^1 u^c,
// Q^c = delta (u^1)^2 + epsilon (u^c)^2 + zeta u^1 u^c.
//
// The linear part is integrated exactly; the quadratic term by a Lawson
// (integrating factor) Runge-Kutta 4 scheme with 2/3 dealiasing.

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kgres/dispersion.hpp"
#include "kgres/spectral.hpp"

namespace kgres::sim {

/// Species slot: 0 for the unit-speed field u^1, 1 for u^c.
constexpr std::size_t slot(SpeedTag tag) { return tag == SpeedTag::one ? 0 : 1; }
constexpr SpeedTag species_tag(std::size_t s) { return s == 0 ? SpeedTag::one : SpeedTag::c; }

struct NonlinearityCoefficients {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double delta = 0.0, epsilon = 0.0, zeta = 0.0;

  /// Coefficient of u^l u^m in Q^k, with the cross term split evenly.
  double pair(SpeedTag k, SpeedTag l, SpeedTag m) const;
};

struct SystemState {
  double t = 0.0;
  double c = 2.0;
  std::array<SpectralField, 2> plus;   // indexed by slot()
  std::array<SpectralField, 2> minus;
};

struct ProfileState {
  double t = 0.0;
  std::array<SpectralField, 2> plus;
  std::array<SpectralField, 2> minus;
};

/// u_{+-} = u1 +- i <D> u0 for both species (u0, u1 given by slot).
SystemState diagonalize(double c, const std::array<SpectralField, 2>& u0, const std::array<SpectralField, 2>& u1);

struct PhysicalPair {
  SpectralField u;
  SpectralField u_t;
};
/// Inverse of diagonalize for one species.
PhysicalPair reconstruct(const SystemState& state, SpeedTag species);

/// a^{k,l,m}_{e0,e1,e2} with field signs (e1, e2 multiply u^l_{e1} and
/// u^m_{e2}); independent of e0.
class QuadraticTable {
 public:
  double operator()(SpeedTag k, SpeedTag l, SpeedTag m, Sign e0, Sign e1, Sign e2) const;
  double& at(SpeedTag k, SpeedTag l, SpeedTag m, Sign e0, Sign e1, Sign e2);
  bool is_zero() const;

 private:
  static std::size_t index(SpeedTag k, SpeedTag l, SpeedTag m, Sign e0, Sign e1, Sign e2);
  std::array<double, 64> a_{};
};

QuadraticTable expand_quadratic(const NonlinearityCoefficients& coeffs);

/// Q^k evaluated pointwise from the physical fields.
std::array<std::vector<cplx>, 2> quadratic_direct(const NonlinearityCoefficients& coeffs, const SystemState& state);
/// Q^k reassembled as sum a (u^l_{e1}/<D>_l)(u^m_{e2}/<D>_m), for e0 = +.
std::array<std::vector<cplx>, 2> quadratic_from_table(const QuadraticTable& table, const SystemState& state);

enum class Scheme { lawson_rk4 };
constexpr int nominal_order(Scheme) { return 4; }

class StepRejected : public std::runtime_error {
 public:
  StepRejected(double t, double jump);
  double time() const { return t_; }
  double jump() const { return jump_; }

 private:
  double t_;
  double jump_;
};

/// sum over species and signs of ||u_{+-}||_2^2, conserved by the linear flow.
double linear_energy(const SystemState& state);

/// One step. Throws StepRejected when linear_energy changes by more than
/// 10 % relative, std::invalid_argument for dt <= 0.
SystemState step(const SystemState& state, double dt, const NonlinearityCoefficients& coeffs,
                 Scheme scheme = Scheme::lawson_rk4);

/// f_{+-} = e^{-+ i t <D>} u_{+-}
ProfileState profile_of(const SystemState& state);

/// dxi^d sum |u^_{+-}|^2 over modes with lo <= |xi| < hi, for one species or both.
double band_energy(const SystemState& state, double lo, double hi, std::optional<SpeedTag> species = std::nullopt);

}  // namespace kgres::sim
