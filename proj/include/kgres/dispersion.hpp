#pragma once

// Dispersion relations and interaction phases of the two-speed
// Klein-Gordon system
//
//   u^1_tt - Lap u^1 + u^1 = Q^1,    u^c_tt - c^2 Lap u^c + u^c = Q^c.
//
// A quadratic interaction is labelled by three speed tags (k, l, m) and three
// bracket signs (s0, s1, s2); its phase is
//
//   phi(xi, eta) = s0 <xi>_k + s1 <eta>_l + s2 <xi - eta>_m,
//
// with <x>_j = sqrt(1 + c_j^2 |x|^2). The label "c11+--" therefore denotes
// <xi>_c - <eta> - <xi - eta>.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgres/vec3.hpp"

namespace kgres {

// The fast tag sorts first; canonical representatives depend on this.
enum class SpeedTag : std::uint8_t { c = 0, one = 1 };
enum class Sign : std::uint8_t { plus = 0, minus = 1 };

constexpr double value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
constexpr Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr Sign product(Sign a, Sign b) { return a == b ? Sign::plus : Sign::minus; }

class SpeedPair {
 public:
  /// Throws std::invalid_argument unless c > 0, finite and c != 1.
  explicit SpeedPair(double c_fast);

  double c_fast() const { return c_fast_; }
  double c_slow() const { return c_slow_; }
  double speed(SpeedTag tag) const { return tag == SpeedTag::c ? c_fast_ : c_slow_; }

 private:
  double c_fast_;
  double c_slow_ = 1.0;
};

struct PhaseIndex {
  SpeedTag k = SpeedTag::one;
  SpeedTag l = SpeedTag::one;
  SpeedTag m = SpeedTag::one;
  Sign s0 = Sign::plus;
  Sign s1 = Sign::plus;
  Sign s2 = Sign::plus;

  auto operator<=>(const PhaseIndex&) const = default;
};

/// Six-character label, speed tags then signs, e.g. "c11+--".
std::string to_string(const PhaseIndex& idx);
/// Inverse of to_string; accepts '-' or U+2212 for minus. Throws std::invalid_argument.
PhaseIndex parse_phase_index(std::string_view label);

PhaseIndex negate(const PhaseIndex& idx);
/// Exchange the roles of eta and xi - eta.
PhaseIndex swap_arguments(const PhaseIndex& idx);

struct FrequencyPair {
  Vec3 xi{};
  Vec3 eta{};
};

/// phase(idx, p) == sign * phase(canonical, swapped ? (xi, xi - eta) : p)
struct SymmetryTransform {
  double sign = 1.0;
  bool swapped = false;

  FrequencyPair apply(const FrequencyPair& p) const;
  bool is_identity() const { return sign > 0 && !swapped; }
};

struct CanonicalForm {
  PhaseIndex canonical;
  SymmetryTransform transform;
};

/// Smallest element of the orbit {idx, negate, swap, negate o swap}.
CanonicalForm symmetry_reduce(const PhaseIndex& idx);

struct PhaseEntry {
  PhaseIndex idx;
  PhaseIndex canonical;
  SymmetryTransform transform;
};

/// All 64 indices in lexicographic order, each with its canonical form.
std::vector<PhaseEntry> enumerate_phases();
/// Distinct canonical representatives, sorted.
std::vector<PhaseIndex> canonical_phases();
/// Every index sharing the canonical representative of idx.
std::vector<PhaseIndex> orbit(const PhaseIndex& idx);

double bracket(const SpeedPair& speeds, SpeedTag tag, double r);
double bracket(const SpeedPair& speeds, SpeedTag tag, const Vec3& x);

double phase(const SpeedPair& speeds, const PhaseIndex& idx, const FrequencyPair& p);
Vec3 grad_eta_phase(const SpeedPair& speeds, const PhaseIndex& idx, const FrequencyPair& p);
Vec3 grad_xi_phase(const SpeedPair& speeds, const PhaseIndex& idx, const FrequencyPair& p);

}  // namespace kgres
