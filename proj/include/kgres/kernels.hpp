#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant selected at runtime.
// The scalar and AVX2 gap kernels perform the same IEEE operations in the
// same order and agree bit for bit; the complex kernels may differ by a few
// ulps because of reassociation across lanes.

#include <complex>
#include <optional>
#include <span>
#include <string_view>

namespace kgres::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
/// Best instruction set supported by both the build and the running CPU.
Isa detected_isa();
/// ISA used by the dispatching entry points below.
Isa active_isa();
/// Pin the dispatch to a given ISA (std::nullopt restores detection).
/// Requesting an unavailable ISA falls back to scalar.
void force_isa(std::optional<Isa> isa);

/// Speeds and bracket signs of one interaction phase.
struct GapParams {
  double c_k = 1.0, c_l = 1.0, c_m = 1.0;
  double s0 = 1.0, s1 = 1.0, s2 = 1.0;
};

using cplx = std::complex<double>;

// Dispatching entry points.

/// Z(r) = phase along the space-resonant ray (xi = lambda(r) r w, eta = r w).
/// Writes NaN where no space resonance exists at radius r.
void time_resonance_gap(const GapParams& p, std::span<const double> r, std::span<double> out);
/// x[i] *= m[i]
void complex_multiply(std::span<cplx> x, std::span<const cplx> m);
/// sum_i |x[i]|^2
double squared_norm(std::span<const cplx> x);
/// sum_i w[i] a[i] b[i]
cplx weighted_triple_sum(std::span<const double> w, std::span<const cplx> a, std::span<const cplx> b);

namespace scalar {
void time_resonance_gap(const GapParams& p, std::span<const double> r, std::span<double> out);
void complex_multiply(std::span<cplx> x, std::span<const cplx> m);
double squared_norm(std::span<const cplx> x);
cplx weighted_triple_sum(std::span<const double> w, std::span<const cplx> a, std::span<const cplx> b);
}  // namespace scalar

namespace avx2 {
bool available();
void time_resonance_gap(const GapParams& p, std::span<const double> r, std::span<double> out);
void complex_multiply(std::span<cplx> x, std::span<const cplx> m);
double squared_norm(std::span<const cplx> x);
cplx weighted_triple_sum(std::span<const double> w, std::span<const cplx> a, std::span<const cplx> b);
}  // namespace avx2

}  // namespace kgres::kernels
