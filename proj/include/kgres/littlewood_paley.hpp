#pragma once

// Dyadic decomposition. chi is radial, 1 on |xi| <= 3/4 and 0 on |xi| >= 1;
// psi(xi) = chi(xi/2) - chi(xi) lives in 3/4 <= |xi| <= 2 and equals 1 on
// 1 <= |xi| <= 3/2. P_j = psi(D/2^j), P_{<j} = chi(D/2^j), and
// P_{<j0} + sum_{j0 <= j < j1} P_j = P_{<j1} exactly.

#include <cstdint>

#include "kgres/spectral.hpp"

namespace kgres::lp {

double chi(double r);
double psi(double r);

enum class Mode { annulus, ball };

SpectralField lp_project(const SpectralField& field, int j, Mode mode = Mode::annulus);

/// ||P_j f||_p / (2^{d j (1/q - 1/p)} ||P_j f||_q).
double bernstein_ratio(const SpectralField& projected, int j, double p, double q);

/// Largest Bernstein ratio over `trials` fields P_j f, f a sum of a few
/// randomly placed point masses. Requires 1 <= q <= p <= infinity.
double bernstein_check(const Grid& grid, int j, double p, double q, int trials, std::uint64_t seed);

}  // namespace kgres::lp
