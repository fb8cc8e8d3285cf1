#include "kgres/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "kgres/smooth.hpp"

namespace kgres::lp {

double chi(double r) { return 1.0 - smooth::step(4.0 * (std::abs(r) - 0.75)); }

double psi(double r) { return chi(0.5 * r) - chi(r); }

SpectralField lp_project(const SpectralField& field, int j, Mode mode) {
  const double scale = std::ldexp(1.0, -j);
  if (mode == Mode::ball) return apply_multiplier(field, [&](const Vec3& xi) { return chi(norm(xi) * scale); });
  return apply_multiplier(field, [&](const Vec3& xi) { return psi(norm(xi) * scale); });
}

double bernstein_ratio(const SpectralField& projected, int j, double p, double q) {
  const auto values = inverse(projected);
  const auto& g = projected.grid;
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double factor = std::exp2(g.dims() * j * (inv_q - inv_p));
  return lp_norm(g, values, p) / (factor * lp_norm(g, values, q));
}

double bernstein_check(const Grid& grid, int j, double p, double q, int trials, std::uint64_t seed) {
  if (!(q >= 1.0) || !(p >= q)) throw std::invalid_argument("bernstein_check needs 1 <= q <= p");
  if (trials < 1) throw std::invalid_argument("bernstein_check needs at least one trial");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> where(0, grid.size() - 1);
  std::normal_distribution<double> amp;
  constexpr int kSpikes = 4;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> f(grid.size());
    for (int s = 0; s < kSpikes; ++s) f[where(rng)] += cplx(amp(rng), amp(rng));
    worst = std::max(worst, bernstein_ratio(lp_project(forward(grid, f), j), j, p, q));
  }
  return worst;
}

}  // namespace kgres::lp
