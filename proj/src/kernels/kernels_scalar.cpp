#include <cmath>
#include <limits>

#include "kgres/kernels.hpp"

namespace kgres::kernels::scalar {

// Space resonance: c_m^2 s / <s>_m = s1 s2 c_l^2 r / <r>_l, solved through
// u = g / c_m, y = c_m s = u / sqrt(1 - u^2), so that <s>_m = 1 / sqrt(1 - u^2).
void time_resonance_gap(const GapParams& p, std::span<const double> r, std::span<double> out) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double sign12 = p.s1 * p.s2;
  const double cl2 = p.c_l * p.c_l;
  const double ck2 = p.c_k * p.c_k;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double ri = r[i];
    const double bl = std::sqrt(1.0 + cl2 * (ri * ri));
    const double u = (sign12 * cl2 * ri / bl) / p.c_m;
    const double one_minus = 1.0 - u * u;
    if (!(one_minus > 0.0)) {
      out[i] = nan;
      continue;
    }
    const double root = std::sqrt(one_minus);
    const double s = (u / root) / p.c_m;
    const double bm = 1.0 / root;
    const double x = ri + s;
    const double bk = std::sqrt(1.0 + ck2 * (x * x));
    out[i] = p.s0 * bk + p.s1 * bl + p.s2 * bm;
  }
}

void complex_multiply(std::span<cplx> x, std::span<const cplx> m) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = x[i].real(), b = x[i].imag();
    const double c = m[i].real(), d = m[i].imag();
    x[i] = {a * c - b * d, a * d + b * c};
  }
}

double squared_norm(std::span<const cplx> x) {
  double acc = 0.0;
  for (const auto& z : x) acc += z.real() * z.real() + z.imag() * z.imag();
  return acc;
}

cplx weighted_triple_sum(std::span<const double> w, std::span<const cplx> a, std::span<const cplx> b) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double pr = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double pi = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    re += w[i] * pr;
    im += w[i] * pi;
  }
  return {re, im};
}

}  // namespace kgres::kernels::scalar
