#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kgres/probes.hpp"
#include "kgres/pseudo_product.hpp"
#include "kgres/smooth.hpp"

using namespace kgres;

namespace {

std::vector<cplx> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

const smooth::BumpProfile kBump{};

}  // namespace

TEST_SUITE("pseudo_product") {

TEST_CASE("unit symbol gives the pointwise product") {
  for (const Grid& g : {Grid(1, 64, 12.0), Grid(3, 8, 5.0)}) {
    const auto a = random_values(g.size(), 1), b = random_values(g.size(), 2);
    std::vector<cplx> ab(g.size());
    for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = a[i] * b[i];
    const auto t = pseudo_product([](const Vec3&, const Vec3&) { return 1.0; }, forward(g, a), forward(g, b));
    CHECK(max_diff(t.coeffs, forward(g, ab).coeffs) < 1e-11);
  }
}

TEST_CASE("table layout") {
  const Grid g(1, 8, 3.0);
  const auto m = [](const Vec3& xi, const Vec3& eta) { return xi[0] + 10.0 * eta[0]; };
  const auto t = tabulate(g, m);
  for (std::size_t k = 0; k < 8; ++k) {
    for (std::size_t q = 0; q < 8; ++q) {
      const double eta = g.frequency(q);
      const double zeta = g.frequency((k + 8 - q) % 8);
      CHECK(t.values[k * 8 + q] == doctest::Approx(m({eta + zeta, 0, 0}, {eta, 0, 0})));
    }
  }
}

TEST_CASE("separable symbols") {
  const Grid g(1, 128, 20.0);
  const auto f = forward(g, random_values(g.size(), 3)), h = forward(g, random_values(g.size(), 4));
  const auto a = [](const Vec3& x) { return std::exp(-dot(x, x)); };
  const auto b = [](const Vec3& x) { return 1.0 / (1.0 + dot(x, x)); };
  const auto fast = separable_product(a, b, f, h);
  const auto direct = pseudo_product([&](const Vec3& xi, const Vec3& eta) { return a(eta) * b(xi - eta); }, f, h);
  // independent route: multiply each input, then take the pointwise product
  const auto fa = inverse(apply_multiplier(f, a));
  const auto hb = inverse(apply_multiplier(h, b));
  std::vector<cplx> prod(g.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = fa[i] * hb[i];
  const auto ref = forward(g, prod);
  CHECK(max_diff(fast.coeffs, ref.coeffs) < 1e-11);
  CHECK(max_diff(direct.coeffs, ref.coeffs) < 1e-11);
}

TEST_CASE("bilinearity") {
  const Grid g(1, 64, 9.0);
  const auto m = [](const Vec3& xi, const Vec3& eta) { return std::cos(xi[0]) * std::exp(-eta[0] * eta[0]); };
  const auto table = tabulate(g, m);
  const auto f1 = forward(g, random_values(g.size(), 5)), f2 = forward(g, random_values(g.size(), 6));
  const auto h = forward(g, random_values(g.size(), 7));
  const cplx a(0.3, -1.2), b(2.0, 0.5);
  SpectralField mix(g);
  for (std::size_t i = 0; i < mix.coeffs.size(); ++i) mix.coeffs[i] = a * f1.coeffs[i] + b * f2.coeffs[i];
  const auto lhs = pseudo_product(table, mix, h);
  const auto t1 = pseudo_product(table, f1, h), t2 = pseudo_product(table, f2, h);
  std::vector<cplx> rhs(g.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = a * t1.coeffs[i] + b * t2.coeffs[i];
  CHECK(max_diff(lhs.coeffs, rhs) < 1e-11);
  const auto other = pseudo_product(table, h, mix);
  CHECK(max_diff(other.coeffs, lhs.coeffs) > 1e-6);  // m is not symmetric
  CHECK_THROWS_AS(pseudo_product(table, forward(Grid(1, 32, 9.0), random_values(32, 1)), h), std::invalid_argument);
}

TEST_CASE("Holder bounds by the symbol l1 norm") {
  const Grid g(1, 64, 16.0 * std::numbers::pi);
  const std::vector<Symbol> symbols{
      [](const Vec3& xi, const Vec3& eta) { return std::exp(-(dot(xi, xi) + dot(eta, eta))); },
      [](const Vec3& xi, const Vec3& eta) { return kBump(norm(eta) / 2.0) * kBump(norm(xi - eta) / 2.0); },
      [](const Vec3& xi, const Vec3& eta) { return kBump(norm(xi - 2.0 * eta) / 2.0); },
      [](const Vec3& xi, const Vec3& eta) { return std::exp(-dot(xi, xi)) / (1.0 + dot(eta, eta)); },
  };
  std::uint64_t seed = 10;
  for (const auto& m : symbols) {
    const auto p = holder_probe(g, m, 100, seed++);
    CHECK(p.pairs >= 100);
    CHECK(p.bound.l1 > 0.0);
    CHECK(p.max_ratio <= p.bound.l1 * (1.0 + 1e-6));
  }
}

TEST_CASE("translation fast path matches the full table") {
  const Grid g(1, 64, 30.0);
  const auto chi = [](const Vec3& z) { return kBump(norm(z)); };
  for (long lambda : {2L, -1L, 3L, 0L}) {
    for (double rho : {1.0, 0.3}) {
      const auto fast = translation_symbol_l1_norm(g, chi, rho, static_cast<double>(lambda));
      const auto full = symbol_l1_norm(tabulate_translation(g, chi, rho, lambda));
      CHECK(fast.l1 == doctest::Approx(full.l1).epsilon(1e-10));
      CHECK(fast.lambda == lambda);
      CHECK(fast.rounding_error == 0.0);
    }
  }
  const auto r = translation_symbol_l1_norm(g, chi, 1.0, 2.4);
  CHECK(r.lambda == 2);
  CHECK(r.rounding_error == doctest::Approx(0.4));
}

TEST_CASE("translation bound is uniform in rho") {
  const Grid g(1, 16384, 2.0 * std::numbers::pi / 1e-3);
  const auto rows = translation_uniformity(g, {1.0, 0.1, 0.01}, 2.0);
  double lo = 1e300, hi = 0.0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.l1);
    hi = std::max(hi, r.l1);
  }
  CHECK(hi / lo < 1.1);
}

TEST_CASE("radial shell multiplier scales like a power of rho") {
  // Q(rho) ~ rho^{1/2} for Gaussians; the bound rho^{s/3} must match it
  // within a factor 3 over one decade.
  const Grid g(3, 64, 100.0);
  const std::vector<double> sigmas{1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
  for (double s : {0.5, 1.0}) {
    const double q1 = radial_shell_ratio(g, 0.5, 0.2, s, sigmas);
    const double q2 = radial_shell_ratio(g, 0.5, 0.02, s, sigmas);
    const double observed = q2 / q1;
    const double predicted = std::pow(10.0, -s / 3.0);
    CHECK(observed >= predicted / 3.0);
    CHECK(observed <= predicted * 3.0);
  }
}

TEST_CASE("l1 norm of a 3-D table is rejected") {
  const Grid g(3, 4, 1.0);
  CHECK_THROWS_AS(symbol_l1_norm(tabulate(g, [](const Vec3&, const Vec3&) { return 1.0; })), std::invalid_argument);
}

}
