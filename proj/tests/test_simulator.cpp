#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kgres/simulator.hpp"

using namespace kgres;
using namespace kgres::sim;

namespace {

constexpr cplx I(0.0, 1.0);

double br(double c, double k) { return std::sqrt(1.0 + c * c * k * k); }

// Real initial data: a few smooth Gaussian packets per species.
SystemState smooth_state(const Grid& g, double c, double eps) {
  std::array<SpectralField, 2> u0{SpectralField(g), SpectralField(g)}, u1{SpectralField(g), SpectralField(g)};
  for (std::size_t sp = 0; sp < 2; ++sp) {
    std::vector<cplx> a(g.size()), b(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.coordinate(i);
      a[i] = eps * std::exp(-x * x / (2.0 + sp)) * std::cos((1.0 + sp) * x);
      b[i] = eps * 0.5 * std::exp(-(x - 1.0) * (x - 1.0));
    }
    u0[sp] = forward(g, a);
    u1[sp] = forward(g, b);
  }
  return diagonalize(c, u0, u1);
}

NonlinearityCoefficients all_on() { return {1.0, -0.5, 0.7, 0.3, 0.8, -1.1}; }

double state_diff(const SystemState& a, const SystemState& b) {
  double d = 0.0;
  for (std::size_t sp = 0; sp < 2; ++sp) {
    for (std::size_t i = 0; i < a.plus[sp].coeffs.size(); ++i) {
      d = std::max(d, std::abs(a.plus[sp].coeffs[i] - b.plus[sp].coeffs[i]));
      d = std::max(d, std::abs(a.minus[sp].coeffs[i] - b.minus[sp].coeffs[i]));
    }
  }
  return d;
}

SystemState evolve(SystemState s, double T, double dt, const NonlinearityCoefficients& q) {
  const int n = static_cast<int>(std::llround(T / dt));
  for (int i = 0; i < n; ++i) s = step(s, dt, q);
  return s;
}

double profile_drift(const SystemState& s0, const SystemState& s1) {
  const auto f0 = profile_of(s0), f1 = profile_of(s1);
  double d = 0.0;
  for (std::size_t sp = 0; sp < 2; ++sp) {
    for (std::size_t i = 0; i < f0.plus[sp].coeffs.size(); ++i) {
      d += std::norm(f1.plus[sp].coeffs[i] - f0.plus[sp].coeffs[i]);
      d += std::norm(f1.minus[sp].coeffs[i] - f0.minus[sp].coeffs[i]);
    }
  }
  return std::sqrt(d);
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("diagonalisation") {
  const Grid g(1, 32, 10.0);
  const double c = 3.0;
  std::array<SpectralField, 2> zero{SpectralField(g), SpectralField(g)};
  std::array<SpectralField, 2> u1{SpectralField(g), SpectralField(g)};
  u1[0].coeffs[3] = {1.0, 2.0};
  u1[1].coeffs[5] = {-0.5, 0.0};
  auto s = diagonalize(c, zero, u1);
  CHECK(s.plus[0].coeffs == u1[0].coeffs);
  CHECK(s.minus[1].coeffs == u1[1].coeffs);

  std::array<SpectralField, 2> u0{SpectralField(g), SpectralField(g)};
  u0[1].coeffs[4] = 1.0;
  s = diagonalize(c, u0, zero);
  const double w = br(c, g.frequency(4));
  CHECK(std::abs(s.plus[1].coeffs[4] - I * w) < 1e-14);
  CHECK(std::abs(s.minus[1].coeffs[4] + I * w) < 1e-14);

  const auto full = smooth_state(g, c, 1.0);
  std::array<SpectralField, 2> a0{SpectralField(g), SpectralField(g)}, a1{SpectralField(g), SpectralField(g)};
  for (std::size_t sp = 0; sp < 2; ++sp) {
    const auto r = reconstruct(full, species_tag(sp));
    a0[sp] = r.u;
    a1[sp] = r.u_t;
  }
  CHECK(state_diff(diagonalize(c, a0, a1), full) < 1e-12);
}

TEST_CASE("reality of diagonalised data") {
  const Grid g(1, 64, 12.0);
  const auto s = smooth_state(g, 2.0, 1.0);
  const std::size_t n = g.size();
  for (std::size_t sp = 0; sp < 2; ++sp) {
    for (std::size_t i = 0; i < n; ++i) {
      // u_- (xi) = conj(u_+(-xi)) for real u0, u1
      const std::size_t j = (n - i) % n;
      CHECK(std::abs(s.minus[sp].coeffs[i] - std::conj(s.plus[sp].coeffs[j])) < 1e-12);
    }
  }
}

TEST_CASE("quadratic expansion") {
  const auto t = expand_quadratic({1.0, 0, 0, 0, 0, 0});
  constexpr std::array<Sign, 2> signs{Sign::plus, Sign::minus};
  for (auto e0 : signs)
    for (auto e1 : signs)
      for (auto e2 : signs) {
        CHECK(t(SpeedTag::one, SpeedTag::one, SpeedTag::one, e0, e1, e2) == -value(e1) * value(e2) / 4.0);
        CHECK(t(SpeedTag::c, SpeedTag::one, SpeedTag::one, e0, e1, e2) == 0.0);
      }
  CHECK(expand_quadratic({}).is_zero());
  CHECK_FALSE(t.is_zero());

  const auto mixed = expand_quadratic({0, 0, 2.0, 0, 0, 0});
  for (auto e1 : signs)
    for (auto e2 : signs)
      CHECK(mixed(SpeedTag::one, SpeedTag::one, SpeedTag::c, Sign::plus, e1, e2) +
                mixed(SpeedTag::one, SpeedTag::c, SpeedTag::one, Sign::plus, e1, e2) ==
            doctest::Approx(-2.0 * value(e1) * value(e2) / 4.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const NonlinearityCoefficients q{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const Grid g(1, 64, 10.0);
    auto s = smooth_state(g, 4.0, 1.0);
    for (auto& f : s.plus) f.coeffs[7] += cplx(u(rng), u(rng));
    const auto direct = quadratic_direct(q, s);
    const auto table = quadratic_from_table(expand_quadratic(q), s);
    for (std::size_t sp = 0; sp < 2; ++sp)
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(direct[sp][i] - table[sp][i]) < 1e-10);
  }
}

TEST_CASE("linear flow is exact") {
  const Grid g(1, 128, 20.0);
  const double c = 5.0;
  auto s = smooth_state(g, c, 1.0);
  const auto s0 = s;
  for (double dt : {0.01, 0.7, 3.0}) {
    const auto next = step(s, dt, {});
    for (std::size_t sp = 0; sp < 2; ++sp)
      for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(std::abs(next.plus[sp].coeffs[i]) - std::abs(s.plus[sp].coeffs[i])) <= 1e-14);
        CHECK(std::abs(std::abs(next.minus[sp].coeffs[i]) - std::abs(s.minus[sp].coeffs[i])) <= 1e-14);
      }
    s = next;
  }
  const double t = s.t;
  CHECK(t == doctest::Approx(3.71));
  for (std::size_t sp = 0; sp < 2; ++sp) {
    const double speed = sp == 0 ? 1.0 : c;
    for (std::size_t i : {0u, 3u, 17u, 100u}) {
      const cplx rot = std::polar(1.0, t * br(speed, g.frequency(i)));
      CHECK(std::abs(s.plus[sp].coeffs[i] - rot * s0.plus[sp].coeffs[i]) < 1e-12);
      CHECK(std::abs(s.minus[sp].coeffs[i] - std::conj(rot) * s0.minus[sp].coeffs[i]) < 1e-12);
    }
  }
  CHECK(state_diff(s0, SystemState{0.0, c, profile_of(s).plus, profile_of(s).minus}) < 1e-12);
  CHECK_THROWS_AS(step(s, 0.0, {}), std::invalid_argument);
}

TEST_CASE("profile at t = 0") {
  const Grid g(1, 32, 6.0);
  const auto s = smooth_state(g, 2.0, 1.0);
  const auto p = profile_of(s);
  CHECK(p.plus[0].coeffs == s.plus[0].coeffs);
  CHECK(p.minus[1].coeffs == s.minus[1].coeffs);
}

TEST_CASE("time-step convergence order") {
  const Grid g(1, 64, 16.0);
  const auto s0 = smooth_state(g, 2.0, 0.5);
  const auto q = all_on();
  const double T = 1.0;
  const auto ref = evolve(s0, T, 0.05 / 8.0, q);
  const double e1 = state_diff(evolve(s0, T, 0.05, q), ref);
  const double e2 = state_diff(evolve(s0, T, 0.025, q), ref);
  const double order = std::log2(e1 / e2);
  MESSAGE("observed order " << order);
  CHECK(std::abs(order - nominal_order(Scheme::lawson_rk4)) <= 0.3);
}

TEST_CASE("profile drift scales quadratically with the amplitude") {
  const Grid g(1, 64, 16.0);
  const auto q = all_on();
  const auto a = smooth_state(g, 2.0, 1e-3), b = smooth_state(g, 2.0, 1e-2);
  const double da = profile_drift(a, evolve(a, 5.0, 0.05, q));
  const double db = profile_drift(b, evolve(b, 5.0, 0.05, q));
  const double ratio = db / da;
  CHECK(ratio >= 100.0 / 2.0);
  CHECK(ratio <= 100.0 * 2.0);
}

TEST_CASE("physical fields stay real") {
  const Grid g(1, 128, 20.0);
  auto s = smooth_state(g, 3.0, 0.3);
  s = evolve(s, 5.0, 0.05, all_on());
  for (std::size_t sp = 0; sp < 2; ++sp) {
    const auto r = reconstruct(s, species_tag(sp));
    for (const auto* f : {&r.u, &r.u_t}) {
      double re = 0.0, im = 0.0;
      for (const auto& v : inverse(*f)) {
        re = std::max(re, std::abs(v.real()));
        im = std::max(im, std::abs(v.imag()));
      }
      CHECK(re > 1e-3);
      CHECK(im <= 1e-12);
    }
  }
}

TEST_CASE("band energy") {
  const Grid g(1, 128, 20.0);
  const auto s = smooth_state(g, 3.0, 1.0);
  CHECK(band_energy(s, 100.0, 200.0) == 0.0);
  const double full = band_energy(s, 0.0, 1e9);
  double parseval = 0.0;
  for (std::size_t sp = 0; sp < 2; ++sp) parseval += std::pow(l2_norm(s.plus[sp]), 2) + std::pow(l2_norm(s.minus[sp]), 2);
  CHECK(full == doctest::Approx(parseval).epsilon(1e-12));
  CHECK(full == doctest::Approx(linear_energy(s)).epsilon(1e-12));
  const double parts = band_energy(s, 0.0, 1.3) + band_energy(s, 1.3, 4.0) + band_energy(s, 4.0, 1e9);
  CHECK(parts == doctest::Approx(full).epsilon(1e-12));
  CHECK(band_energy(s, 0.0, 1e9, SpeedTag::one) + band_energy(s, 0.0, 1e9, SpeedTag::c) ==
        doctest::Approx(full).epsilon(1e-12));
  CHECK_THROWS_AS(band_energy(s, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("blow-up guard") {
  const Grid g(1, 64, 16.0);
  const auto s = smooth_state(g, 2.0, 50.0);
  CHECK_THROWS_AS(evolve(s, 1.0, 0.1, all_on()), StepRejected);
}

}
