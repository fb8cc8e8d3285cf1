#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "kgres/dispersion.hpp"

using namespace kgres;

namespace {

FrequencyPair random_pair(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}};
}

double br(double c, const Vec3& x) { return std::sqrt(1.0 + c * c * dot(x, x)); }

}  // namespace

TEST_SUITE("dispersion") {

TEST_CASE("brackets") {
  const SpeedPair s(5.0);
  CHECK(bracket(s, SpeedTag::c, 3.0) == doctest::Approx(std::sqrt(226.0)).epsilon(1e-15));
  CHECK(bracket(s, SpeedTag::one, 0.0) == 1.0);
  CHECK(bracket(s, SpeedTag::one, Vec3{1, 2, 2}) == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("degenerate speeds are rejected") {
  CHECK_THROWS_AS(SpeedPair(1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpeedPair(0.0), std::invalid_argument);
  CHECK_THROWS_AS(SpeedPair(-2.0), std::invalid_argument);
}

TEST_CASE("labels round trip") {
  const auto all = enumerate_phases();
  CHECK(all.size() == 64);
  for (const auto& e : all) CHECK(parse_phase_index(to_string(e.idx)) == e.idx);
  CHECK(parse_phase_index("c11+−−") == parse_phase_index("c11+--"));
  CHECK_THROWS_AS(parse_phase_index("c11+-"), std::invalid_argument);
  CHECK_THROWS_AS(parse_phase_index("x11+--"), std::invalid_argument);
}

TEST_CASE("phase matches the explicit formula") {
  const SpeedPair s(5.0);
  std::mt19937_64 rng(1);
  const auto idx = parse_phase_index("c11+--");
  const auto idx2 = parse_phase_index("1c1-+-");
  for (int i = 0; i < 100; ++i) {
    const auto p = random_pair(rng, 2.0);
    const double direct = br(5, p.xi) - br(1, p.eta) - br(1, p.xi - p.eta);
    CHECK(phase(s, idx, p) == doctest::Approx(direct).epsilon(1e-14));
    const double direct2 = -br(1, p.xi) + br(5, p.eta) - br(1, p.xi - p.eta);
    CHECK(phase(s, idx2, p) == doctest::Approx(direct2).epsilon(1e-14));
  }
}

TEST_CASE("symmetry reduction preserves the phase") {
  const SpeedPair s(3.0);
  std::mt19937_64 rng(2);
  std::set<PhaseIndex> canon;
  for (const auto& e : enumerate_phases()) {
    canon.insert(e.canonical);
    for (int i = 0; i < 10; ++i) {
      const auto p = random_pair(rng, 3.0);
      const double lhs = phase(s, e.idx, p);
      const double rhs = e.transform.sign * phase(s, e.canonical, e.transform.apply(p));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
    // canonical is the smallest element of the orbit
    for (const auto& o : orbit(e.idx)) CHECK_FALSE(o < e.canonical);
  }
  const auto listed = canonical_phases();
  CHECK(std::set<PhaseIndex>(listed.begin(), listed.end()) == canon);
  CHECK(std::is_sorted(listed.begin(), listed.end()));
}

TEST_CASE("negation and swap are involutions") {
  for (const auto& e : enumerate_phases()) {
    CHECK(negate(negate(e.idx)) == e.idx);
    CHECK(swap_arguments(swap_arguments(e.idx)) == e.idx);
  }
}

TEST_CASE("gradients agree with central differences") {
  const SpeedPair s(5.0);
  std::mt19937_64 rng(3);
  const double h = 1e-6;
  for (const auto& e : enumerate_phases()) {
    const auto p = random_pair(rng, 1.5);
    const auto ge = grad_eta_phase(s, e.idx, p);
    const auto gx = grad_xi_phase(s, e.idx, p);
    for (int a = 0; a < 3; ++a) {
      auto pp = p, pm = p;
      pp.eta[a] += h;
      pm.eta[a] -= h;
      CHECK(ge[a] == doctest::Approx((phase(s, e.idx, pp) - phase(s, e.idx, pm)) / (2 * h)).epsilon(1e-6));
      pp = p;
      pm = p;
      pp.xi[a] += h;
      pm.xi[a] -= h;
      CHECK(gx[a] == doctest::Approx((phase(s, e.idx, pp) - phase(s, e.idx, pm)) / (2 * h)).epsilon(1e-6));
    }
  }
}

}
