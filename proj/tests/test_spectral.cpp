#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kgres/spectral.hpp"

using namespace kgres;

namespace {

std::vector<cplx> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid(2, 16, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 12, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(3, 128, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 16, 0.0), std::invalid_argument);
  const Grid g(1, 8, 4.0);
  CHECK(g.frequency(3) == doctest::Approx(3 * 2 * std::numbers::pi / 4.0));
  CHECK(g.frequency(5) == doctest::Approx(-3 * 2 * std::numbers::pi / 4.0));
  CHECK(g.coordinate(0) == -2.0);
}

TEST_CASE("round trip and Parseval") {
  for (const Grid& g : {Grid(1, 256, 10.0), Grid(3, 16, 7.0)}) {
    const auto v = random_values(g.size(), 1);
    const auto f = forward(g, v);
    const auto back = inverse(f);
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(back[i] - v[i]));
    CHECK(err < 1e-12);
    CHECK(l2_norm(f) == doctest::Approx(lp_norm(g, v, 2.0)).epsilon(1e-12));
  }
  const Grid g(1, 16, 1.0);
  CHECK_THROWS_AS(forward(g, std::vector<cplx>(8)), std::invalid_argument);
}

TEST_CASE("Gaussian is its own transform") {
  const Grid g1(1, 256, 40.0);
  std::vector<cplx> v(g1.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-0.5 * std::pow(g1.coordinate(i), 2));
  const auto f1 = forward(g1, v);
  double err = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    err = std::max(err, std::abs(f1.coeffs[i] - std::exp(-0.5 * std::pow(g1.frequency(i), 2))));
  CHECK(err < 1e-12);

  const Grid g3(3, 32, 14.0);
  std::vector<cplx> w(g3.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto x = g3.position(i);
    w[i] = std::exp(-0.5 * dot(x, x));
  }
  const auto f3 = forward(g3, w);
  err = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto k = g3.wavevector(i);
    err = std::max(err, std::abs(f3.coeffs[i] - std::exp(-0.5 * dot(k, k))));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("product is the normalised circular convolution") {
  const Grid g(1, 32, 5.0);
  const auto a = random_values(g.size(), 2), b = random_values(g.size(), 3);
  std::vector<cplx> ab(g.size());
  for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = a[i] * b[i];
  const auto fa = forward(g, a), fb = forward(g, b), fab = forward(g, ab);
  const double scale = g.dk() / std::sqrt(2 * std::numbers::pi);
  const std::size_t n = g.size();
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = 0;
    for (std::size_t q = 0; q < n; ++q) s += fa.coeffs[q] * fb.coeffs[(k + n - q) % n];
    CHECK(std::abs(scale * s - fab.coeffs[k]) < 1e-11);
  }
}

TEST_CASE("multiplier and norms") {
  const Grid g(1, 64, 8.0);
  const auto f = forward(g, random_values(g.size(), 4));
  const auto z = apply_multiplier(f, [](const Vec3&) { return 0.0; });
  CHECK(l2_norm(z) == 0.0);
  const auto same = apply_multiplier(f, [](const Vec3&) { return 1.0; });
  CHECK(same.coeffs == f.coeffs);
  std::vector<cplx> ones(g.size(), cplx(2.0, 0.0));
  CHECK(lp_norm(g, ones, std::numeric_limits<double>::infinity()) == 2.0);
  CHECK(lp_norm(g, ones, 1.0) == doctest::Approx(2.0 * 8.0));
  CHECK(lp_norm(g, ones, 4.0) == doctest::Approx(2.0 * std::pow(8.0, 0.25)));
}

TEST_CASE("binary field block") {
  const Grid g(3, 4, 2.5);
  const SpectralField f(g, random_values(g.size(), 5));
  std::stringstream buf;
  write_field(buf, f);
  const std::string bytes = buf.str();
  CHECK(bytes.size() == 8 * 5 + 16 * g.size());
  std::uint64_t dims = 0, n0 = 0;
  double L = 0;
  std::memcpy(&dims, bytes.data(), 8);
  std::memcpy(&n0, bytes.data() + 8, 8);
  std::memcpy(&L, bytes.data() + 32, 8);
  CHECK(dims == 3);
  CHECK(n0 == 4);
  CHECK(L == 2.5);
  const auto back = read_field(buf);
  CHECK(back.grid == g);
  CHECK(back.coeffs == f.coeffs);

  std::stringstream cut(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_field(cut), std::runtime_error);
}

TEST_CASE("spectrum csv") {
  const Grid g(1, 4, 2 * std::numbers::pi);
  SpectralField f(g);
  f.coeffs[1] = {1.5, -2.0};
  std::ostringstream out;
  write_spectrum_csv(out, f);
  CHECK(out.str() == "index,k1,k2,k3,re,im\n0,0,0,0,0,0\n1,1,0,0,1.5,-2\n2,-2,0,0,0,0\n3,-1,0,0,0,0\n");
}

TEST_CASE("concurrent transforms agree") {
  const Grid g(1, 512, 3.0);
  const auto v = random_values(g.size(), 6);
  const auto ref = forward(g, v);
  std::vector<std::thread> pool;
  std::vector<int> ok(8, 0);
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&, t] {
      const Grid h(1, 256u << (t % 3), 3.0);
      const auto local = forward(h, random_values(h.size(), 7));
      (void)local;
      ok[static_cast<std::size_t>(t)] = forward(g, v).coeffs == ref.coeffs;
    });
  }
  for (auto& th : pool) th.join();
  for (int x : ok) CHECK(x == 1);
}

}
