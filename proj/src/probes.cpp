#include "kgres/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "kgres/smooth.hpp"

namespace kgres {

std::vector<ExponentTriple> holder_triples() {
  const double inf = std::numeric_limits<double>::infinity();
  return {{2, 2, 1}, {4, 4, 2}, {inf, 2, 2}, {2, inf, 2}, {3, 6, 2}, {inf, inf, inf}};
}

HolderProbe holder_probe(const Grid& grid, const Symbol& m, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("holder_probe needs trials >= 1");
  HolderProbe probe;
  const auto table = tabulate(grid, m);
  probe.bound = symbol_l1_norm(table);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> f(grid.size()), h(grid.size());
    for (auto& v : f) v = {g(rng), g(rng)};
    for (auto& v : h) v = {g(rng), g(rng)};
    const auto tf = inverse(pseudo_product(table, forward(grid, f), forward(grid, h)));
    for (const auto& e : holder_triples()) {
      const double ratio = lp_norm(grid, tf, e.r) / (lp_norm(grid, f, e.p) * lp_norm(grid, h, e.q));
      probe.max_ratio = std::max(probe.max_ratio, ratio);
    }
    ++probe.pairs;
  }
  probe.max_ratio_over_bound = probe.max_ratio / probe.bound.l1;
  return probe;
}

std::vector<TranslationRow> translation_uniformity(const Grid& grid, const std::vector<double>& rhos, double lambda) {
  const smooth::BumpProfile bump{};
  const auto chi = [&](const Vec3& z) { return bump(norm(z)); };
  std::vector<TranslationRow> rows;
  for (double rho : rhos) rows.push_back({rho, translation_symbol_l1_norm(grid, chi, rho, lambda).l1});
  return rows;
}

double radial_shell_ratio(const Grid& grid, double R, double rho, double s, const std::vector<double>& sigmas) {
  if (grid.dims() != 3) throw std::invalid_argument("radial_shell_ratio needs a 3-D grid");
  const smooth::BumpProfile bump{};
  double best = 0.0;
  for (double sigma : sigmas) {
    std::vector<cplx> f(grid.size()), weighted(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double r = norm(grid.position(i));
      f[i] = std::exp(-0.5 * r * r / (sigma * sigma));
      weighted[i] = std::pow(r, s) * f[i];
    }
    const auto shell = apply_multiplier(forward(grid, f), [&](const Vec3& xi) { return bump((norm(xi) - R) / rho); });
    best = std::max(best, l2_norm(shell) / lp_norm(grid, weighted, 2.0));
  }
  return best;
}

}  // namespace kgres
