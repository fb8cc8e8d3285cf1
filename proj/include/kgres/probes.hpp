#pragma once

// Empirical checks of the pseudo-product and multiplier bounds.

#include <cstdint>
#include <string>
#include <vector>

#include "kgres/pseudo_product.hpp"

namespace kgres {

struct ExponentTriple {
  double p, q, r;  // 1/p + 1/q = 1/r
};

/// (2,2,1), (4,4,2), (inf,2,2), (2,inf,2), (3,6,2), (inf,inf,inf)
std::vector<ExponentTriple> holder_triples();

struct HolderProbe {
  SymbolNorm bound;
  double max_ratio = 0.0;           // max ||T(f,g)||_r / (||f||_p ||g||_q)
  double max_ratio_over_bound = 0.0;
  int pairs = 0;
};

/// Random complex Gaussian field pairs on a 1-D grid.
HolderProbe holder_probe(const Grid& grid, const Symbol& m, int trials, std::uint64_t seed);

struct TranslationRow {
  double rho = 0.0;
  double l1 = 0.0;
};

/// ||m^||_1 of chi((xi - lambda eta)/rho) for each rho, chi the radial plateau bump.
std::vector<TranslationRow> translation_uniformity(const Grid& grid, const std::vector<double>& rhos, double lambda);

/// sup over Gaussians e^{-|x|^2/(2 sigma^2)} of
/// ||chi((|D| - R)/rho) f||_2 / || |x|^s f ||_2 on a 3-D grid.
double radial_shell_ratio(const Grid& grid, double R, double rho, double s, const std::vector<double>& sigmas);

}  // namespace kgres
