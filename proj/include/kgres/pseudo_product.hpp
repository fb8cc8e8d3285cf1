#pragma once

// Pseudo-products T_m(f, g) = F^{-1} int m(xi, eta) f^(eta) g^(xi - eta) d eta
// on a periodic grid. The discrete version is
//
//   T^(xi_k) = (2 pi)^{-d/2} dxi^d sum_q m(eta_q + zeta_r, eta_q) f^_q g^_r,
//   r = (k - q) mod n,
//
// with zeta_r the lattice frequency of the wrapped index r, so that T_1 = f g
// exactly and m = a(eta) b(xi - eta) gives (a(D) f)(b(D) g) exactly.
//
// Writing the table M[q, r] as sum_{a,b} c_{ab} e^{2 pi i (q a + r b)/n} turns
// T into sum c_{ab} f(. + a dx) g(. + b dx), hence
//
//   ||T_m(f, g)||_r <= (sum |c_{ab}|) ||f||_p ||g||_q,  1/p + 1/q = 1/r,
//
// with no further constant. sum |c_{ab}| is the discrete ||m^||_1.

#include <functional>
#include <vector>

#include "kgres/spectral.hpp"

namespace kgres {

using Symbol = std::function<double(const Vec3& xi, const Vec3& eta)>;

/// Symbol sampled on the lattice, stored row by row in the output index k:
/// values[k * size + q] = m(eta_q + zeta_{k-q}, eta_q).
struct SymbolTable {
  Grid grid;
  std::vector<double> values;
};

SymbolTable tabulate(const Grid& grid, const Symbol& m);

/// Table of chi((xi - lambda eta)/rho) with the argument taken on the lattice
/// modulo n, for integer lambda.
SymbolTable tabulate_translation(const Grid& grid, const std::function<double(const Vec3&)>& chi, double rho,
                                 long lambda);

/// Direct lattice sum; O(size^2). Throws std::invalid_argument on grid mismatch.
SpectralField pseudo_product(const SymbolTable& m, const SpectralField& f, const SpectralField& g);
SpectralField pseudo_product(const Symbol& m, const SpectralField& f, const SpectralField& g);

/// Fast path for m(xi, eta) = a(eta) b(xi - eta).
SpectralField separable_product(const std::function<double(const Vec3&)>& a,
                                const std::function<double(const Vec3&)>& b, const SpectralField& f,
                                const SpectralField& g);

struct SymbolNorm {
  double l1 = 0.0;
  double boundary_fraction = 0.0;  // share of sum |m| on the outer lattice shell
  bool truncation_warning = false; // boundary_fraction > 1%
};

/// sum |c_{ab}|; 1-D grids only (the table has size^2 entries).
SymbolNorm symbol_l1_norm(const SymbolTable& m);

struct TranslationNorm {
  double l1 = 0.0;
  long lambda = 0;             // lattice-commensurable value used
  double rounding_error = 0.0; // |lambda_requested - lambda|
};

/// ||m^||_1 for m = chi((xi - lambda eta)/rho) through a single d-dimensional
/// transform: n^{-d} sum |DFT(chi(zeta/rho))|. lambda is rounded to the
/// nearest integer; equal to symbol_l1_norm(tabulate_translation(...)).
TranslationNorm translation_symbol_l1_norm(const Grid& grid, const std::function<double(const Vec3&)>& chi,
                                           double rho, double lambda);

}  // namespace kgres
