#include "kgres/pseudo_product.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "kgres/kernels.hpp"

namespace kgres {

namespace {

// Flat index of (a + c b) mod n, axis by axis.
std::size_t wrap_combine(const Grid& grid, std::size_t a, std::size_t b, long c) {
  const auto n = static_cast<long>(grid.n());
  std::size_t out = 0;
  std::size_t stride = 1;
  for (int axis = 0; axis < grid.dims(); ++axis) {
    const long ai = static_cast<long>(a % grid.n());
    const long bi = static_cast<long>(b % grid.n());
    long v = (ai + c * bi) % n;
    if (v < 0) v += n;
    out += static_cast<std::size_t>(v) * stride;
    stride *= grid.n();
    a /= grid.n();
    b /= grid.n();
  }
  return out;
}

std::size_t wrap_sub(const Grid& grid, std::size_t k, std::size_t q) { return wrap_combine(grid, k, q, -1); }

void check_same(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

double product_scale(const Grid& g) {
  return std::pow(2.0 * std::numbers::pi, -0.5 * g.dims()) * g.frequency_cell_volume();
}

// Row k of the table for an evaluable symbol.
void symbol_row(const Grid& grid, const Symbol& m, std::size_t k, std::vector<double>& row) {
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const Vec3 eta = grid.wavevector(q);
    row[q] = m(eta + grid.wavevector(wrap_sub(grid, k, q)), eta);
  }
}

cplx row_sum(const Grid& grid, std::size_t k, const std::vector<double>& row, const SpectralField& f,
             const SpectralField& g, std::vector<cplx>& gathered) {
  for (std::size_t q = 0; q < grid.size(); ++q) gathered[q] = g.coeffs[wrap_sub(grid, k, q)];
  return kernels::weighted_triple_sum(row, f.coeffs, gathered);
}

bool on_outer_shell(const Grid& grid, std::size_t flat) {
  const long edge = static_cast<long>(grid.n() / 2) - std::max<long>(1, static_cast<long>(grid.n() / 16));
  for (int axis = 0; axis < grid.dims(); ++axis) {
    if (std::labs(grid.signed_index(flat % grid.n())) >= edge) return true;
    flat /= grid.n();
  }
  return false;
}

}  // namespace

SymbolTable tabulate(const Grid& grid, const Symbol& m) {
  const std::size_t n = grid.size();
  SymbolTable t{grid, std::vector<double>(n * n)};
  std::vector<double> row(n);
  for (std::size_t k = 0; k < n; ++k) {
    symbol_row(grid, m, k, row);
    std::copy(row.begin(), row.end(), t.values.begin() + static_cast<std::ptrdiff_t>(k * n));
  }
  return t;
}

SymbolTable tabulate_translation(const Grid& grid, const std::function<double(const Vec3&)>& chi, double rho,
                                 long lambda) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  const std::size_t n = grid.size();
  SymbolTable t{grid, std::vector<double>(n * n)};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t q = 0; q < n; ++q) {
      // xi - lambda eta = zeta_r + (1 - lambda) eta_q on the lattice.
      const std::size_t s = wrap_combine(grid, wrap_sub(grid, k, q), q, 1 - lambda);
      t.values[k * n + q] = chi((1.0 / rho) * grid.wavevector(s));
    }
  }
  return t;
}

SpectralField pseudo_product(const SymbolTable& m, const SpectralField& f, const SpectralField& g) {
  check_same(f.grid, g.grid);
  check_same(m.grid, f.grid);
  const auto& grid = f.grid;
  const std::size_t n = grid.size();
  SpectralField out(grid);
  std::vector<double> row(n);
  std::vector<cplx> gathered(n);
  const double scale = product_scale(grid);
  for (std::size_t k = 0; k < n; ++k) {
    std::copy_n(m.values.begin() + static_cast<std::ptrdiff_t>(k * n), n, row.begin());
    out.coeffs[k] = scale * row_sum(grid, k, row, f, g, gathered);
  }
  return out;
}

SpectralField pseudo_product(const Symbol& m, const SpectralField& f, const SpectralField& g) {
  check_same(f.grid, g.grid);
  const auto& grid = f.grid;
  const std::size_t n = grid.size();
  SpectralField out(grid);
  std::vector<double> row(n);
  std::vector<cplx> gathered(n);
  const double scale = product_scale(grid);
  for (std::size_t k = 0; k < n; ++k) {
    symbol_row(grid, m, k, row);
    out.coeffs[k] = scale * row_sum(grid, k, row, f, g, gathered);
  }
  return out;
}

SpectralField separable_product(const std::function<double(const Vec3&)>& a,
                                const std::function<double(const Vec3&)>& b, const SpectralField& f,
                                const SpectralField& g) {
  check_same(f.grid, g.grid);
  auto fa = inverse(apply_multiplier(f, a));
  const auto gb = inverse(apply_multiplier(g, b));
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= gb[i];
  return forward(f.grid, fa);
}

SymbolNorm symbol_l1_norm(const SymbolTable& m) {
  const auto& grid = m.grid;
  if (grid.dims() != 1) throw std::invalid_argument("symbol_l1_norm is limited to 1-D grids");
  const std::size_t n = grid.size();

  // Re-index to M[q][r] and transform along both axes.
  std::vector<cplx> table(n * n);
  SymbolNorm result;
  double total = 0.0;
  double boundary = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t r = wrap_sub(grid, k, q);
      const double v = m.values[k * n + q];
      table[q * n + r] = v;
      total += std::abs(v);
      if (on_outer_shell(grid, q) || on_outer_shell(grid, r)) boundary += std::abs(v);
    }
  }
  std::vector<cplx> in(n), out(n);
  for (std::size_t q = 0; q < n; ++q) {
    std::copy_n(table.begin() + static_cast<std::ptrdiff_t>(q * n), n, in.begin());
    raw_dft(grid, in, out);
    std::copy(out.begin(), out.end(), table.begin() + static_cast<std::ptrdiff_t>(q * n));
  }
  double l1 = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t q = 0; q < n; ++q) in[q] = table[q * n + r];
    raw_dft(grid, in, out);
    for (const auto& v : out) l1 += std::abs(v);
  }
  result.l1 = l1 / static_cast<double>(n * n);
  result.boundary_fraction = total > 0.0 ? boundary / total : 0.0;
  result.truncation_warning = result.boundary_fraction > 0.01;
  return result;
}

TranslationNorm translation_symbol_l1_norm(const Grid& grid, const std::function<double(const Vec3&)>& chi,
                                           double rho, double lambda) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  TranslationNorm result;
  result.lambda = std::lround(lambda);
  result.rounding_error = std::abs(lambda - static_cast<double>(result.lambda));
  const std::size_t n = grid.size();
  std::vector<cplx> h(n), hh(n);
  for (std::size_t s = 0; s < n; ++s) h[s] = chi((1.0 / rho) * grid.wavevector(s));
  raw_dft(grid, h, hh);
  double l1 = 0.0;
  for (const auto& v : hh) l1 += std::abs(v);
  result.l1 = l1 / static_cast<double>(n);
  return result;
}

}  // namespace kgres
