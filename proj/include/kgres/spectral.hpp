#pragma once

// Periodic grid functions on [-L/2, L/2)^d, d = 1 or 3, stored through their
// Fourier coefficients
//
//   f^(xi_k) = (2 pi)^{-d/2} dx^d sum_j f(x_j) e^{-i x_j . xi_k},
//   f(x_j)   = (2 pi)^{-d/2} dxi^d sum_k f^(xi_k) e^{i x_j . xi_k},
//
// with x_j = -L/2 + j dx and xi_k = k dxi, dxi = 2 pi / L. Coefficients are in
// FFT order (k >= n/2 stands for k - n). This pair is unitary for the
// dx- and dxi-weighted l^2 norms, and the circular convolution
// (2 pi)^{-d/2} dxi^d sum_q f^_q g^_{k-q} is exactly the transform of f g.

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "kgres/vec3.hpp"

namespace kgres {

using cplx = std::complex<double>;

class Grid {
 public:
  /// dims in {1, 3}; n a power of two, n <= 64 in 3-D; box_length > 0.
  Grid(int dims, std::size_t n, double box_length);

  int dims() const { return dims_; }
  std::size_t n() const { return n_; }
  double box_length() const { return box_length_; }
  std::size_t size() const;
  double dx() const { return box_length_ / static_cast<double>(n_); }
  double dk() const;
  /// dx^d and dxi^d.
  double cell_volume() const;
  double frequency_cell_volume() const;

  /// Signed lattice frequency of axis index i (FFT order).
  double frequency(std::size_t i) const;
  double coordinate(std::size_t i) const { return -0.5 * box_length_ + static_cast<double>(i) * dx(); }
  /// Signed integer index of axis position i.
  long signed_index(std::size_t i) const;

  Vec3 wavevector(std::size_t flat) const;
  Vec3 position(std::size_t flat) const;

  bool operator==(const Grid& other) const = default;

 private:
  int dims_;
  std::size_t n_;
  double box_length_;
};

struct SpectralField {
  Grid grid;
  std::vector<cplx> coeffs;

  SpectralField(Grid g) : grid(g), coeffs(g.size()) {}
  SpectralField(Grid g, std::vector<cplx> c);
};

/// Throws std::invalid_argument when values.size() != grid.size().
SpectralField forward(const Grid& grid, std::span<const cplx> values);
std::vector<cplx> inverse(const SpectralField& field);

/// Plain DFT sum_j x_j e^{-+2 pi i j.k / n} on the index shape of `shape`,
/// without the grid's normalisation or origin shift.
void raw_dft(const Grid& shape, std::span<const cplx> in, std::span<cplx> out, bool backward = false);

/// Multiply every coefficient by m(xi).
SpectralField apply_multiplier(const SpectralField& field, const std::function<double(const Vec3&)>& m);

/// (dx^d sum |f|^p)^{1/p}; p = infinity gives the max.
double lp_norm(const Grid& grid, std::span<const cplx> values, double p);
/// (dxi^d sum |f^|^2)^{1/2}
double l2_norm(const SpectralField& field);

/// Flat binary block: dims, per-axis sizes and box_length as little-endian
/// 64-bit values, then the coefficients as interleaved little-endian doubles.
void write_field(std::ostream& out, const SpectralField& field);
/// Throws std::runtime_error on a truncated or inconsistent block.
SpectralField read_field(std::istream& in);

/// CSV "index,k1,k2,k3,re,im" in FFT order.
void write_spectrum_csv(std::ostream& out, const SpectralField& field);

}  // namespace kgres
