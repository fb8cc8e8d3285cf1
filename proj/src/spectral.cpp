#include "kgres/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "kgres/report_io.hpp"

namespace kgres {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (dims, n, direction) and kept.
class PlanCache {
 public:
  fftw_plan get(int dims, std::size_t n, int direction) {
    const std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(dims, n, direction);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = dims == 1 ? n : n * n * n;
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    const int ni = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = dims == 1 ? fftw_plan_dft_1d(ni, in, out, direction, flags)
                               : fftw_plan_dft_3d(ni, ni, ni, in, out, direction, flags);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void transform(const Grid& grid, const cplx* in, cplx* out, int direction) {
  fftw_plan plan = plan_cache().get(grid.dims(), grid.n(), direction);
  // std::complex<double> is layout-compatible with fftw_complex.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

// (-1)^(i0 + i1 + i2) from the half-box shift of the grid origin.
double parity(const Grid& grid, std::size_t flat) {
  std::size_t s = 0;
  const auto n = grid.n();
  for (int a = 0; a < grid.dims(); ++a) {
    s += flat % n;
    flat /= n;
  }
  return (s & 1U) ? -1.0 : 1.0;
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
  out.write(b, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("truncated field block");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

Grid::Grid(int dims, std::size_t n, double box_length) : dims_(dims), n_(n), box_length_(box_length) {
  if (dims != 1 && dims != 3) throw std::invalid_argument("grid dimension must be 1 or 3");
  if (n < 2 || !std::has_single_bit(n)) throw std::invalid_argument("grid size must be a power of two");
  if (dims == 3 && n > 64) throw std::invalid_argument("3-D grids are limited to 64 points per axis");
  if (!(box_length > 0.0) || !std::isfinite(box_length)) throw std::invalid_argument("box length must be positive");
}

std::size_t Grid::size() const { return dims_ == 1 ? n_ : n_ * n_ * n_; }
double Grid::dk() const { return 2.0 * std::numbers::pi / box_length_; }
double Grid::cell_volume() const { return std::pow(dx(), dims_); }
double Grid::frequency_cell_volume() const { return std::pow(dk(), dims_); }

long Grid::signed_index(std::size_t i) const {
  const auto k = static_cast<long>(i);
  return i < n_ / 2 ? k : k - static_cast<long>(n_);
}

double Grid::frequency(std::size_t i) const { return static_cast<double>(signed_index(i)) * dk(); }

Vec3 Grid::wavevector(std::size_t flat) const {
  if (dims_ == 1) return {frequency(flat), 0.0, 0.0};
  const std::size_t i2 = flat % n_;
  const std::size_t i1 = (flat / n_) % n_;
  const std::size_t i0 = flat / (n_ * n_);
  return {frequency(i0), frequency(i1), frequency(i2)};
}

Vec3 Grid::position(std::size_t flat) const {
  if (dims_ == 1) return {coordinate(flat), 0.0, 0.0};
  const std::size_t i2 = flat % n_;
  const std::size_t i1 = (flat / n_) % n_;
  const std::size_t i0 = flat / (n_ * n_);
  return {coordinate(i0), coordinate(i1), coordinate(i2)};
}

SpectralField::SpectralField(Grid g, std::vector<cplx> c) : grid(g), coeffs(std::move(c)) {
  if (coeffs.size() != grid.size()) throw std::invalid_argument("coefficient count does not match grid");
}

SpectralField forward(const Grid& grid, std::span<const cplx> values) {
  if (values.size() != grid.size()) throw std::invalid_argument("field size does not match grid");
  SpectralField out(grid);
  transform(grid, values.data(), out.coeffs.data(), FFTW_FORWARD);
  const double scale = std::pow(2.0 * std::numbers::pi, -0.5 * grid.dims()) * grid.cell_volume();
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] *= scale * parity(grid, i);
  return out;
}

std::vector<cplx> inverse(const SpectralField& field) {
  const auto& grid = field.grid;
  std::vector<cplx> shifted(field.coeffs.size());
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = field.coeffs[i] * parity(grid, i);
  std::vector<cplx> out(shifted.size());
  transform(grid, shifted.data(), out.data(), FFTW_BACKWARD);
  const double scale = std::pow(2.0 * std::numbers::pi, -0.5 * grid.dims()) * grid.frequency_cell_volume();
  for (auto& v : out) v *= scale;
  return out;
}

void raw_dft(const Grid& shape, std::span<const cplx> in, std::span<cplx> out, bool backward) {
  if (in.size() != shape.size() || out.size() != shape.size()) throw std::invalid_argument("raw_dft size mismatch");
  transform(shape, in.data(), out.data(), backward ? FFTW_BACKWARD : FFTW_FORWARD);
}

SpectralField apply_multiplier(const SpectralField& field, const std::function<double(const Vec3&)>& m) {
  SpectralField out = field;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] *= m(field.grid.wavevector(i));
  return out;
}

double lp_norm(const Grid& grid, std::span<const cplx> values, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm needs p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  // Scale by the max first so that large p does not overflow.
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : values) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s * grid.cell_volume(), 1.0 / p);
}

double l2_norm(const SpectralField& field) {
  double s = 0.0;
  for (const auto& v : field.coeffs) s += std::norm(v);
  return std::sqrt(s * field.grid.frequency_cell_volume());
}

void write_field(std::ostream& out, const SpectralField& field) {
  const auto& g = field.grid;
  put_u64(out, static_cast<std::uint64_t>(g.dims()));
  for (int a = 0; a < g.dims(); ++a) put_u64(out, g.n());
  put_f64(out, g.box_length());
  for (const auto& v : field.coeffs) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
}

SpectralField read_field(std::istream& in) {
  const auto dims = get_u64(in);
  if (dims != 1 && dims != 3) throw std::runtime_error("field block has unsupported dimension");
  std::uint64_t n = 0;
  for (std::uint64_t a = 0; a < dims; ++a) {
    const auto s = get_u64(in);
    if (a > 0 && s != n) throw std::runtime_error("field block has unequal axis sizes");
    n = s;
  }
  const double length = get_f64(in);
  const Grid grid = [&] {
    try {
      return Grid(static_cast<int>(dims), static_cast<std::size_t>(n), length);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("field block: ") + e.what());
    }
  }();
  SpectralField field(grid);
  for (auto& v : field.coeffs) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = {re, im};
  }
  return field;
}

void write_spectrum_csv(std::ostream& out, const SpectralField& field) {
  out << "index,k1,k2,k3,re,im\n";
  for (std::size_t i = 0; i < field.coeffs.size(); ++i) {
    const Vec3 k = field.grid.wavevector(i);
    out << i << ',' << io::format_double(k[0]) << ',' << io::format_double(k[1]) << ','
        << io::format_double(k[2]) << ',' << io::format_double(field.coeffs[i].real()) << ','
        << io::format_double(field.coeffs[i].imag()) << '\n';
  }
}

}  // namespace kgres
