#include <atomic>

#include "kgres/kernels.hpp"

namespace kgres::kernels {

#ifndef KGRES_HAVE_AVX2
namespace avx2 {
bool available() { return false; }
void time_resonance_gap(const GapParams& p, std::span<const double> r, std::span<double> out) {
  scalar::time_resonance_gap(p, r, out);
}
void complex_multiply(std::span<cplx> x, std::span<const cplx> m) { scalar::complex_multiply(x, m); }
double squared_norm(std::span<const cplx> x) { return scalar::squared_norm(x); }
cplx weighted_triple_sum(std::span<const double> w, std::span<const cplx> a, std::span<const cplx> b) {
  return scalar::weighted_triple_sum(w, a, b);
}
}  // namespace avx2
#endif

namespace {

// -1: follow detection; otherwise the forced Isa value.
std::atomic<int> forced{-1};

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const Isa isa = avx2::available() ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() {
  const int f = forced.load(std::memory_order_relaxed);
  if (f < 0) return detected_isa();
  const auto isa = static_cast<Isa>(f);
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) return Isa::scalar;
  return isa;
}

void force_isa(std::optional<Isa> isa) {
  forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void time_resonance_gap(const GapParams& p, std::span<const double> r, std::span<double> out) {
  if (active_isa() == Isa::avx2) return avx2::time_resonance_gap(p, r, out);
  scalar::time_resonance_gap(p, r, out);
}

void complex_multiply(std::span<cplx> x, std::span<const cplx> m) {
  if (active_isa() == Isa::avx2) return avx2::complex_multiply(x, m);
  scalar::complex_multiply(x, m);
}

double squared_norm(std::span<const cplx> x) {
  if (active_isa() == Isa::avx2) return avx2::squared_norm(x);
  return scalar::squared_norm(x);
}

cplx weighted_triple_sum(std::span<const double> w, std::span<const cplx> a, std::span<const cplx> b) {
  if (active_isa() == Isa::avx2) return avx2::weighted_triple_sum(w, a, b);
  return scalar::weighted_triple_sum(w, a, b);
}

}  // namespace kgres::kernels
