#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kgres/kernels.hpp"

namespace kgres::kernels::avx2 {

bool available() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

void time_resonance_gap(const GapParams& p, std::span<const double> r, std::span<double> out) {
  const std::size_t n = r.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
  const __m256d sign12_cl2 = _mm256_set1_pd((p.s1 * p.s2) * (p.c_l * p.c_l));
  const __m256d cl2 = _mm256_set1_pd(p.c_l * p.c_l);
  const __m256d ck2 = _mm256_set1_pd(p.c_k * p.c_k);
  const __m256d cm = _mm256_set1_pd(p.c_m);
  const __m256d s0 = _mm256_set1_pd(p.s0);
  const __m256d s1 = _mm256_set1_pd(p.s1);
  const __m256d s2 = _mm256_set1_pd(p.s2);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ri = _mm256_loadu_pd(r.data() + i);
    const __m256d bl = _mm256_sqrt_pd(_mm256_add_pd(one, _mm256_mul_pd(cl2, _mm256_mul_pd(ri, ri))));
    const __m256d u = _mm256_div_pd(_mm256_div_pd(_mm256_mul_pd(sign12_cl2, ri), bl), cm);
    const __m256d one_minus = _mm256_sub_pd(one, _mm256_mul_pd(u, u));
    const __m256d valid = _mm256_cmp_pd(one_minus, zero, _CMP_GT_OQ);
    const __m256d root = _mm256_sqrt_pd(_mm256_max_pd(one_minus, zero));
    const __m256d s = _mm256_div_pd(_mm256_div_pd(u, root), cm);
    const __m256d bm = _mm256_div_pd(one, root);
    const __m256d x = _mm256_add_pd(ri, s);
    const __m256d bk = _mm256_sqrt_pd(_mm256_add_pd(one, _mm256_mul_pd(ck2, _mm256_mul_pd(x, x))));
    const __m256d z = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(s0, bk), _mm256_mul_pd(s1, bl)),
                                    _mm256_mul_pd(s2, bm));
    _mm256_storeu_pd(out.data() + i, _mm256_blendv_pd(nan, z, valid));
  }
  if (i < n) scalar::time_resonance_gap(p, r.subspan(i), out.subspan(i));
}

void complex_multiply(std::span<cplx> x, std::span<const cplx> m) {
  const std::size_t n = x.size();
  auto* xp = reinterpret_cast<double*>(x.data());
  const auto* mp = reinterpret_cast<const double*>(m.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(xp + 2 * i);          // ar ai br bi
    const __m256d b = _mm256_loadu_pd(mp + 2 * i);          // cr ci dr di
    const __m256d b_re = _mm256_movedup_pd(b);               // cr cr dr dr
    const __m256d b_im = _mm256_permute_pd(b, 0xF);          // ci ci di di
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);          // ai ar bi br
    const __m256d res = _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
    _mm256_storeu_pd(xp + 2 * i, res);
  }
  if (i < n) scalar::complex_multiply(x.subspan(i), m.subspan(i));
}

double squared_norm(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const auto* xp = reinterpret_cast<const double*>(x.data());
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_fmadd_pd(a, a, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  if (i < n) total += scalar::squared_norm(x.subspan(i));
  return total;
}

cplx weighted_triple_sum(std::span<const double> w, std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t n = w.size();
  const auto* ap = reinterpret_cast<const double*>(a.data());
  const auto* bp = reinterpret_cast<const double*>(b.data());
  __m256d acc = _mm256_setzero_pd();  // re im re im
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(ap + 2 * i);
    const __m256d bv = _mm256_loadu_pd(bp + 2 * i);
    const __m256d b_re = _mm256_movedup_pd(bv);
    const __m256d b_im = _mm256_permute_pd(bv, 0xF);
    const __m256d a_sw = _mm256_permute_pd(av, 0x5);
    const __m256d prod = _mm256_fmaddsub_pd(av, b_re, _mm256_mul_pd(a_sw, b_im));
    const __m256d wv = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    acc = _mm256_fmadd_pd(wv, prod, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cplx total{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  if (i < n) total += scalar::weighted_triple_sum(w.subspan(i), a.subspan(i), b.subspan(i));
  return total;
}

}  // namespace kgres::kernels::avx2
