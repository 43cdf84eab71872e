#include <immintrin.h>

#include "hamforge/kernels.hpp"

namespace hamforge::kernels {
namespace {

inline __m256i load4_i8_as_i64(const std::int8_t* p) {
  std::int32_t raw;
  __builtin_memcpy(&raw, p, 4);
  return _mm256_cvtepi8_epi64(_mm_cvtsi32_si128(raw));
}

std::int64_t sign_corr_i64(const std::int64_t* w, const std::int8_t* a, const std::int8_t* b,
                           std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t l = 0;
  for (; l + 4 <= n; l += 4) {
    __m256i va = load4_i8_as_i64(a + l);
    __m256i vb = load4_i8_as_i64(b + l);
    __m256i vw = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + l));
    // all-ones where signs differ; (w ^ m) - m negates those lanes
    __m256i neg = _mm256_xor_si256(_mm256_cmpeq_epi64(va, vb), _mm256_set1_epi64x(-1));
    acc = _mm256_add_epi64(acc, _mm256_sub_epi64(_mm256_xor_si256(vw, neg), neg));
  }
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::int64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; l < n; ++l) total += (a[l] == b[l]) ? w[l] : -w[l];
  return total;
}

double sign_corr_f64(const double* w, const std::int8_t* a, const std::int8_t* b, std::size_t n) {
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t l = 0;
  for (; l + 4 <= n; l += 4) {
    __m256i va = load4_i8_as_i64(a + l);
    __m256i vb = load4_i8_as_i64(b + l);
    __m256d diff = _mm256_castsi256_pd(
        _mm256_xor_si256(_mm256_cmpeq_epi64(va, vb), _mm256_set1_epi64x(-1)));
    __m256d vw = _mm256_loadu_pd(w + l);
    acc = _mm256_add_pd(acc, _mm256_xor_pd(vw, _mm256_and_pd(diff, sign_bit)));
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  s = _mm_hadd_pd(s, s);
  double total = _mm_cvtsd_f64(s);
  for (; l < n; ++l) total += (a[l] == b[l]) ? w[l] : -w[l];
  return total;
}

void complex_mul(std::complex<double>* x, const std::complex<double>* y, std::size_t n) {
  double* xd = reinterpret_cast<double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    __m256d yr = _mm256_movedup_pd(vy);        // br br
    __m256d yi = _mm256_permute_pd(vy, 0xF);   // bi bi
    __m256d xs = _mm256_permute_pd(vx, 0x5);   // ai ar
    // (ar*br - ai*bi, ai*br + ar*bi)
    _mm256_storeu_pd(xd + 2 * i, _mm256_addsub_pd(_mm256_mul_pd(vx, yr), _mm256_mul_pd(xs, yi)));
  }
  for (; i < n; ++i) {
    const double ar = x[i].real(), ai = x[i].imag();
    const double br = y[i].real(), bi = y[i].imag();
    x[i] = {ar * br - ai * bi, ai * br + ar * bi};
  }
}

// exact for 0 <= v < 2^52
inline __m256d u64_to_f64(__m256i v) {
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, magic)),
                       _mm256_set1_pd(4503599627370496.0));
}

void strength_batch(const std::int64_t* q, double* out, std::size_t count, int m,
                    bool normalized) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256i lowbit = _mm256_set1_epi64x(1);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i vq = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(q + i));
    __m256d qd = u64_to_f64(vq);
    __m256d beta = _mm256_div_pd(qd, _mm256_sub_pd(qd, four));
    __m256d norm = _mm256_add_pd(one, beta);
    __m256d p = one;
    for (int n = 0; n <= m; ++n) {
      const std::int64_t k = std::int64_t{1} << n;
      __m256i r = _mm256_and_si256(vq, _mm256_set1_epi64x(k - 1));
      __m256i odd = _mm256_and_si256(_mm256_srl_epi64(vq, _mm_cvtsi32_si128(n)), lowbit);
      __m256d f = _mm256_sub_pd(one, _mm256_mul_pd(u64_to_f64(r),
                                                   _mm256_set1_pd(2.0 / static_cast<double>(k))));
      f = _mm256_xor_pd(f, _mm256_castsi256_pd(_mm256_slli_epi64(odd, 63)));
      __m256d factor = _mm256_add_pd(f, beta);
      if (normalized) factor = _mm256_div_pd(factor, norm);
      p = _mm256_mul_pd(p, factor);
    }
    _mm256_storeu_pd(out + i, p);
  }
  for (; i < count; ++i) out[i] = strength_product_one(q[i], m, normalized);
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable t{"avx2", sign_corr_i64, sign_corr_f64, complex_mul, strength_batch};
  return t;
}

}  // namespace hamforge::kernels
