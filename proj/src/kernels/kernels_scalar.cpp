#include "hamforge/kernels.hpp"

namespace hamforge::kernels {
namespace {

std::int64_t sign_corr_i64(const std::int64_t* w, const std::int8_t* a, const std::int8_t* b,
                           std::size_t n) {
  std::int64_t acc = 0;
  for (std::size_t l = 0; l < n; ++l) acc += (a[l] == b[l]) ? w[l] : -w[l];
  return acc;
}

double sign_corr_f64(const double* w, const std::int8_t* a, const std::int8_t* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t l = 0; l < n; ++l) acc += (a[l] == b[l]) ? w[l] : -w[l];
  return acc;
}

void complex_mul(std::complex<double>* x, const std::complex<double>* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = x[i].real(), ai = x[i].imag();
    const double br = y[i].real(), bi = y[i].imag();
    // same operation order as the vector path: (ar*br - ai*bi, ai*br + ar*bi)
    x[i] = {ar * br - ai * bi, ai * br + ar * bi};
  }
}

void strength_batch(const std::int64_t* q, double* out, std::size_t count, int m,
                    bool normalized) {
  for (std::size_t i = 0; i < count; ++i) out[i] = strength_product_one(q[i], m, normalized);
}

}  // namespace

double strength_product_one(std::int64_t q, int m, bool normalized) {
  const double qd = static_cast<double>(q);
  const double beta = qd / (qd - 4.0);
  const double norm = 1.0 + beta;
  double p = 1.0;
  for (int n = 0; n <= m; ++n) {
    const std::int64_t k = std::int64_t{1} << n;
    const std::int64_t r = q & (k - 1);
    const bool odd = ((q >> n) & 1) != 0;
    // r * (2/k) is exact because k is a power of two
    double f = 1.0 - static_cast<double>(r) * (2.0 / static_cast<double>(k));
    if (odd) f = -f;
    double factor = f + beta;
    if (normalized) factor = factor / norm;
    p = p * factor;
  }
  return p;
}

const KernelTable& scalar_table() {
  static const KernelTable t{"scalar", sign_corr_i64, sign_corr_f64, complex_mul, strength_batch};
  return t;
}

}  // namespace hamforge::kernels
