#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace hamforge::kernels {

// Inner loops with a scalar reference and an AVX2 variant. The active table
// is picked once at startup; HAMFORGE_KERNELS=scalar forces the reference.

using SignCorrI64 = std::int64_t (*)(const std::int64_t* w, const std::int8_t* a,
                                     const std::int8_t* b, std::size_t n);
using SignCorrF64 = double (*)(const double* w, const std::int8_t* a, const std::int8_t* b,
                               std::size_t n);
using ComplexMul = void (*)(std::complex<double>* x, const std::complex<double>* y,
                            std::size_t n);
using StrengthBatch = void (*)(const std::int64_t* q, double* out, std::size_t count, int m,
                               bool normalized);

struct KernelTable {
  const char* name;
  // sum_l w[l] * a[l] * b[l] for sign arrays a, b in {-1, +1}
  SignCorrI64 sign_correlation_i64;
  SignCorrF64 sign_correlation_f64;
  // x[i] *= y[i]
  ComplexMul complex_multiply_inplace;
  // out[i] = prod_{n=0..m} (f_{2^n}(q[i]) + beta) with beta = q/(q-4),
  // each factor divided by (1 + beta) when normalized
  StrengthBatch strength_product;
};

const KernelTable& scalar_table();
// nullptr when not compiled in or not supported by this CPU
const KernelTable* avx2_table();
const KernelTable& active();

// single-sample reference used by both tables for tails
double strength_product_one(std::int64_t q, int m, bool normalized);

}  // namespace hamforge::kernels
