#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamforge/filter_algebra.hpp"

namespace hamforge {

struct DeltaRecipe {
  int target_distance = 0;
  int sign = 1;
  int n = 0;
  FilterExpr expr = FilterExpr::lambda(0);
  // closed form printed for this case; d = 2 carries both printed variants
  int predicted_concatenations = 0;
  std::vector<int> alternative_predictions;
  // what the ladder actually needs when it differs from the printed form
  int achieved_concatenations = 0;
  // |f(d)| after normalizing total duration to 1
  double achieved_strength = 0.0;
  std::string construction;
};

DeltaRecipe delta_expr(int d, int N, int sign);

struct DeltaReport {
  bool exact = true;  // rational arithmetic used
  Rational off_target_max_exact;
  double off_target_max = 0.0;
  int worst_distance = 0;  // 0 when all off-target entries vanish
  double on_target = 0.0;  // normalized
  bool sign_ok = false;
  int concatenations = 0;
  int predicted = 0;
  bool count_matches = false;
  bool passed = false;  // residual and sign only
};

// Rational mode checks for exact zeros, float mode against tol.
DeltaReport verify_delta(const DeltaRecipe& r, int N, double tol = 1e-9, bool exact = true);

struct UniversalityCertificate {
  int n = 0;
  std::vector<DeltaRecipe> recipes;  // d = 1..N-1, negative then positive
  std::vector<double> strengths;     // same order
  double half_width = 0.0;
};

UniversalityCertificate universality_certificate(int N);

struct StrengthValue {
  double raw = 0.0;
  double normalized = 0.0;
};

// prod_{n=0..m} (f_{2^n}(Q) + Q/(Q-4)), m = ceil(log2(N-1))
StrengthValue strength_sQ(std::int64_t Q, std::int64_t N);

struct StrengthSample {
  std::int64_t q = 0;
  double raw = 0.0;
  double normalized = 0.0;
  double guide = 0.0;  // Q^-log2(6)
};

std::vector<StrengthSample> strength_sweep(std::int64_t N, std::int64_t qmin, std::int64_t qmax,
                                           int jobs = 1);
std::string strength_csv(const std::vector<StrengthSample>& samples);

struct EnvelopePoint {
  int octave = 0;  // N = 2^octave
  std::int64_t q = 0;
  double value = 0.0;
};

struct EnvelopeFit {
  std::vector<EnvelopePoint> minima;
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares slope of log s through the per-octave minima, N = 2^k for
// k in [kmin, kmax], every Q in (N/2, N-1].
EnvelopeFit envelope_fit(int kmin, int kmax, bool normalized, int jobs = 1);
EnvelopeFit envelope_fit(const std::vector<StrengthSample>& samples, bool normalized);

// Pearson correlation of log s(Q) (octave k) with log s(2Q) (octave k+1).
double octave_correlation(int k, bool normalized);

// sum_{x<L} Lambda_{N+1}^x with unit weights
FilterExpr power_law_expr(int L, int N);
// Same ladder with level x weighted by alphas[x] (zero weights skipped).
FilterExpr power_law_expr(const std::vector<Rational>& alphas, int N);

int ceil_log2(std::int64_t x);
// smallest integer m with b * 2^m >= a, for positive a, b
int ceil_log2_ratio(std::int64_t a, std::int64_t b);

}  // namespace hamforge
