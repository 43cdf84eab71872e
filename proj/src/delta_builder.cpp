#include "hamforge/delta_builder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "hamforge/error.hpp"
#include "hamforge/kernels.hpp"

namespace hamforge {

int ceil_log2(std::int64_t x) {
  if (x < 1) throw InputError("ceil_log2: argument must be positive");
  int m = 0;
  while ((std::int64_t{1} << m) < x) ++m;
  return m;
}

int ceil_log2_ratio(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw InputError("ceil_log2_ratio: arguments must be positive");
  int m = 0;
  if (b >= a) {
    while (b >= a * 2) {
      a *= 2;
      --m;
    }
    return m;
  }
  while (b < a) {
    b *= 2;
    ++m;
  }
  return m;
}

namespace {

using E = FilterExpr;

E L(int k) { return E::lambda(k); }

// (Lambda_k + w Lambda_0)
E lift(int k, const Rational& w) { return E::sum({{Rational(1), L(k)}, {w, L(0)}}); }

E flat_product(std::vector<E> f) { return f.size() == 1 ? f.front() : E::product(std::move(f)); }

Rational ladder_weight(int n, int shift) {
  // 1 - 2^(shift - n)
  return Rational(1) - Rational(BigInt(1) << shift, BigInt(1) << n);
}

DeltaRecipe build_d1(int N, int sign) {
  std::vector<E> f{sign < 0 ? L(1) : L(0), lift(2, 1)};
  const int m = ceil_log2(N + 1) - 1;
  for (int n = 2; n <= m; ++n) {
    f.push_back(lift(1 << n, 1));
    f.push_back(lift(1 << n, ladder_weight(n, 1)));
  }
  DeltaRecipe r;
  r.expr = flat_product(std::move(f));
  r.predicted_concatenations = 2 * ceil_log2(N + 1) - 3;
  r.construction = "d1-ladder";
  return r;
}

DeltaRecipe build_d2(int N, int sign) {
  std::vector<E> f{sign < 0 ? L(2) : L(0), lift(1, 1), lift(4, 1)};
  const int m = ceil_log2(N);
  for (int n = 3; n <= m; ++n) {
    f.push_back(lift(1 << n, 1));
    f.push_back(lift(1 << n, ladder_weight(n, 2)));
  }
  DeltaRecipe r;
  r.expr = flat_product(std::move(f));
  r.predicted_concatenations = 2 * ceil_log2(N) - 4;
  r.alternative_predictions = {ceil_log2(N - 1) - 2};
  r.construction = "d2-ladder";
  return r;
}

// ladder (Lambda_{b 2^n} + Lambda_0)(Lambda_{b 2^n} + (1 - c/2^n) Lambda_0), n = 0..m
void append_scaled_ladder(std::vector<E>& f, int base, const Rational& c, int m) {
  for (int n = 0; n <= m; ++n) {
    const int k = base << n;
    f.push_back(lift(k, 1));
    f.push_back(lift(k, Rational(1) - c / Rational(BigInt(1) << n)));
  }
}

DeltaRecipe build_d3(int N, int sign) {
  DeltaRecipe r;
  const int printed_m = ceil_log2_ratio(N + 2, 9) - 1;
  r.predicted_concatenations = 2 * printed_m + 3;
  const E boost = E::sum({{Rational(1), E::gamma(3)}, {Rational(1, 3), L(0)}});
  if (printed_m < 0) {
    // everything up to d = 8 sits inside one period of Lambda_6
    r.expr = E::product({boost, sign < 0 ? E::sum({{Rational(1), L(3)}, {Rational(1), L(6)}}) : lift(6, 1)});
    r.construction = "d3-short";
    return r;
  }
  int m = printed_m;
  while (N + 3 > 9 * (1 << (m + 1))) ++m;
  std::vector<E> f{sign < 0 ? L(3) : L(0), boost};
  append_scaled_ladder(f, 9, Rational(2, 3), m);
  r.expr = flat_product(std::move(f));
  r.construction = m == printed_m ? "d3-ladder" : "d3-ladder-extended";
  return r;
}

DeltaRecipe build_d4(int N, int sign) {
  DeltaRecipe r;
  const int printed_m = ceil_log2_ratio(N + 3, 12) - 1;
  r.predicted_concatenations = 2 * printed_m + 3;
  int m = printed_m;
  while (N + 4 > 12 * (1 << (m + 1))) ++m;
  std::vector<E> f{sign < 0 ? L(4) : L(0), E::gamma(4)};
  append_scaled_ladder(f, 12, Rational(2, 3), m);
  r.expr = flat_product(std::move(f));
  r.construction = m == printed_m ? "d4-ladder" : "d4-ladder-extended";
  return r;
}

DeltaRecipe build_generic(int Q, int N, int sign) {
  const int m = ceil_log2(N - 1);
  const int p = ceil_log2_ratio(N - 1, Q);
  const Rational beta(Q, Q - 4);
  std::vector<E> f{sign < 0 ? L(Q) : L(0)};
  // when Q = N-1 the top octave factor is redundant
  const int top = p >= 1 ? m : m - 1;
  for (int n = 0; n <= top; ++n) f.push_back(E::sum({{Rational(1), L(1 << n)}, {beta, E::gamma(Q)}}));
  if (p >= 1) {
    f.push_back(lift(2 * Q, 1));
    for (int q = 2; q <= p; ++q) {
      f.push_back(lift(Q << q, 1));
      f.push_back(lift(Q << q, ladder_weight(q, 1)));
    }
  }
  DeltaRecipe r;
  r.expr = flat_product(std::move(f));
  r.predicted_concatenations = m + 2 * p;
  r.construction = "generic";
  return r;
}

}  // namespace

DeltaRecipe delta_expr(int d, int N, int sign) {
  if (N < 3) throw InputError("delta_expr: N must be >= 3");
  if (d < 1 || d > N - 1)
    throw InputError("delta_expr: d=" + std::to_string(d) + " outside [1, " + std::to_string(N - 1) + "]");
  if (sign != 1 && sign != -1) throw InputError("delta_expr: sign must be +1 or -1");
  DeltaRecipe r;
  switch (d) {
    case 1: r = build_d1(N, sign); break;
    case 2: r = build_d2(N, sign); break;
    case 3: r = build_d3(N, sign); break;
    case 4: r = build_d4(N, sign); break;
    default: r = build_generic(d, N, sign); break;
  }
  r.target_distance = d;
  r.sign = sign;
  r.n = N;
  r.achieved_concatenations = concatenation_count(r.expr);
  const Rational v = filter_vector(r.expr, N - 1).at(d) / duration(r.expr);
  r.achieved_strength = std::abs(to_double(v));
  return r;
}

DeltaReport verify_delta(const DeltaRecipe& r, int N, double tol, bool exact) {
  DeltaReport rep;
  rep.exact = exact;
  const int d = r.target_distance;
  if (d < 1 || d > N - 1) throw InputError("verify_delta: recipe distance outside the chain");
  if (exact) {
    const FilterVector v = normalized_filter_vector(r.expr, N - 1);
    rep.off_target_max_exact = 0;
    for (int x = 1; x < N; ++x) {
      if (x == d) continue;
      const Rational a = abs(v.at(x));
      if (a > rep.off_target_max_exact) {
        rep.off_target_max_exact = a;
        rep.worst_distance = x;
      }
    }
    rep.off_target_max = to_double(rep.off_target_max_exact);
    rep.on_target = to_double(v.at(d));
    rep.sign_ok = (v.at(d) > 0 && r.sign > 0) || (v.at(d) < 0 && r.sign < 0);
    rep.passed = rep.off_target_max_exact == 0 && rep.sign_ok;
  } else {
    const std::vector<double> v = filter_vector_f64(r.expr, N - 1);
    const double t = to_double(duration(r.expr));
    for (int x = 1; x < N; ++x) {
      if (x == d) continue;
      const double a = std::abs(v[x - 1] / t);
      if (a > rep.off_target_max) {
        rep.off_target_max = a;
        if (a > tol) rep.worst_distance = x;
      }
    }
    rep.off_target_max_exact = Rational(rep.off_target_max);
    rep.on_target = v[d - 1] / t;
    rep.sign_ok = (rep.on_target > tol && r.sign > 0) || (rep.on_target < -tol && r.sign < 0);
    rep.passed = rep.off_target_max <= tol && rep.sign_ok;
  }
  rep.concatenations = concatenation_count(r.expr);
  rep.predicted = r.predicted_concatenations;
  rep.count_matches = rep.concatenations == rep.predicted;
  return rep;
}

UniversalityCertificate universality_certificate(int N) {
  if (N < 3) throw InputError("universality_certificate: N must be >= 3");
  UniversalityCertificate c;
  c.n = N;
  c.half_width = 1.0;
  for (int d = 1; d < N; ++d)
    for (int s : {-1, 1}) {
      DeltaRecipe r = delta_expr(d, N, s);
      if (!verify_delta(r, N).passed) throw VerificationError("delta recipe failed at d=" + std::to_string(d));
      c.strengths.push_back(r.achieved_strength);
      c.half_width = std::min(c.half_width, r.achieved_strength);
      c.recipes.push_back(std::move(r));
    }
  return c;
}

StrengthValue strength_sQ(std::int64_t Q, std::int64_t N) {
  if (Q <= 4) throw InputError("strength_sQ: Q must exceed 4");
  if (N < 3) throw InputError("strength_sQ: N must be >= 3");
  const int m = ceil_log2(N - 1);
  return {kernels::strength_product_one(Q, m, false), kernels::strength_product_one(Q, m, true)};
}

namespace {

template <class F>
void parallel_chunks(std::size_t count, int jobs, F&& work) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count < 4096) {
    work(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + jobs - 1) / jobs;
  for (int j = 0; j < jobs; ++j) {
    const std::size_t lo = std::min(count, chunk * j), hi = std::min(count, lo + chunk);
    if (lo < hi) pool.emplace_back([&, lo, hi] { work(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<StrengthSample> strength_sweep(std::int64_t N, std::int64_t qmin, std::int64_t qmax,
                                           int jobs) {
  if (qmin <= 4) throw InputError("strength_sweep: qmin must exceed 4");
  if (qmax > N - 1 || qmin > qmax) throw InputError("strength_sweep: need qmin <= qmax <= N-1");
  const int m = ceil_log2(N - 1);
  const std::size_t count = static_cast<std::size_t>(qmax - qmin + 1);
  std::vector<std::int64_t> qs(count);
  for (std::size_t i = 0; i < count; ++i) qs[i] = qmin + static_cast<std::int64_t>(i);
  std::vector<double> raw(count), norm(count);
  const auto& k = kernels::active();
  parallel_chunks(count, jobs, [&](std::size_t lo, std::size_t hi) {
    k.strength_product(qs.data() + lo, raw.data() + lo, hi - lo, m, false);
    k.strength_product(qs.data() + lo, norm.data() + lo, hi - lo, m, true);
  });
  const double expo = -std::log2(6.0);
  std::vector<StrengthSample> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = {qs[i], raw[i], norm[i], std::pow(static_cast<double>(qs[i]), expo)};
  return out;
}

std::string strength_csv(const std::vector<StrengthSample>& samples) {
  std::ostringstream os;
  os.precision(17);
  os << "Q,sQ_raw,sQ_normalized,guide_Q_pow\n";
  for (const auto& s : samples) os << s.q << ',' << s.raw << ',' << s.normalized << ',' << s.guide << '\n';
  return os.str();
}

namespace {

void fit_line(EnvelopeFit& fit) {
  const double n = static_cast<double>(fit.minima.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : fit.minima) {
    const double x = std::log(static_cast<double>(p.q)), y = std::log(p.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
}

}  // namespace

EnvelopeFit envelope_fit(int kmin, int kmax, bool normalized, int jobs) {
  if (kmin < 4 || kmax < kmin || kmax > 40) throw InputError("envelope_fit: bad octave range");
  EnvelopeFit fit;
  for (int k = kmin; k <= kmax; ++k) {
    const std::int64_t N = std::int64_t{1} << k;
    const auto s = strength_sweep(N, N / 2 + 1, N - 1, jobs);
    auto best = std::min_element(s.begin(), s.end(), [&](const auto& a, const auto& b) {
      return normalized ? a.normalized < b.normalized : a.raw < b.raw;
    });
    fit.minima.push_back({k, best->q, normalized ? best->normalized : best->raw});
  }
  fit_line(fit);
  return fit;
}

EnvelopeFit envelope_fit(const std::vector<StrengthSample>& samples, bool normalized) {
  EnvelopeFit fit;
  if (samples.empty()) return fit;
  // minima per binary octave of Q present in the sample set
  std::int64_t lo = samples.front().q, hi = lo;
  for (const auto& s : samples) {
    lo = std::min(lo, s.q);
    hi = std::max(hi, s.q);
  }
  for (int k = ceil_log2(lo + 1); (std::int64_t{1} << (k - 1)) <= hi; ++k) {
    const std::int64_t a = std::int64_t{1} << (k - 1), b = std::int64_t{1} << k;
    EnvelopePoint best{k, 0, 0.0};
    for (const auto& s : samples) {
      if (s.q <= a || s.q >= b) continue;
      const double v = normalized ? s.normalized : s.raw;
      if (best.q == 0 || v < best.value) best = {k, s.q, v};
    }
    if (best.q) fit.minima.push_back(best);
  }
  if (fit.minima.size() >= 2) fit_line(fit);
  return fit;
}

double octave_correlation(int k, bool normalized) {
  if (k < 4 || k > 30) throw InputError("octave_correlation: bad octave");
  const std::int64_t N = std::int64_t{1} << k;
  const auto lo = strength_sweep(N, N / 2 + 1, N - 1);
  std::vector<double> x, y;
  for (const auto& s : lo) {
    const StrengthValue v = strength_sQ(2 * s.q, 2 * N);
    x.push_back(std::log(normalized ? s.normalized : s.raw));
    y.push_back(std::log(normalized ? v.normalized : v.raw));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

FilterExpr power_law_expr(const std::vector<Rational>& alphas, int N) {
  if (alphas.empty()) throw InputError("power_law_expr: no levels");
  if (N < 2) throw InputError("power_law_expr: N must be >= 2");
  std::vector<WeightedTerm> terms;
  for (std::size_t x = 0; x < alphas.size(); ++x) {
    if (alphas[x] < 0) throw InputError("power_law_expr: level weights must be nonnegative");
    if (alphas[x] == 0) continue;
    if (x == 0) terms.push_back({alphas[x], E::lambda(0)});
    else if (x == 1) terms.push_back({alphas[x], E::lambda(N + 1)});
    else terms.push_back({alphas[x], E::product(std::vector<E>(x, E::lambda(N + 1)))});
  }
  return E::sum(std::move(terms));
}

FilterExpr power_law_expr(int L, int N) {
  if (L < 1) throw InputError("power_law_expr: L must be >= 1");
  return power_law_expr(std::vector<Rational>(static_cast<std::size_t>(L), Rational(1)), N);
}

}  // namespace hamforge
