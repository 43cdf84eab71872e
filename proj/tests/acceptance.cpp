// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hamforge/delta_builder.hpp"
#include "hamforge/error.hpp"
#include "hamforge/filter_algebra.hpp"
#include "hamforge/lp_compiler.hpp"
#include "hamforge/pulse_engine.hpp"
#include "hamforge/spin_simulator.hpp"

using namespace hamforge;
using E = FilterExpr;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int clog2(long x) {
  int m = 0;
  while ((1L << m) < x) ++m;
  return m;
}

// smallest m with b * 2^m >= a (may be negative)
int clog2_ratio(long a, long b) {
  int m = 0;
  if (b >= a) {
    while (b >= 2 * a) {
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

Rational tri(int k, int d) {
  if (k == 0) return Rational(1);
  const int q = d / k, r = d % k;
  Rational v(k - 2 * r, k);
  return q % 2 ? Rational(-v) : v;
}

Outcome c1() {
  long checked = 0;
  for (int N = 2; N <= 64; ++N) {
    for (int k = 1; k <= 16; ++k) {
      const auto f = realized_filter(schedule_lambda(k, N));
      for (int d = 1; d < N; ++d, ++checked)
        if (f.at(d) != tri(k, d)) return {false, "Lambda_" + std::to_string(k) + " differs at N=" + std::to_string(N)};
    }
    for (int k = 2; k <= 16; ++k) {
      const auto f = realized_filter(schedule_gamma(k, N));
      for (int d = 1; d < N; ++d, ++checked) {
        const Rational want = d % k == 0 ? Rational(1) : Rational(1) - Rational(4, k);
        if (f.at(d) != want) return {false, "Gamma_" + std::to_string(k) + " differs at N=" + std::to_string(N)};
      }
    }
  }
  return {true, std::to_string(checked) + " entries exact"};
}

Outcome c2() {
  auto nv = [](const E& e) { return normalized_filter_vector(e, 2); };
  const FilterVector l0{{Rational(1), Rational(1)}}, l1{{Rational(-1), Rational(1)}}, l2{{Rational(0), Rational(-1)}};
  const FilterVector half{{Rational(0), Rational(1)}};
  bool ok = nv(E::product({E::lambda(1), E::lambda(1)})) == l0;
  ok = ok && nv(E::product({E::lambda(2), E::lambda(2)})) == half;
  ok = ok && nv(E::sum({{Rational(1, 2), E::lambda(0)}, {Rational(1, 2), E::lambda(1)}})) == half;
  ok = ok && nv(E::product({E::lambda(1), E::lambda(2)})) == l2;
  ok = ok && realized_filter(schedule_identity(3)) == l0 && realized_filter(schedule_lambda(1, 3)) == l1 &&
       realized_filter(schedule_lambda(2, 3)) == l2;
  // every higher triangle wave is a convex mix of Lambda_0 and Lambda_2 at D = 2
  for (int k = 3; k <= 40; ++k) {
    const auto v = nv(E::lambda(k));
    const Rational a = v.values[0];  // weight on Lambda_0, read off at d=1
    const FilterVector mix{{a, 2 * a - 1}};
    ok = ok && a >= 0 && a <= 1 && v == mix;
  }
  return {ok, "squares, cross product and extremal points at D=2"};
}

Outcome c3() {
  int recipes = 0, mismatched = 0;
  for (int N : {7, 15, 31, 63})
    for (int d = 1; d < N; ++d)
      for (int s : {-1, 1}) {
        const auto r = delta_expr(d, N, s);
        const auto rep = verify_delta(r, N);
        ++recipes;
        if (!rep.passed || rep.off_target_max_exact != 0)
          return {false, "residual at N=" + std::to_string(N) + " d=" + std::to_string(d)};
        int printed = -1;
        if (d == 1) printed = 2 * clog2(N + 1) - 3;
        else if (d == 3) printed = 2 * clog2_ratio(N + 2, 9) + 1;
        else if (d == 4) printed = 2 * clog2_ratio(N + 3, 12) + 1;
        else if (d > 4) printed = clog2(N - 1) + 2 * std::max(0, clog2_ratio(N - 1, d));
        if (printed >= 0 && concatenation_count(r.expr) != printed) ++mismatched;
      }
  std::ostringstream os;
  os << recipes << " recipes exact, " << mismatched << " count mismatches (d=2 excluded)";
  return {mismatched == 0, os.str()};
}

Outcome c4() {
  const auto fit = envelope_fit(7, 20, true, 1);
  const auto raw = envelope_fit(7, 20, false, 1);
  // the full top-octave sweep as well
  const auto sweep = strength_sweep(std::int64_t{1} << 20, (std::int64_t{1} << 19) + 1, (std::int64_t{1} << 20) - 1, 1);
  bool positive = true;
  for (const auto& s : sweep) positive = positive && s.raw > 0 && s.normalized > 0;
  for (const auto& p : fit.minima) positive = positive && p.value > 0;
  double c = 0;
  for (int k = 8; k <= 16; k += 4) c = std::max(c, 1 - octave_correlation(k, true));
  std::ostringstream os;
  os << "slope " << fit.slope << " (target -2.585 +- 0.15, raw product " << raw.slope << "), " << sweep.size()
     << " samples at N=2^20 positive=" << (positive ? "yes" : "no") << ", octave corr >= " << 1 - c;
  return {positive && std::abs(fit.slope + 2.585) <= 0.15, os.str()};
}

Outcome c5() {
  bool ok = true;
  {
    const auto r = solve_lp({{1, -1, 0}, {1, 1, -1}}, {-1, 0}, {1, 1, 1});
    ok = r.status == LpStatus::Optimal && std::abs(r.objective - 2) < 1e-12;
  }
  const int N = 16;
  const auto cert = universality_certificate(N);
  const auto basis = build_basis(N, 0, true);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst_res = 0;
  int max_nonzero = 0, worse = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> target(N - 1);
    for (auto& x : target) x = cert.half_width * u(rng);
    // feasible point from the delta recipes: |x_d| / strength on the signed axis
    double reference = 0;
    for (int d = 0; d < N - 1; ++d) {
      const int idx = 2 * d + (target[d] >= 0 ? 1 : 0);
      reference += std::abs(target[d]) / cert.strengths[idx];
    }
    try {
      const auto p = compile(target, basis);
      worst_res = std::max(worst_res, p.residual_inf_norm);
      max_nonzero = std::max<int>(max_nonzero, static_cast<int>(p.terms.size()));
      if (p.objective > reference + 1e-9) ++worse;
    } catch (const std::exception&) {
      ok = false;
    }
  }
  ok = ok && worst_res <= 1e-8 && max_nonzero <= N - 1 && worse == 0;
  std::ostringstream os;
  os << "N=3 objective 2, 200 targets: max residual " << worst_res << ", max support " << max_nonzero
     << ", objective above reference " << worse << " times";
  return {ok, os.str()};
}

Outcome c6() {
  const int N = 4;
  const E comp = E::product({decouple_distance_expr(2), decouple_distance_expr(3)});
  const auto s = materialize(comp, N);
  const auto f = realized_filter(s).to_double();
  const double T = 1.0;
  const Matrix U = filtered_propagator(s, ising_x({1, 1, 1}, N), T);
  const Matrix Hnn = ising_x({f[0], 0, 0}, N);
  double worst = operator_norm(U - expm_hermitian(Hnn, T));
  const bool nn_only = f[1] == 0 && f[2] == 0 && f[0] > 0;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  const E pool[] = {E::lambda(2), E::lambda(3), E::gamma(3), comp,
                    E::sum({{Rational(1), E::lambda(1)}, {Rational(2), E::gamma(2)}}),
                    E::product({E::lambda(4), E::lambda(2)})};
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<double> w(n - 1);
    for (auto& x : w) x = u(rng);
    const auto sch = materialize(pool[rng() % 6], n);
    const auto g = realized_filter(sch).to_double();
    std::vector<double> eff(n - 1);
    for (int d = 0; d < n - 1; ++d) eff[d] = w[d] * g[d];
    worst = std::max(worst, operator_norm(filtered_propagator(sch, ising_x(w, n), T) - expm_hermitian(ising_x(eff, n), T)));
  }
  std::ostringstream os;
  os << "nearest-neighbour filter (" << f[0] << ", " << f[1] << ", " << f[2] << "), max distance " << worst;
  return {nn_only && worst <= 1e-10, os.str()};
}

Outcome c7() {
  bool ok = true;
  std::ostringstream os;
  for (auto mode : {TrotterMode::BothSwitchable, TrotterMode::FieldSwitchableDelta, TrotterMode::Pessimistic}) {
    TrotterConfig cfg;
    cfg.mode = mode;
    cfg.n = 4;
    cfg.b = 0.7;
    cfg.t = 1.0;
    cfg.filter = E::product({decouple_distance_expr(2), decouple_distance_expr(3)});
    const auto rep = trotter_error_report(cfg);
    ok = ok && rep.all_bounds_hold && std::abs(rep.slope + 2) <= 0.1;
    os << to_string(mode) << " m=" << rep.m << " slope " << rep.slope << (rep.all_bounds_hold ? " ok; " : " VIOLATED; ");
  }
  return {ok, os.str()};
}

Outcome c8() {
  AdiabaticConfig cfg;
  const auto rep = adiabatic_run(cfg);
  AdiabaticConfig six = cfg;
  six.steps = {6};
  const double inf6 = adiabatic_run(six).points[0].infidelity;
  std::ostringstream os;
  os << "slope " << rep.slope << ", ratio to Var dt^2/4 at R=" << rep.points.back().r << " " << rep.ratio_at_largest
     << "; reported: |<g_t|g_a>|^2 " << rep.gt_ga_overlap << " (published benchmark 0.33), infidelity at R=6 " << inf6
     << ", unfiltered overlap " << rep.unfiltered_overlap;
  const bool ratio_ok = rep.ratio_at_largest >= 0.5 && rep.ratio_at_largest <= 2.0;
  return {std::abs(rep.slope + 2) <= 0.2 && ratio_ok, os.str()};
}

Outcome c9() {
  PowerLawConfig cfg;
  cfg.n = 8;
  cfg.levels = 12;
  cfg.exponent = 1;
  cfg.passes = 2;
  const auto rep = verify_power_law(cfg);
  bool ok = rep.passes.size() == 2 && rep.passes[0].within_bound && rep.passes[1].within_bound;
  // first pass lands on (N+1)/(2 d^2)
  double dev = 0;
  for (int d = 1; d < cfg.n; ++d)
    dev = std::max(dev, std::abs(rep.passes[0].ideal[d - 1] - (cfg.n + 1) / (2.0 * d * d)));
  ok = ok && dev < 1e-12;
  std::ostringstream os;
  os << "pass 1 within tail bound " << (rep.passes[0].within_bound ? "yes" : "no") << ", pass 2 "
     << (rep.passes[1].within_bound ? "yes" : "no") << ", d=1 value " << rep.passes[0].measured[0] << " vs limit "
     << rep.passes[0].ideal[0];
  return {ok, os.str()};
}

Outcome c10() {
  HeisenbergConfig cfg;
  cfg.n = 3;
  cfg.omega = {1, 0.5};
  cfg.filter_y = E::sum({{Rational(1), E::lambda(2)}, {Rational(1), E::lambda(0)}});
  cfg.filter_z = E::lambda(3);
  const auto pts = heisenberg_convergence(cfg, {4, 8, 16, 32});
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    const double x = std::log(p.r), y = std::log(p.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  std::ostringstream os;
  os << "slope " << slope << ", error at r=32 " << pts.back().error;
  return {std::abs(slope + 2) <= 0.1, os.str()};
}

}  // namespace

int main() {
  const std::pair<double, std::function<Outcome()>> criteria[] = {
      {60, c1}, {60, c2}, {300, c3}, {120, c4}, {120, c5}, {60, c6}, {120, c7}, {180, c8}, {60, c9}, {60, c10}};
  int failures = 0;
  for (int i = 0; i < 10; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= criteria[i].first;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %2d: %s  %s  [%.2fs, limit %.0fs]\n", i + 1, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                criteria[i].first);
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
