#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hamforge/delta_builder.hpp"
#include "hamforge/error.hpp"
#include "hamforge/lp_compiler.hpp"

using namespace hamforge;
using E = FilterExpr;

namespace {

using Mat = std::vector<std::vector<double>>;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> column(const Mat& A, std::size_t j) {
  std::vector<double> c;
  for (const auto& row : A) c.push_back(row[j]);
  return c;
}

bool has_vector(const FilterBasis& b, const std::vector<Rational>& v) {
  return std::any_of(b.entries.begin(), b.entries.end(), [&](const BasisEntry& e) { return e.vector.values == v; });
}

}  // namespace

TEST_CASE("worked N=3 example") {
  const Mat A = {{1, -1, 0}, {1, 1, -1}};
  const auto r = solve_lp(A, {-1, 0}, {1, 1, 1});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.t[0] == doctest::Approx(0));
  CHECK(r.t[1] == doctest::Approx(1));
  CHECK(r.t[2] == doctest::Approx(1));
  CHECK(r.objective == doctest::Approx(2));
  CHECK(r.dual_feasible);
  // strong duality
  CHECK(dot(r.duals, {-1, 0}) == doctest::Approx(2));
}

TEST_CASE("zero right-hand side") {
  const auto r = solve_lp({{1, 2, -3}, {0, 1, 1}}, {0, 0}, {1, 2, 3});
  REQUIRE(r.status == LpStatus::Optimal);
  for (double t : r.t) CHECK(t == 0);
  CHECK(r.objective == 0);
}

TEST_CASE("solver input validation") {
  CHECK_THROWS_AS(solve_lp({{1, 2}}, {1, 2}, {1, 1}), InputError);
  CHECK_THROWS_AS(solve_lp({{1, 2}}, {1}, {1}), InputError);
  CHECK_THROWS_AS(solve_lp({{1, NAN}}, {1}, {1, 1}), InputError);
}

TEST_CASE("random feasible instances") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1, 1), pos(0.1, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const int D = 2 + static_cast<int>(rng() % 7);
    const int m = D + 1 + static_cast<int>(rng() % 12);
    Mat A(D, std::vector<double>(m));
    for (auto& row : A)
      for (auto& x : row) x = u(rng);
    std::vector<double> ts(m), c(m);
    for (int j = 0; j < m; ++j) {
      ts[j] = (rng() % 3 == 0) ? 0.0 : pos(rng);
      c[j] = pos(rng);
    }
    std::vector<double> b(D, 0.0);
    for (int d = 0; d < D; ++d)
      for (int j = 0; j < m; ++j) b[d] += A[d][j] * ts[j];
    const auto r = solve_lp(A, b, c);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective <= dot(c, ts) + 1e-9);
    CHECK(r.dual_feasible);
    int nonzero = 0;
    for (double t : r.t) {
      CHECK(t >= 0);
      if (t > 0) ++nonzero;
    }
    CHECK(nonzero <= D);
    for (int d = 0; d < D; ++d) {
      double s = 0;
      for (int j = 0; j < m; ++j) s += A[d][j] * r.t[j];
      CHECK(s == doctest::Approx(b[d]).epsilon(1e-9));
    }
    // A^T y <= c, and b.y equals the objective
    for (int j = 0; j < m; ++j) CHECK(dot(column(A, j), r.duals) <= c[j] + 1e-8);
    CHECK(dot(b, r.duals) == doctest::Approx(r.objective).epsilon(1e-8));
  }
}

TEST_CASE("infeasible systems carry a Farkas direction") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const int D = 2 + static_cast<int>(rng() % 5), m = 3 + static_cast<int>(rng() % 6);
    // all columns in the positive orthant, target in the negative one
    Mat A(D, std::vector<double>(m));
    for (auto& row : A)
      for (auto& x : row) x = u(rng);
    std::vector<double> b(D);
    for (auto& x : b) x = -u(rng);
    const auto r = solve_lp(A, b, std::vector<double>(m, 1.0));
    REQUIRE(r.status == LpStatus::Infeasible);
    REQUIRE(r.certificate.size() == static_cast<std::size_t>(D));
    for (int j = 0; j < m; ++j) CHECK(dot(column(A, j), r.certificate) <= 1e-9);
    CHECK(dot(b, r.certificate) > 1e-9);
  }
}

TEST_CASE("basis contents") {
  const auto b = build_basis(3, 0, false);
  CHECK(has_vector(b, {Rational(1), Rational(1)}));
  CHECK(has_vector(b, {Rational(-1), Rational(1)}));
  CHECK(has_vector(b, {Rational(0), Rational(-1)}));
  CHECK(b.entries.front().expr == E::lambda(0));
  // Gamma_2 at N=3 duplicates Lambda_1
  for (const auto& e : b.entries) CHECK(e.expr.kind() != FilterExpr::Kind::Gamma);
  const auto b1 = build_basis(5, 1, false);
  for (const auto& e : b1.entries) CHECK(e.expr != E::product({E::lambda(1), E::lambda(1)}));
  for (std::size_t i = 0; i < b1.entries.size(); ++i)
    for (std::size_t j = i + 1; j < b1.entries.size(); ++j) REQUIRE(b1.entries[i].vector != b1.entries[j].vector);
  for (const auto& e : b1.entries) CHECK(e.vector == normalized_filter_vector(e.expr, 4));
  CHECK(b1.entries.size() > build_basis(5, 0, false).entries.size());
  CHECK(build_basis(16, 2, false).entries.size() <= std::max<std::size_t>(4096, 16 * 16 * 16));
  CHECK_THROWS_AS(build_basis(2, 0, false), InputError);
  const auto hooked = build_basis(5, 0, false, pulse_layer_cost);
  CHECK(hooked.entries.front().cost == 1.0);
  CHECK(hooked.entries[1].cost > 1.0);
}

TEST_CASE("native target compiles to Lambda_0") {
  for (int N : {3, 6, 10}) {
    const auto b = build_basis(N, 1, true);
    const auto p = compile(std::vector<double>(N - 1, 1.0), b);
    REQUIRE(p.terms.size() == 1);
    CHECK(p.terms[0].expr == E::lambda(0));
    CHECK(p.terms[0].t == doctest::Approx(1));
    CHECK(p.objective == doctest::Approx(b.entries[p.terms[0].basis_index].cost));
    CHECK(p.residual_inf_norm <= 1e-8);
  }
}

TEST_CASE("basis vectors of the N=3 example through compile") {
  FilterBasis b;
  b.n = 3;
  for (auto e : {E::lambda(0), E::lambda(1), E::lambda(2)}) b.entries.push_back({e, normalized_filter_vector(e, 2), 1.0});
  const auto p = compile({-1, 0}, b);
  CHECK(p.objective == doctest::Approx(2));
  CHECK(p.terms.size() == 2);
  CHECK(residual(p, {-1, 0}, b) <= 1e-15);
  CompiledProgram exact;
  exact.terms = {{1, E::lambda(1), 1.0}, {2, E::lambda(2), 1.0}};
  CHECK(residual(exact, {-1, 0}, b) == 0);
  auto bumped = p;
  bumped.terms[0].t += 1e-3;
  const double fmax = to_double(abs(b.entries[bumped.terms[0].basis_index].vector.values[0]));
  CHECK(residual(bumped, {-1, 0}, b) == doctest::Approx(1e-3 * fmax).epsilon(1e-9));
  CHECK_THROWS_AS(compile({-1, 0, 0}, b), InputError);
}

TEST_CASE("delta basis reaches every cube vertex") {
  for (int N : {3, 5, 8}) {
    const auto cert = universality_certificate(N);
    const auto b = build_basis(N, 0, true);
    const double h = cert.half_width;
    for (int d = 0; d < N - 1; ++d)
      for (int s : {-1, 1}) {
        std::vector<double> t(N - 1, 0.0);
        t[d] = s * h;
        const auto p = compile(t, b);
        CHECK(p.residual_inf_norm <= 1e-8);
      }
    // a random corner of the cube, all axes at once
    std::vector<double> corner(N - 1);
    for (int d = 0; d < N - 1; ++d) corner[d] = (d % 2 ? h : -h);
    CHECK(compile(corner, b).residual_inf_norm <= 1e-8);
  }
}

TEST_CASE("half a recipe comes back at half duration or cheaper") {
  const int N = 7;
  const auto b = build_basis(N, 0, true);
  const auto r = delta_expr(2, N, -1);
  const auto v = normalized_filter_vector(r.expr, N - 1).to_double();
  std::vector<double> target;
  for (double x : v) target.push_back(0.5 * x);
  const auto p = compile(target, b);
  CHECK(p.objective <= 0.5 + 1e-9);
  CHECK(p.residual_inf_norm <= 1e-8);
}

TEST_CASE("targets outside the cone") {
  const auto b = build_basis(8, 0, false);
  std::vector<double> t(7, 0.0);
  t[0] = -1;
  try {
    compile(t, b);
    FAIL("expected infeasible");
  } catch (const InfeasibleError& e) {
    const auto& y = e.certificate();
    REQUIRE(y.size() == 7);
    for (const auto& entry : b.entries) CHECK(dot(entry.vector.to_double(), y) <= 1e-9);
    CHECK(dot(t, y) > 0);
  }
  // the same target is fine once one product level is allowed
  CHECK(compile(t, build_basis(8, 1, false)).residual_inf_norm <= 1e-8);
  // far outside [-1,1]^D with only positive-time filters
  std::vector<double> big(7, 0.0);
  big[3] = -50;
  CHECK_THROWS_AS(compile(big, build_basis(8, 0, false)), InfeasibleError);
}

TEST_CASE("native ratio") {
  const auto r = target_ratio({2, 4, 0}, {1, -1, 0});
  CHECK(r == std::vector<double>{0.5, -0.25, 0});
  CHECK_THROWS_AS(target_ratio({1, 0}, {1, 1}), InputError);
  CHECK_THROWS_AS(target_ratio({1}, {1, 1}), InputError);
  const auto p = make_profile(4);
  CHECK(p.qubits() == 5);
  CHECK(p.omega_x.size() == 4);
  CHECK_THROWS_AS(make_profile(0), InputError);
}

TEST_CASE("compile time over N") {
  std::mt19937_64 rng(3);
  std::vector<double> logn, logt;
  for (int N : {8, 16, 32, 64}) {
    const auto b = build_basis(N, 0, true);
    std::vector<double> t(N - 1);
    const double h = universality_certificate(N).half_width;
    std::uniform_real_distribution<double> u(-h, h);
    for (auto& x : t) x = u(rng);
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = compile(t, b);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(p.residual_inf_norm <= 1e-8);
    logn.push_back(std::log(N));
    logt.push_back(std::log(std::max(s, 1e-6)));
  }
  const double mx = (logn[0] + logn[3]) / 2;
  double num = 0, den = 0, my = 0;
  for (double y : logt) my += y / 4;
  for (int i = 0; i < 4; ++i) {
    num += (logn[i] - mx) * (logt[i] - my);
    den += (logn[i] - mx) * (logn[i] - mx);
  }
  MESSAGE("compile wall-time slope " << num / den);
  CHECK(num / den < 6.0);
}
