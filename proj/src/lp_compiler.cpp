#include "hamforge/lp_compiler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "hamforge/delta_builder.hpp"
#include "hamforge/error.hpp"

namespace hamforge {

CouplingProfile make_profile(int D) {
  if (D < 1) throw InputError("profile dimension must be >= 1");
  CouplingProfile p;
  p.dimension = D;
  p.omega_x.assign(D, 0.0);
  p.omega_y.assign(D, 0.0);
  p.omega_z.assign(D, 0.0);
  return p;
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;

struct Tableau {
  int rows = 0, cols = 0;  // cols excludes the rhs
  std::vector<double> a;   // rows x (cols + 1)
  std::vector<int> basis;
  std::vector<bool> live;  // redundant rows get switched off

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * (cols + 1) + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * (cols + 1) + j]; }
  double& rhs(int i) { return at(i, cols); }

  void pivot(int r, int c) {
    const double p = at(r, c);
    for (int j = 0; j <= cols; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (int i = 0; i < rows; ++i) {
      if (i == r || !live[i]) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    basis[r] = c;
  }
};

// Runs simplex on `tab` for cost vector `cost` over columns < allowed.
// Returns false if unbounded.
bool run_simplex(Tableau& tab, const std::vector<double>& cost, int allowed, LpResult& res) {
  for (;;) {
    int enter = -1;
    for (int j = 0; j < allowed && enter < 0; ++j) {
      double rc = cost[j];
      for (int i = 0; i < tab.rows; ++i)
        if (tab.live[i]) rc -= cost[tab.basis[i]] * tab.at(i, j);
      if (rc < -kCostTol) enter = j;
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tab.rows; ++i) {
      if (!tab.live[i]) continue;
      const double v = tab.at(i, enter);
      if (v <= kPivotTol) continue;
      const double ratio = std::max(0.0, tab.rhs(i)) / v;
      if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && tab.basis[i] < tab.basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return false;
    if (best == 0.0) ++res.degenerate_pivots;
    tab.pivot(leave, enter);
    ++res.pivots;
    if (res.pivots > 200000) throw std::runtime_error("simplex: pivot limit reached");
  }
}

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c) {
  const int D = static_cast<int>(A.size());
  if (D == 0 || static_cast<int>(b.size()) != D) throw InputError("solve_lp: dimension mismatch");
  const int m = static_cast<int>(A.front().size());
  if (static_cast<int>(c.size()) != m) throw InputError("solve_lp: cost length mismatch");
  for (const auto& row : A) {
    if (static_cast<int>(row.size()) != m) throw InputError("solve_lp: ragged constraint matrix");
    for (double v : row)
      if (!std::isfinite(v)) throw InputError("solve_lp: non-finite matrix entry");
  }
  for (double v : b)
    if (!std::isfinite(v)) throw InputError("solve_lp: non-finite rhs");
  for (double v : c)
    if (!std::isfinite(v)) throw InputError("solve_lp: non-finite cost");

  std::vector<double> flip(D, 1.0);
  for (int i = 0; i < D; ++i)
    if (b[i] < 0) flip[i] = -1.0;

  Tableau tab;
  tab.rows = D;
  tab.cols = m + D;
  tab.a.assign(static_cast<std::size_t>(D) * (tab.cols + 1), 0.0);
  tab.basis.resize(D);
  tab.live.assign(D, true);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < m; ++j) tab.at(i, j) = flip[i] * A[i][j];
    tab.at(i, m + i) = 1.0;
    tab.rhs(i) = flip[i] * b[i];
    tab.basis[i] = m + i;
  }

  LpResult res;
  std::vector<double> phase1(m + D, 0.0);
  for (int i = 0; i < D; ++i) phase1[m + i] = 1.0;
  run_simplex(tab, phase1, m + D, res);

  double infeas = 0.0, bnorm = 0.0;
  for (int i = 0; i < D; ++i) {
    if (tab.basis[i] >= m) infeas += std::max(0.0, tab.rhs(i));
    bnorm = std::max(bnorm, std::abs(b[i]));
  }

  auto basis_duals = [&](const std::vector<double>& cost, const std::vector<double>& colsign) {
    // B^T y = c_B over live rows, B taken from the original (flipped) columns
    std::vector<int> rows;
    for (int i = 0; i < D; ++i)
      if (tab.live[i]) rows.push_back(i);
    const int r = static_cast<int>(rows.size());
    Eigen::MatrixXd B(D, r);
    Eigen::VectorXd cb(r);
    for (int k = 0; k < r; ++k) {
      const int j = tab.basis[rows[k]];
      for (int i = 0; i < D; ++i) B(i, k) = j < m ? colsign[i] * A[i][j] : (i == j - m ? 1.0 : 0.0);
      cb(k) = cost[j];
    }
    Eigen::VectorXd y = B.transpose().colPivHouseholderQr().solve(cb);
    std::vector<double> out(D);
    for (int i = 0; i < D; ++i) out[i] = colsign[i] * y(i);
    return out;
  };

  if (infeas > 1e-9 * (1.0 + bnorm)) {
    res.status = LpStatus::Infeasible;
    res.certificate = basis_duals(phase1, flip);
    return res;
  }

  // push zero-level artificials out of the basis, dropping redundant rows
  for (int i = 0; i < D; ++i) {
    if (tab.basis[i] < m) continue;
    int col = -1;
    for (int j = 0; j < m; ++j)
      if (std::abs(tab.at(i, j)) > 1e-9) {
        col = j;
        break;
      }
    if (col >= 0) tab.pivot(i, col);
    else tab.live[i] = false;
  }

  std::vector<double> phase2(m + D, 0.0);
  for (int j = 0; j < m; ++j) phase2[j] = c[j];
  if (!run_simplex(tab, phase2, m, res)) throw std::runtime_error("solve_lp: unbounded objective");

  // recompute basic values from the original data for accuracy
  std::vector<int> rows;
  for (int i = 0; i < D; ++i)
    if (tab.live[i]) rows.push_back(i);
  const int r = static_cast<int>(rows.size());
  Eigen::MatrixXd B(D, r);
  Eigen::VectorXd bb(D);
  for (int i = 0; i < D; ++i) bb(i) = b[i];
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < D; ++i) B(i, k) = A[i][tab.basis[rows[k]]];
  Eigen::VectorXd xb = B.colPivHouseholderQr().solve(bb);
  res.t.assign(m, 0.0);
  // degenerate basics come back as rounding dust; they are zero
  const double dust = 1e-11 * (1.0 + bnorm);
  for (int k = 0; k < r; ++k) res.t[tab.basis[rows[k]]] = xb(k) > dust ? xb(k) : 0.0;
  res.objective = 0.0;
  for (int j = 0; j < m; ++j) res.objective += c[j] * res.t[j];

  std::vector<double> ones(D, 1.0);
  res.duals = basis_duals(phase2, ones);
  res.dual_feasible = true;
  double cmax = 1.0;
  for (double v : c) cmax = std::max(cmax, std::abs(v));
  for (int j = 0; j < m; ++j) {
    double rc = c[j];
    for (int i = 0; i < D; ++i) rc -= res.duals[i] * A[i][j];
    if (rc < -1e-8 * cmax) res.dual_feasible = false;
  }
  res.status = LpStatus::Optimal;
  return res;
}

namespace {

std::string vector_key(const FilterVector& v) {
  std::string k;
  for (const auto& x : v.values) {
    k += to_string(x);
    k += ',';
  }
  return k;
}

}  // namespace

double pulse_layer_cost(const FilterExpr& e, int N) {
  return 1.0 + static_cast<double>(resource_estimate(e, N).pulse_layers);
}

FilterBasis build_basis(int N, int max_depth, bool include_delta_basis, const CostHook& cost) {
  if (N < 3) throw InputError("build_basis: N must be >= 3");
  if (max_depth < 0) throw InputError("build_basis: depth must be >= 0");
  const int D = N - 1;
  const std::size_t cap = std::max<std::size_t>(4096, static_cast<std::size_t>(N) * N * N);
  FilterBasis basis;
  basis.n = N;
  std::map<std::string, bool> seen;
  auto add = [&](const FilterExpr& e) {
    if (basis.entries.size() >= cap) {
      basis.truncated = true;
      return false;
    }
    FilterVector v = normalized_filter_vector(e, D);
    auto key = vector_key(v);
    if (seen.count(key)) return false;
    seen[key] = true;
    basis.entries.push_back({e, std::move(v), cost ? cost(e, N) : 1.0});
    return true;
  };

  std::vector<FilterExpr> primitives;
  for (int k = 0; k <= N; ++k)
    if (add(FilterExpr::lambda(k))) primitives.push_back(FilterExpr::lambda(k));
  for (int k = 2; k <= N - 1; ++k)
    if (add(FilterExpr::gamma(k))) primitives.push_back(FilterExpr::gamma(k));

  // level l holds products of l+1 primitives, built in nondecreasing primitive order
  std::vector<std::pair<FilterExpr, std::size_t>> level;
  for (std::size_t i = 0; i < primitives.size(); ++i) level.emplace_back(primitives[i], i);
  for (int depth = 1; depth <= max_depth && !basis.truncated; ++depth) {
    std::vector<std::pair<FilterExpr, std::size_t>> next;
    for (const auto& [e, last] : level) {
      for (std::size_t i = last; i < primitives.size(); ++i) {
        if (primitives[i].kind() == FilterExpr::Kind::Lambda && primitives[i].k() == 0) continue;
        std::vector<FilterExpr> f;
        if (e.kind() == FilterExpr::Kind::Product) f = e.factors();
        else f.push_back(e);
        if (f.size() == 1 && f[0].kind() == FilterExpr::Kind::Lambda && f[0].k() == 0) break;
        f.push_back(primitives[i]);
        FilterExpr p = FilterExpr::product(std::move(f));
        // keep duplicates as stepping stones for deeper products
        add(p);
        next.emplace_back(p, i);
        if (basis.truncated) break;
      }
      if (basis.truncated) break;
    }
    level = std::move(next);
  }

  if (include_delta_basis) {
    basis.truncated = false;
    for (int d = 1; d < N; ++d)
      for (int s : {-1, 1}) {
        DeltaRecipe r = delta_expr(d, N, s);
        FilterVector v = normalized_filter_vector(r.expr, D);
        auto key = vector_key(v);
        if (seen.count(key)) continue;
        seen[key] = true;
        basis.entries.push_back({r.expr, std::move(v), cost ? cost(r.expr, N) : 1.0});
      }
  }
  return basis;
}

std::vector<double> target_ratio(const std::vector<double>& native, const std::vector<double>& target) {
  if (native.size() != target.size()) throw InputError("target and native profiles differ in length");
  std::vector<double> out(native.size());
  for (std::size_t i = 0; i < native.size(); ++i) {
    if (native[i] == 0.0) {
      if (target[i] != 0.0)
        throw InputError("native coupling is zero at d=" + std::to_string(i + 1) + " but the target is not");
      out[i] = 0.0;
    } else {
      out[i] = target[i] / native[i];
    }
  }
  return out;
}

double residual(const CompiledProgram& p, const std::vector<double>& target, const FilterBasis& basis) {
  const std::size_t D = target.size();
  std::vector<Rational> acc(D);
  for (std::size_t d = 0; d < D; ++d) acc[d] = -Rational(target[d]);
  for (const auto& term : p.terms) {
    if (term.basis_index < 0 || static_cast<std::size_t>(term.basis_index) >= basis.entries.size())
      throw InputError("program term refers to a missing basis entry");
    const Rational t(term.t);
    const auto& v = basis.entries[term.basis_index].vector;
    for (std::size_t d = 0; d < D; ++d) acc[d] += t * v.values[d];
  }
  Rational worst(0);
  for (const auto& a : acc) worst = std::max(worst, Rational(abs(a)));
  return to_double(worst);
}

CompiledProgram compile(const std::vector<double>& target, const FilterBasis& basis) {
  if (basis.entries.empty()) throw InputError("compile: empty basis");
  const int D = static_cast<int>(target.size());
  if (D != basis.n - 1) throw InputError("compile: target dimension does not match the basis");
  const int m = static_cast<int>(basis.entries.size());
  std::vector<std::vector<double>> A(D, std::vector<double>(m));
  std::vector<double> c(m);
  for (int j = 0; j < m; ++j) {
    const auto v = basis.entries[j].vector.to_double();
    for (int d = 0; d < D; ++d) A[d][j] = v[d];
    c[j] = basis.entries[j].cost;
    if (!(c[j] > 0)) throw InputError("compile: basis costs must be positive");
  }
  LpResult lp = solve_lp(A, target, c);
  if (lp.status == LpStatus::Infeasible)
    throw InfeasibleError("target lies outside the cone of the filter basis", lp.certificate);
  CompiledProgram p;
  for (int j = 0; j < m; ++j)
    if (lp.t[j] > 0) {
      p.terms.push_back({j, basis.entries[j].expr, lp.t[j]});
      p.total_time += lp.t[j];
    }
  p.objective = lp.objective;
  p.dual_feasible = lp.dual_feasible;
  p.residual_inf_norm = residual(p, target, basis);
  if (p.residual_inf_norm > 1e-8) {
    std::ostringstream os;
    os << "compiled program misses the target by " << p.residual_inf_norm;
    throw VerificationError(os.str());
  }
  return p;
}

}  // namespace hamforge
