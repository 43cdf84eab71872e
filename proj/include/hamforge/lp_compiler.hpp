#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hamforge/filter_algebra.hpp"

namespace hamforge {

struct CouplingProfile {
  int dimension = 0;  // D = N - 1
  std::vector<double> omega_x, omega_y, omega_z;
  double transverse_b = 0.0;

  int qubits() const { return dimension + 1; }
  bool operator==(const CouplingProfile&) const = default;
};

// Zero-filled axes, all of length D.
CouplingProfile make_profile(int D);

enum class LpStatus { Optimal, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> t;
  double objective = 0.0;
  std::vector<double> duals;        // y with A^T y <= c at optimum
  bool dual_feasible = false;
  std::vector<double> certificate;  // Farkas y: A^T y <= 0, b.y > 0
  int pivots = 0;
  int degenerate_pivots = 0;
};

// min c.t  s.t.  A t = b, t >= 0. A is row-major D x m. Two-phase simplex
// with Bland's rule; the optimum returned is a vertex.
LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c);

struct BasisEntry {
  FilterExpr expr;
  FilterVector vector;  // per unit time
  double cost = 1.0;
};

struct FilterBasis {
  int n = 0;
  std::vector<BasisEntry> entries;
  bool truncated = false;  // product levels hit the size cap
};

using CostHook = std::function<double(const FilterExpr&, int N)>;

// Lambda_0..Lambda_N, Gamma_2..Gamma_{N-1}, products up to max_depth
// (deduplicated by vector), and optionally the 2(N-1) delta recipes.
FilterBasis build_basis(int N, int max_depth, bool include_delta_basis, const CostHook& cost = {});

// Pulse-count cost built on resource_estimate.
double pulse_layer_cost(const FilterExpr& e, int N);

struct ProgramTerm {
  int basis_index = 0;
  FilterExpr expr;
  double t = 0.0;
};

struct CompiledProgram {
  std::vector<ProgramTerm> terms;
  double objective = 0.0;
  double residual_inf_norm = 0.0;
  double total_time = 0.0;
  bool dual_feasible = false;
};

// target_d / native_d; a zero native entry with nonzero target is an input error
std::vector<double> target_ratio(const std::vector<double>& native, const std::vector<double>& target);

// Throws InfeasibleError with a Farkas certificate when the target is outside the cone.
CompiledProgram compile(const std::vector<double>& target, const FilterBasis& basis);

// Exact infinity norm of sum t_j f_j - target, with the doubles taken at face value.
double residual(const CompiledProgram& p, const std::vector<double>& target, const FilterBasis& basis);

}  // namespace hamforge
