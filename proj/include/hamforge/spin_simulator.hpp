#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hamforge/filter_algebra.hpp"
#include "hamforge/lp_compiler.hpp"
#include "hamforge/pulse_engine.hpp"

namespace hamforge {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using State = Eigen::VectorXcd;

constexpr int kMaxSimQubits = 12;
constexpr int kMaxAdiabaticQubits = 8;

// Qubit j (1-based) is bit N-j of the basis index, so qubit 1 is leftmost in kron order.
enum class Pauli { X, Y, Z };
Matrix pauli_string(int N, const std::vector<std::pair<int, Pauli>>& ops);
Matrix pair_term(int N, int i, int j, Pauli p);
Matrix field_z(int N);  // sum_j Z_j

Matrix build_hamiltonian(const CouplingProfile& profile, int N);
// Pure X-type Ising part only (the B term dropped).
Matrix ising_x(const std::vector<double>& omega, int N);

double operator_norm(const Matrix& A);
double hermiticity_error(const Matrix& H);
double unitarity_error(const Matrix& U);

// exp(-i H t) through the Hermitian eigendecomposition
Matrix expm_hermitian(const Matrix& H, double t);

// Diagonal of prod_{q: sign -1} Z_q for one schedule row.
Eigen::VectorXd pulse_layer_diagonal(const PulseSchedule& s, std::size_t segment);

// prod_l P_l exp(-i H dt_l) P_l, later segments to the left, dt_l = T w_l / sum w.
Matrix filtered_propagator(const PulseSchedule& s, const Matrix& H, double T);

// (prod_{j=1..m} e^{-i H_j t/2r} prod_{j=m..1} e^{-i H_j t/2r})^r
Matrix split_step(const std::vector<Matrix>& terms, double t, int r);

struct GroundState {
  State vector;
  double energy = 0.0;
  double gap = 0.0;
  bool degenerate = false;
};

// First nonzero amplitude made real positive.
GroundState ground_state(const Matrix& H);
// Restricted to the sector of prod_j Z_j with the given parity (+1 or -1).
GroundState ground_state_in_parity(const Matrix& H, int N, int parity);

enum class TrotterMode { BothSwitchable, FieldSwitchableDelta, Pessimistic };
std::string to_string(TrotterMode m);
TrotterMode parse_trotter_mode(const std::string& s);

struct TrotterConfig {
  TrotterMode mode = TrotterMode::BothSwitchable;
  std::vector<int> r_values{4, 8, 16, 32};
  double delta = 1e-3;
  double t = 1.0;
  int n = 4;
  double b = 0.7;
  std::vector<double> omega;  // native X couplings; empty means all ones
  FilterExpr filter = FilterExpr::lambda(0);
  int random_states = 20;
  std::uint64_t seed = 1;
};

struct TrotterPoint {
  int r = 0;
  double measured = 0.0;
  double bound = 0.0;
  double trace_distance_max = 0.0;
  bool bound_ok = false;
  bool trace_ok = false;
};

struct TrotterReport {
  TrotterMode mode;
  int m = 0;
  double h_norm = 0.0;
  double drift = 0.0;  // delta ||H_I|| t, burst mode only
  std::vector<TrotterPoint> points;
  double slope = 0.0;
  bool all_bounds_hold = false;
};

TrotterReport trotter_error_report(const TrotterConfig& cfg);

struct HeisenbergConfig {
  int n = 3;
  std::vector<double> omega;  // native X couplings
  FilterExpr filter_x = FilterExpr::lambda(0);
  FilterExpr filter_y = FilterExpr::lambda(0);
  FilterExpr filter_z = FilterExpr::lambda(0);
  double t = 1.0;
};

// Global pi/2 rotations: G_z maps X to Y, G_y maps X to Z under conjugation.
Matrix global_rotation_z(int N);
Matrix global_rotation_y(int N);

// Target sum_d Omega_d (f_x X X + f_y Y Y + f_z Z Z).
Matrix heisenberg_target(const HeisenbergConfig& cfg);
Matrix heisenberg_evolution(const HeisenbergConfig& cfg, int r);

struct HeisenbergPoint {
  int r = 0;
  double error = 0.0;
};
std::vector<HeisenbergPoint> heisenberg_convergence(const HeisenbergConfig& cfg, const std::vector<int>& rs);

struct AdiabaticConfig {
  int n = 4;
  double omega = 4.0;  // H_s strength
  double coupling = -1.0;  // native all-to-all Omega
  double tau = 6.0;
  std::vector<int> steps{2, 4, 8, 16, 32};
  FilterExpr filter = FilterExpr::product({decouple_distance_expr(2), decouple_distance_expr(3)});
};

struct AdiabaticPoint {
  int r = 0;
  double dt = 0.0;
  double infidelity = 0.0;  // 1 - |<phi|psi>|^2
  double predicted = 0.0;   // Var(H(t_f)) dt^2 / 4 in |g_s>
  double target_overlap = 0.0;  // |<g_t|psi(tau)>|^2
  double pulsed_overlap = 0.0;  // |<psi|psi_pulsed>|^2 with the pulses simulated
};

struct AdiabaticReport {
  std::vector<AdiabaticPoint> points;
  double slope = 0.0;
  double ratio_at_largest = 0.0;
  double unfiltered_overlap = 0.0;  // exact ramp, overlap with ground state of H_a
  double gt_ga_overlap = 0.0;
  bool adiabatic_ok = false;
  bool target_degenerate = false;
  std::vector<double> filter;  // normalized realized filter
};

AdiabaticReport adiabatic_run(const AdiabaticConfig& cfg);

struct PowerLawConfig {
  int n = 8;
  int levels = 12;
  double exponent = 1.0;   // native Omega_d = 1/d^exponent
  double t = 0.05;
  int passes = 1;
};

struct PowerLawPass {
  std::vector<double> measured;   // Omega_eff(d)
  std::vector<double> ideal;      // L -> infinity limit
  std::vector<double> tail_bound; // allowed |measured - ideal|
  std::vector<double> finite_l;   // closed-form partial sum
  bool within_bound = false;
};

struct PowerLawReport {
  std::vector<PowerLawPass> passes;
};

PowerLawReport verify_power_law(const PowerLawConfig& cfg);

// Effective X couplings of a diagonal-in-X propagator, read from its phases.
std::vector<double> extract_x_profile(const Matrix& U, int N, double t);

// Level weights alpha_i for a mapping g(d) = sum_i alpha_i f(d)^i with
// f = 1 - 2d/k. Input: Taylor coefficients of g in (d - k/2). Throws
// InputError when some alpha_i comes out negative, which happens unless the
// coefficients alternate in sign.
std::vector<double> power_series_weights(const std::vector<double>& taylor, int k);
// Taylor coefficients around k/2 of the polynomial sum_i p_i d^i.
std::vector<double> polynomial_taylor(const std::vector<double>& poly, int k);
// Taylor coefficients around k/2 of d^-p, truncated to `terms` entries.
std::vector<double> inverse_power_taylor(int p, int k, int terms);

}  // namespace hamforge
