#include "hamforge/spin_simulator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "hamforge/delta_builder.hpp"
#include "hamforge/error.hpp"
#include "hamforge/kernels.hpp"

namespace hamforge {

namespace {

void check_qubits(int N) {
  if (N < 1 || N > kMaxSimQubits)
    throw InputError("simulator supports 1 <= N <= " + std::to_string(kMaxSimQubits) + ", got " + std::to_string(N));
}

inline std::size_t dim_of(int N) { return std::size_t{1} << N; }
inline int bit_of(int N, int q) { return N - q; }  // qubit q is 1-based

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Matrix pauli_string(int N, const std::vector<std::pair<int, Pauli>>& ops) {
  check_qubits(N);
  const std::size_t dim = dim_of(N);
  Matrix M = Matrix::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    std::size_t out = s;
    cplx phase = 1.0;
    for (const auto& [q, p] : ops) {
      if (q < 1 || q > N) throw InputError("pauli_string: qubit out of range");
      const std::size_t mask = std::size_t{1} << bit_of(N, q);
      const bool one = (out & mask) != 0;
      switch (p) {
        case Pauli::X: out ^= mask; break;
        case Pauli::Y:
          phase *= one ? cplx(0, -1) : cplx(0, 1);
          out ^= mask;
          break;
        case Pauli::Z:
          if (one) phase = -phase;
          break;
      }
    }
    M(out, s) += phase;
  }
  return M;
}

Matrix pair_term(int N, int i, int j, Pauli p) { return pauli_string(N, {{i, p}, {j, p}}); }

Matrix field_z(int N) {
  check_qubits(N);
  const std::size_t dim = dim_of(N);
  Matrix M = Matrix::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    const int ones = __builtin_popcountll(s);
    M(s, s) = static_cast<double>(N - 2 * ones);
  }
  return M;
}

Matrix build_hamiltonian(const CouplingProfile& profile, int N) {
  check_qubits(N);
  if (N < 2) throw InputError("build_hamiltonian: need N >= 2");
  if (profile.dimension != N - 1 || static_cast<int>(profile.omega_x.size()) != N - 1 ||
      static_cast<int>(profile.omega_y.size()) != N - 1 || static_cast<int>(profile.omega_z.size()) != N - 1)
    throw InputError("build_hamiltonian: profile dimension must be N-1");
  const std::size_t dim = dim_of(N);
  Matrix H = Matrix::Zero(dim, dim);
  for (int d = 1; d < N; ++d)
    for (int j = 1; j + d <= N; ++j) {
      if (profile.omega_x[d - 1] != 0.0) H += profile.omega_x[d - 1] * pair_term(N, j, j + d, Pauli::X);
      if (profile.omega_y[d - 1] != 0.0) H += profile.omega_y[d - 1] * pair_term(N, j, j + d, Pauli::Y);
      if (profile.omega_z[d - 1] != 0.0) H += profile.omega_z[d - 1] * pair_term(N, j, j + d, Pauli::Z);
    }
  if (profile.transverse_b != 0.0) H += profile.transverse_b * field_z(N);
  return H;
}

Matrix ising_x(const std::vector<double>& omega, int N) {
  CouplingProfile p = make_profile(N - 1);
  p.omega_x = omega;
  return build_hamiltonian(p, N);
}

double operator_norm(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.adjoint() * A, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double hermiticity_error(const Matrix& H) { return operator_norm(H - H.adjoint()); }

double unitarity_error(const Matrix& U) {
  return operator_norm(U.adjoint() * U - Matrix::Identity(U.rows(), U.cols()));
}

namespace {

struct Eigensystem {
  Matrix vectors;
  Eigen::VectorXd values;
};

Eigensystem eigensystem(const Matrix& H) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return {es.eigenvectors(), es.eigenvalues()};
}

Matrix exp_from(const Eigensystem& e, double t) {
  const Eigen::Index dim = e.values.size();
  Eigen::VectorXcd phase(dim);
  for (Eigen::Index i = 0; i < dim; ++i) phase(i) = std::polar(1.0, -e.values(i) * t);
  Matrix M = e.vectors.adjoint();
  const auto& k = kernels::active();
  for (Eigen::Index j = 0; j < dim; ++j) k.complex_multiply_inplace(M.col(j).data(), phase.data(), dim);
  return e.vectors * M;
}

}  // namespace

Matrix expm_hermitian(const Matrix& H, double t) { return exp_from(eigensystem(H), t); }

Eigen::VectorXd pulse_layer_diagonal(const PulseSchedule& s, std::size_t segment) {
  const int N = s.qubit_count();
  check_qubits(N);
  const std::size_t dim = dim_of(N);
  std::size_t mask = 0;
  for (int q = 1; q <= N; ++q)
    if (s.sign(segment, q - 1) < 0) mask |= std::size_t{1} << bit_of(N, q);
  Eigen::VectorXd diag(dim);
  for (std::size_t b = 0; b < dim; ++b) diag(b) = (__builtin_popcountll(b & mask) & 1) ? -1.0 : 1.0;
  return diag;
}

Matrix filtered_propagator(const PulseSchedule& schedule, const Matrix& H, double T) {
  const int N = schedule.qubit_count();
  check_qubits(N);
  if (static_cast<std::size_t>(H.rows()) != dim_of(N)) throw InputError("filtered_propagator: H does not match the schedule");
  const PulseSchedule s = schedule.merged();
  const double total = to_double(s.total_duration());
  const Eigensystem e = eigensystem(H);
  Matrix U = Matrix::Identity(H.rows(), H.cols());
  for (std::size_t l = 0; l < s.segment_count(); ++l) {
    const double dt = T * to_double(s.duration(l)) / total;
    const Eigen::VectorXd p = pulse_layer_diagonal(s, l);
    Matrix step = exp_from(e, dt);
    step = p.asDiagonal() * step * p.asDiagonal();
    U = step * U;
  }
  return U;
}

Matrix split_step(const std::vector<Matrix>& terms, double t, int r) {
  if (r < 1) throw InputError("split_step: r must be >= 1");
  if (terms.empty()) throw InputError("split_step: no terms");
  std::vector<Matrix> half;
  for (const auto& h : terms) half.push_back(expm_hermitian(h, t / (2.0 * r)));
  Matrix slice = Matrix::Identity(terms[0].rows(), terms[0].cols());
  for (std::size_t j = 0; j < half.size(); ++j) slice = slice * half[j];
  for (std::size_t j = half.size(); j-- > 0;) slice = slice * half[j];
  Matrix U = Matrix::Identity(slice.rows(), slice.cols());
  for (int i = 0; i < r; ++i) U = slice * U;
  return U;
}

namespace {

void fix_phase(State& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
}

}  // namespace

GroundState ground_state(const Matrix& H) {
  if (hermiticity_error(H) > 1e-9) throw InputError("ground_state: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  GroundState g;
  g.vector = es.eigenvectors().col(0);
  g.energy = es.eigenvalues()(0);
  g.gap = H.rows() > 1 ? es.eigenvalues()(1) - g.energy : 0.0;
  g.degenerate = H.rows() > 1 && g.gap < 1e-10;
  fix_phase(g.vector);
  return g;
}

GroundState ground_state_in_parity(const Matrix& H, int N, int parity) {
  check_qubits(N);
  std::vector<Eigen::Index> idx;
  for (std::size_t s = 0; s < dim_of(N); ++s) {
    const int p = (__builtin_popcountll(s) & 1) ? -1 : 1;
    if (p == parity) idx.push_back(static_cast<Eigen::Index>(s));
  }
  const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
  Matrix sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = H(idx[a], idx[b]);
  GroundState g = ground_state(sub);
  State full = State::Zero(H.rows());
  for (Eigen::Index a = 0; a < k; ++a) full(idx[a]) = g.vector(a);
  g.vector = full;
  return g;
}

std::string to_string(TrotterMode m) {
  switch (m) {
    case TrotterMode::BothSwitchable: return "both";
    case TrotterMode::FieldSwitchableDelta: return "delta";
    case TrotterMode::Pessimistic: return "pessimistic";
  }
  return "?";
}

TrotterMode parse_trotter_mode(const std::string& s) {
  if (s == "both" || s == "both_switchable") return TrotterMode::BothSwitchable;
  if (s == "delta" || s == "field_switchable_delta") return TrotterMode::FieldSwitchableDelta;
  if (s == "pessimistic") return TrotterMode::Pessimistic;
  throw InputError("unknown trotter mode '" + s + "'");
}

namespace {

State random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  State v(dim);
  for (std::size_t i = 0; i < dim; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

std::vector<double> filtered_profile(const std::vector<double>& omega, const std::vector<double>& f) {
  std::vector<double> out(omega.size());
  for (std::size_t d = 0; d < omega.size(); ++d) out[d] = omega[d] * f[d];
  return out;
}

}  // namespace

TrotterReport trotter_error_report(const TrotterConfig& cfg) {
  const int N = cfg.n;
  check_qubits(N);
  if (N < 2) throw InputError("trotter: need N >= 2");
  if (cfg.r_values.empty()) throw InputError("trotter: no r values");
  for (int r : cfg.r_values)
    if (r < 1) throw InputError("trotter: r must be >= 1");
  const std::vector<double> omega = cfg.omega.empty() ? std::vector<double>(N - 1, 1.0) : cfg.omega;
  if (static_cast<int>(omega.size()) != N - 1) throw InputError("trotter: omega must have N-1 entries");

  const PulseSchedule sched = materialize(cfg.filter, N);
  const std::vector<double> f = realized_filter_f64(sched);
  const Matrix HI = ising_x(omega, N);
  const Matrix HIt = ising_x(filtered_profile(omega, f), N);
  const Matrix HT = cfg.b * field_z(N);

  TrotterReport rep;
  rep.mode = cfg.mode;
  std::vector<Matrix> terms;
  Matrix Htarget;
  switch (cfg.mode) {
    case TrotterMode::BothSwitchable:
      terms = {HIt, HT};
      Htarget = HIt + HT;
      break;
    case TrotterMode::FieldSwitchableDelta:
      if (!(cfg.delta > 0)) throw InputError("trotter: delta must be positive");
      terms = {HIt, cfg.delta * HI + HT};
      Htarget = HIt + cfg.delta * HI + HT;
      rep.drift = cfg.delta * operator_norm(HI) * cfg.t;
      break;
    case TrotterMode::Pessimistic: {
      // one term per distinct pulse layer, weighted by its share of the time
      const PulseSchedule s = sched;
      const double total = to_double(s.total_duration());
      std::vector<std::vector<std::int8_t>> rows;
      std::vector<double> weight;
      for (std::size_t l = 0; l < s.segment_count(); ++l) {
        auto row = s.row(l);
        auto it = std::find(rows.begin(), rows.end(), row);
        const double w = to_double(s.duration(l)) / total;
        if (it == rows.end()) {
          rows.push_back(row);
          weight.push_back(w);
        } else {
          weight[it - rows.begin()] += w;
        }
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        Eigen::VectorXd p = pulse_layer_diagonal(PulseSchedule(N, {Rational(1)}, rows[i]), 0);
        terms.push_back(weight[i] * (p.asDiagonal() * HI * p.asDiagonal() + HT));
      }
      Htarget = HIt + HT;
      break;
    }
  }
  rep.m = static_cast<int>(terms.size());
  rep.h_norm = operator_norm(Htarget);
  const Matrix V = expm_hermitian(Htarget, cfg.t);
  std::mt19937_64 rng(cfg.seed);
  std::vector<State> states;
  for (int i = 0; i < cfg.random_states; ++i) states.push_back(random_state(V.rows(), rng));

  rep.all_bounds_hold = true;
  std::vector<double> rs, errs;
  for (int r : cfg.r_values) {
    TrotterPoint pt;
    pt.r = r;
    const Matrix U = split_step(terms, cfg.t, r);
    pt.measured = operator_norm(V - U);
    const double m = rep.m;
    pt.bound = 16.0 * m * m * m * std::pow(rep.h_norm * cfg.t, 3) / (static_cast<double>(r) * r);
    pt.bound_ok = pt.measured <= pt.bound;
    pt.trace_ok = true;
    for (const auto& psi : states) {
      const double ov = std::norm(((V * psi).adjoint() * (U * psi))(0, 0));
      const double td = std::sqrt(std::max(0.0, 1.0 - ov));
      pt.trace_distance_max = std::max(pt.trace_distance_max, td);
      if (td > pt.measured + 1e-12) pt.trace_ok = false;
    }
    rep.all_bounds_hold = rep.all_bounds_hold && pt.bound_ok && pt.trace_ok;
    rep.points.push_back(pt);
    rs.push_back(r);
    errs.push_back(std::max(pt.measured, 1e-300));
  }
  rep.slope = rs.size() >= 2 ? fit_slope(rs, errs) : 0.0;
  return rep;
}

Matrix global_rotation_z(int N) { return expm_hermitian(0.25 * M_PI * field_z(N), 1.0); }

Matrix global_rotation_y(int N) {
  check_qubits(N);
  Matrix Y = Matrix::Zero(dim_of(N), dim_of(N));
  for (int q = 1; q <= N; ++q) Y += pauli_string(N, {{q, Pauli::Y}});
  return expm_hermitian(0.25 * M_PI * Y, 1.0);
}

namespace {

std::vector<double> heisenberg_omega(const HeisenbergConfig& cfg) {
  if (cfg.omega.empty()) return std::vector<double>(cfg.n - 1, 1.0);
  if (static_cast<int>(cfg.omega.size()) != cfg.n - 1) throw InputError("heisenberg: omega must have N-1 entries");
  return cfg.omega;
}

}  // namespace

Matrix heisenberg_target(const HeisenbergConfig& cfg) {
  const int N = cfg.n;
  const auto omega = heisenberg_omega(cfg);
  CouplingProfile p = make_profile(N - 1);
  p.omega_x = filtered_profile(omega, realized_filter_f64(materialize(cfg.filter_x, N)));
  p.omega_y = filtered_profile(omega, realized_filter_f64(materialize(cfg.filter_y, N)));
  p.omega_z = filtered_profile(omega, realized_filter_f64(materialize(cfg.filter_z, N)));
  return build_hamiltonian(p, N);
}

Matrix heisenberg_evolution(const HeisenbergConfig& cfg, int r) {
  if (r < 1) throw InputError("heisenberg: r must be >= 1");
  const int N = cfg.n;
  check_qubits(N);
  const auto omega = heisenberg_omega(cfg);
  const Matrix HI = ising_x(omega, N);
  const double h = cfg.t / r;
  const PulseSchedule sx = materialize(cfg.filter_x, N);
  const PulseSchedule sy = materialize(cfg.filter_y, N);
  const PulseSchedule sz = materialize(cfg.filter_z, N);
  const Matrix Gz = global_rotation_z(N), Gy = global_rotation_y(N);
  // conjugation by the global pulses turns the filtered XX evolution into YY or ZZ
  const Matrix Ax = filtered_propagator(sx, HI, h / 2);
  const Matrix Ay = Gz * filtered_propagator(sy, HI, h / 2) * Gz.adjoint();
  const Matrix Az = Gy * filtered_propagator(sz, HI, h) * Gy.adjoint();
  const Matrix slice = Ax * Ay * Az * Ay * Ax;
  Matrix U = Matrix::Identity(HI.rows(), HI.cols());
  for (int i = 0; i < r; ++i) U = slice * U;
  return U;
}

std::vector<HeisenbergPoint> heisenberg_convergence(const HeisenbergConfig& cfg, const std::vector<int>& rs) {
  const Matrix exact = expm_hermitian(heisenberg_target(cfg), cfg.t);
  std::vector<HeisenbergPoint> out;
  for (int r : rs) out.push_back({r, operator_norm(heisenberg_evolution(cfg, r) - exact)});
  return out;
}

namespace {

double variance(const Matrix& H, const State& v) {
  const cplx e = (v.adjoint() * H * v)(0, 0);
  const cplx e2 = (v.adjoint() * H * H * v)(0, 0);
  return e2.real() - e.real() * e.real();
}

}  // namespace

AdiabaticReport adiabatic_run(const AdiabaticConfig& cfg) {
  const int N = cfg.n;
  if (N < 2 || N > kMaxAdiabaticQubits) throw InputError("adiabatic: N must be in [2, 8]");
  if (!(cfg.tau > 0)) throw InputError("adiabatic: tau must be positive");
  if (cfg.steps.empty()) throw InputError("adiabatic: no step counts");
  for (int r : cfg.steps)
    if (r < 1) throw InputError("adiabatic: step counts must be >= 1");

  AdiabaticReport rep;
  const PulseSchedule sched = materialize(cfg.filter, N);
  rep.filter = realized_filter_f64(sched);
  const std::vector<double> ones(N - 1, 1.0);
  const Matrix Hs = (-cfg.omega / 2.0) * field_z(N);
  const Matrix Ha = cfg.coupling * ising_x(ones, N);
  const Matrix Ht = cfg.coupling * ising_x(rep.filter, N);
  const Matrix Hdot = (Ht - Hs) / cfg.tau;
  const GroundState gs = ground_state(Hs);
  const GroundState gt = ground_state_in_parity(Ht, N, 1);
  const GroundState ga = ground_state_in_parity(Ha, N, 1);
  rep.target_degenerate = gt.degenerate;
  rep.gt_ga_overlap = std::norm(gt.vector.dot(ga.vector));
  const double var = variance(Ht, gs.vector);

  // exact ramp under the unfiltered Hamiltonian, midpoint steps
  {
    const int fine = 2000;
    const double dt = cfg.tau / fine;
    State v = gs.vector;
    for (int j = 0; j < fine; ++j) {
      const double s = (j + 0.5) * dt / cfg.tau;
      v = expm_hermitian((1 - s) * Hs + s * Ha, dt) * v;
    }
    rep.unfiltered_overlap = std::norm(ga.vector.dot(v));
    rep.adiabatic_ok = rep.unfiltered_overlap >= 0.99;
  }

  std::vector<double> rs, infs;
  for (int R : cfg.steps) {
    AdiabaticPoint pt;
    pt.r = R;
    pt.dt = cfg.tau / R;
    State psi = gs.vector, phi = gs.vector, pulsed = gs.vector;
    for (int j = 1; j <= R; ++j) {
      const double s = j * pt.dt / cfg.tau;
      const Matrix Hf = (1 - s) * Hs + s * Ht;
      psi = expm_hermitian(Hf, pt.dt) * psi;
      phi = expm_hermitian(Hf * pt.dt + 0.5 * Hdot * pt.dt * pt.dt, 1.0) * phi;
      pulsed = filtered_propagator(sched, (1 - s) * Hs + s * Ha, pt.dt) * pulsed;
    }
    pt.infidelity = std::max(0.0, 1.0 - std::norm(phi.dot(psi)));
    pt.predicted = var * pt.dt * pt.dt / 4.0;
    pt.target_overlap = std::norm(gt.vector.dot(psi));
    pt.pulsed_overlap = std::norm(psi.dot(pulsed));
    rep.points.push_back(pt);
    rs.push_back(R);
    infs.push_back(std::max(pt.infidelity, 1e-300));
  }
  rep.slope = rs.size() >= 2 ? fit_slope(rs, infs) : 0.0;
  const auto& last = *std::max_element(rep.points.begin(), rep.points.end(),
                                       [](const auto& a, const auto& b) { return a.r < b.r; });
  rep.ratio_at_largest = last.predicted > 0 ? last.infidelity / last.predicted : 0.0;
  return rep;
}

std::vector<double> extract_x_profile(const Matrix& U, int N, double t) {
  check_qubits(N);
  const std::size_t dim = dim_of(N);
  if (static_cast<std::size_t>(U.rows()) != dim) throw InputError("extract_x_profile: size mismatch");
  Matrix Had(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) Had(a, b) = (__builtin_popcountll(a & b) & 1) ? -scale : scale;
  const Matrix Ux = Had * U * Had;
  Eigen::MatrixXd A(dim, N - 1);
  Eigen::VectorXd e(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    auto spin = [&](int q) { return (s >> bit_of(N, q)) & 1 ? -1.0 : 1.0; };
    for (int d = 1; d < N; ++d) {
      double c = 0;
      for (int j = 1; j + d <= N; ++j) c += spin(j) * spin(j + d);
      A(s, d - 1) = c;
    }
    e(s) = -std::arg(Ux(s, s)) / t;
  }
  Eigen::VectorXd x = A.colPivHouseholderQr().solve(e);
  return std::vector<double>(x.data(), x.data() + x.size());
}

PowerLawReport verify_power_law(const PowerLawConfig& cfg) {
  const int N = cfg.n;
  if (N < 2 || N > kMaxAdiabaticQubits) throw InputError("power law check: N must be in [2, 8]");
  if (cfg.levels < 1 || cfg.passes < 1) throw InputError("power law check: levels and passes must be >= 1");
  const int k = N + 1;
  const PulseSchedule lam = schedule_lambda(k, N);
  PowerLawReport rep;
  std::vector<double> omega(N - 1);
  for (int d = 1; d < N; ++d) omega[d - 1] = 1.0 / std::pow(static_cast<double>(d), cfg.exponent);

  for (int pass = 0; pass < cfg.passes; ++pass) {
    double load = 0;
    for (int d = 1; d < N; ++d) load += std::abs(omega[d - 1]) * (N - d);
    // keep every accumulated phase inside (-pi, pi)
    double t = 1.0 / (cfg.levels * load);
    if (cfg.t > 0) t = std::min(t, cfg.t);

    Matrix U = Matrix::Identity(dim_of(N), dim_of(N));
    std::vector<double> level = omega;
    for (int x = 0; x < cfg.levels; ++x) {
      // level x: Lambda_{N+1} applied x times, each pass through the pulses
      // acting on the previous level's effective Hamiltonian
      Matrix Ux = expm_hermitian(ising_x(level, N), t);
      if (x > 0) {
        std::vector<double> prev = level;
        Ux = filtered_propagator(lam, ising_x(prev, N), t);
        level = extract_x_profile(Ux, N, t);
      }
      U = Ux * U;
    }
    PowerLawPass p;
    p.measured = extract_x_profile(U, N, t);
    p.within_bound = true;
    for (int d = 1; d < N; ++d) {
      const double f = 1.0 - 2.0 * d / k;
      const double od = omega[d - 1];
      p.ideal.push_back(od * k / (2.0 * d));
      p.finite_l.push_back(od * (1.0 - std::pow(f, cfg.levels)) / (1.0 - f));
      p.tail_bound.push_back(std::abs(od) * std::pow(std::abs(f), cfg.levels) / (1.0 - f));
      if (std::abs(p.measured[d - 1] - p.ideal.back()) > p.tail_bound.back() + 1e-9 * std::abs(p.ideal.back()))
        p.within_bound = false;
    }
    omega = p.measured;
    rep.passes.push_back(std::move(p));
  }
  return rep;
}

std::vector<double> power_series_weights(const std::vector<double>& taylor, int k) {
  if (k < 2) throw InputError("power_series_weights: k must be >= 2");
  std::vector<double> alpha(taylor.size());
  const double h = -0.5 * k;
  double pw = 1.0;
  for (std::size_t i = 0; i < taylor.size(); ++i) {
    alpha[i] = taylor[i] * pw;
    if (alpha[i] < -1e-12 * std::max(1.0, std::abs(taylor[i] * pw)))
      throw InputError("mapping needs a negative level weight at order " + std::to_string(i) +
                       " (Taylor coefficients must alternate in sign)");
    alpha[i] = std::max(0.0, alpha[i]);
    pw *= h;
  }
  return alpha;
}

std::vector<double> polynomial_taylor(const std::vector<double>& poly, int k) {
  // sum_i p_i (u + c)^i with c = k/2, expanded in u
  const double c = 0.5 * k;
  std::vector<double> out(poly.size(), 0.0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    double binom = 1.0;
    for (std::size_t j = 0; j <= i; ++j) {
      out[j] += poly[i] * binom * std::pow(c, static_cast<double>(i - j));
      binom = binom * static_cast<double>(i - j) / static_cast<double>(j + 1);
    }
  }
  return out;
}

std::vector<double> inverse_power_taylor(int p, int k, int terms) {
  if (p < 1 || terms < 1) throw InputError("inverse_power_taylor: bad arguments");
  const double c = 0.5 * k;
  std::vector<double> out;
  double coef = std::pow(c, -p);  // binom(p+i-1, i) (-1)^i c^(-p-i)
  for (int i = 0; i < terms; ++i) {
    out.push_back(coef);
    coef *= -static_cast<double>(p + i) / static_cast<double>(i + 1) / c;
  }
  return out;
}

}  // namespace hamforge
