// hamforge command-line front end.
// Exit codes: 0 ok, 2 bad input, 3 verification failed, 4 infeasible, 5 bound violated.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hamforge/delta_builder.hpp"
#include "hamforge/error.hpp"
#include "hamforge/filter_algebra.hpp"
#include "hamforge/io.hpp"
#include "hamforge/lp_compiler.hpp"
#include "hamforge/pulse_engine.hpp"
#include "hamforge/spin_simulator.hpp"

using namespace hamforge;

namespace {

enum class Precision { Rational, Float64 };

Precision precision_from_env() {
  const char* v = std::getenv("HAMFORGE_PRECISION");
  if (!v || !*v) return Precision::Rational;
  const std::string s(v);
  if (s == "rational") return Precision::Rational;
  if (s == "float64") return Precision::Float64;
  throw InputError("HAMFORGE_PRECISION must be 'rational' or 'float64', got '" + s + "'");
}

// shortest round-trippable decimal, always with a decimal point
std::string fmt(double x) {
  if (x == 0) return "0.0";
  std::ostringstream os;
  os.precision(15);
  os << x;
  std::string s = os.str();
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") std::cout << j.dump(2) << '\n';
  else write_text_file(path, j.dump(2) + "\n");
}

FilterExpr load_expr(const std::string& path) { return expr_from_json(read_json_file(path)); }

FilterExpr default_composite() {
  return FilterExpr::product({decouple_distance_expr(2), decouple_distance_expr(3)});
}

struct Common {
  std::uint64_t seed = 1;
  int jobs = 1;
};

// ---- filter eval
struct FilterEvalArgs {
  std::string file;
  int n = 0;
  bool exact = false;
  std::string csv;
};

int run_filter_eval(const FilterEvalArgs& a) {
  const FilterExpr e = load_expr(a.file);
  if (a.n < 2) throw InputError("--n must be >= 2");
  const int D = a.n - 1;
  std::vector<double> vals;
  std::vector<std::string> exact;
  if (precision_from_env() == Precision::Rational) {
    const FilterVector v = normalized_filter_vector(e, D);
    vals = v.to_double();
    for (const auto& x : v.values) exact.push_back(to_string(x));
  } else {
    vals = filter_vector_f64(e, D);
    const double t = to_double(duration(e));
    for (auto& x : vals) x /= t;
  }
  std::ostringstream csv;
  csv << "d,f\n";
  for (int d = 1; d <= D; ++d) {
    std::cout << d << ": " << (a.exact && !exact.empty() ? exact[d - 1] : fmt(vals[d - 1])) << '\n';
    csv << d << ',' << fmt(vals[d - 1]) << '\n';
  }
  if (!a.csv.empty()) write_text_file(a.csv, csv.str());
  return 0;
}

// ---- delta
struct DeltaArgs {
  int d = 1, n = 3, sign = -1;
  bool verify = false;
  std::string out;
};

int run_delta(const DeltaArgs& a) {
  const DeltaRecipe r = delta_expr(a.d, a.n, a.sign);
  json j = recipe_to_json(r);
  // summaries go to stderr when the recipe itself occupies stdout
  std::ostream& log = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
  int code = 0;
  if (a.verify) {
    const bool exact = precision_from_env() == Precision::Rational;
    const DeltaReport rep = verify_delta(r, a.n, 1e-9, exact);
    j["verification"] = {{"exact", rep.exact},
                         {"off_target_max", rep.off_target_max},
                         {"worst_distance", rep.worst_distance},
                         {"on_target", rep.on_target},
                         {"sign_ok", rep.sign_ok},
                         {"concatenations", rep.concatenations},
                         {"predicted", rep.predicted},
                         {"count_matches", rep.count_matches},
                         {"passed", rep.passed}};
    log << "off-target max: " << (exact ? to_string(rep.off_target_max_exact) : fmt(rep.off_target_max));
    if (rep.worst_distance) log << " (at d=" << rep.worst_distance << ")";
    log << '\n' << "on-target: " << fmt(rep.on_target) << '\n';
    log << "concatenations: " << rep.concatenations << " (closed form " << rep.predicted;
    for (int alt : r.alternative_predictions) log << ", alternative " << alt;
    log << (rep.count_matches ? ", match" : ", MISMATCH") << ")\n";
    if (!rep.passed) code = 3;
  }
  emit(j, a.out);
  return code;
}

// ---- strength
struct StrengthArgs {
  std::int64_t n = 1024, qmin = 0, qmax = 0;
  std::string out;
};

int run_strength(const StrengthArgs& a, const Common& c) {
  const std::int64_t qmin = a.qmin ? a.qmin : a.n / 2 + 1;
  const std::int64_t qmax = a.qmax ? a.qmax : a.n - 1;
  if (qmin <= a.n / 2) std::cerr << "warning: qmin <= n/2 lies outside the Q > N/2 regime\n";
  const auto samples = strength_sweep(a.n, qmin, qmax, c.jobs);
  if (!a.out.empty()) write_text_file(a.out, strength_csv(samples));
  bool positive = true;
  for (const auto& s : samples) positive = positive && s.raw > 0 && s.normalized > 0;
  std::cout << "samples: " << samples.size() << (positive ? ", all positive" : ", NONPOSITIVE VALUES") << '\n';
  // the envelope needs one minimum per octave: sweep every N = 2^k up to n
  const int top = ceil_log2(a.n);
  if ((std::int64_t{1} << top) == a.n && top >= 8) {
    const auto fn = envelope_fit(7, top, true, c.jobs);
    const auto fr = envelope_fit(7, top, false, c.jobs);
    std::cout << "envelope slope (normalized, octaves 2^7..2^" << top << "): " << fmt(fn.slope) << '\n';
    std::cout << "envelope slope (raw product): " << fmt(fr.slope) << '\n';
  } else {
    const auto fn = envelope_fit(samples, true);
    if (fn.minima.size() >= 2) std::cout << "envelope slope (normalized, sampled octaves): " << fmt(fn.slope) << '\n';
    else std::cout << "envelope slope: needs n = 2^k with k >= 8 or a range spanning two octaves\n";
  }
  std::cout << "reference: -log2(6) = " << fmt(-std::log2(6.0)) << '\n';
  return positive ? 0 : 3;
}

// ---- compile
struct CompileArgs {
  std::string target, native, out, axis = "x", cost = "unit";
  int depth = 1;
  bool no_delta = false;
  int power_law = 0;
};

const std::vector<double>& axis_of(const CouplingProfile& p, const std::string& axis) {
  if (axis == "x") return p.omega_x;
  if (axis == "y") return p.omega_y;
  if (axis == "z") return p.omega_z;
  throw InputError("--axis must be x, y or z");
}

int run_compile(const CompileArgs& a) {
  const CouplingProfile target = profile_from_json(read_json_file(a.target));
  const CouplingProfile native = profile_from_json(read_json_file(a.native));
  if (target.dimension != native.dimension) throw InputError("target and native profiles have different n");
  const int N = target.qubits();
  const std::vector<double> ratio = target_ratio(axis_of(native, a.axis), axis_of(target, a.axis));
  CostHook cost;
  if (a.cost == "pulses") cost = pulse_layer_cost;
  else if (a.cost != "unit") throw InputError("--cost must be 'unit' or 'pulses'");
  FilterBasis basis = build_basis(N, a.depth, !a.no_delta, cost);
  for (int L = 2; L <= a.power_law; ++L) {
    const FilterExpr e = power_law_expr(L, N);
    basis.entries.push_back({e, normalized_filter_vector(e, N - 1), cost ? cost(e, N) : 1.0});
  }
  std::cerr << "basis: " << basis.entries.size() << " filters" << (basis.truncated ? " (truncated)" : "") << '\n';
  try {
    const CompiledProgram p = compile(ratio, basis);
    json j = program_to_json(p);
    j["status"] = "optimal";
    j["axis"] = a.axis;
    j["n"] = N;
    emit(j, a.out);
    std::cerr << "objective " << fmt(p.objective) << ", residual " << p.residual_inf_norm << ", " << p.terms.size()
              << " terms\n";
    return 0;
  } catch (const InfeasibleError& e) {
    json j = {{"status", "infeasible"}, {"axis", a.axis}, {"n", N}, {"certificate", e.certificate()},
              {"message", e.what()}};
    emit(j, a.out);
    std::cerr << "infeasible: " << e.what() << '\n';
    return 4;
  }
}

// ---- schedule
struct ScheduleArgs {
  std::string expr, program, out, format = "json";
  int n = 0;
  double time = 1.0;
};

int run_schedule(const ScheduleArgs& a) {
  if (a.expr.empty() == a.program.empty()) throw InputError("give exactly one of --expr or --program");
  PulseSchedule s;
  Rational total;
  if (!a.expr.empty()) {
    if (a.n < 1) throw InputError("--n is required with --expr");
    s = materialize(load_expr(a.expr), a.n);
    if (!(a.time > 0)) throw InputError("--time must be positive");
    total = Rational(a.time);
  } else {
    const json pj = read_json_file(a.program);
    const CompiledProgram p = program_from_json(pj);
    const int n = a.n ? a.n : pj.value("n", 0);
    if (n < 1) throw InputError("program has no 'n'; pass --n");
    std::vector<std::pair<PulseSchedule, Rational>> parts;
    for (const auto& t : p.terms)
      if (t.t > 0) parts.emplace_back(materialize(t.expr, n), Rational(t.t));
    if (parts.empty()) throw InputError("program has no terms with positive duration");
    s = sequence(parts);
    total = s.total_duration();
  }
  const FlattenedSchedule f = flatten(s, total);
  const ResourceCount rc = count_resources(s);
  std::cerr << "segments " << rc.segment_count << ", pulse layers " << rc.pulse_layers << ", spin flips "
            << rc.spin_flips << '\n';
  if (a.format == "csv") {
    if (a.out.empty() || a.out == "-") std::cout << flattened_to_csv(f);
    else write_text_file(a.out, flattened_to_csv(f));
  } else if (a.format == "json") {
    emit(flattened_to_json(f), a.out);
  } else {
    throw InputError("--format must be json or csv");
  }
  return 0;
}

// ---- sim
std::vector<double> default_omega(const std::vector<double>& given, int N) {
  if (given.empty()) return std::vector<double>(N - 1, 1.0);
  if (static_cast<int>(given.size()) != N - 1) throw InputError("--omega needs N-1 values");
  return given;
}

struct SimVerifyArgs {
  int n = 4;
  std::string filter, out;
  std::vector<double> omega;
  double time = 1.0;
};

int run_sim_verify(const SimVerifyArgs& a) {
  const FilterExpr e = a.filter.empty() ? default_composite() : load_expr(a.filter);
  const auto omega = default_omega(a.omega, a.n);
  const PulseSchedule s = materialize(e, a.n);
  const auto f = realized_filter(s).to_double();
  std::vector<double> eff(a.n - 1);
  for (int d = 0; d < a.n - 1; ++d) eff[d] = omega[d] * f[d];
  const Matrix U = filtered_propagator(s, ising_x(omega, a.n), a.time);
  const double dist = operator_norm(U - expm_hermitian(ising_x(eff, a.n), a.time));
  const double unit = unitarity_error(U);
  bool nn = f[0] != 0;
  for (int d = 1; d < a.n - 1; ++d) nn = nn && f[d] == 0;
  const bool ok = dist <= 1e-10 && unit <= 1e-10;
  emit({{"n", a.n},
        {"filter", f},
        {"effective_omega", eff},
        {"nearest_neighbour_only", nn},
        {"distance", dist},
        {"unitarity_error", unit},
        {"passed", ok}},
       a.out);
  std::cerr << (ok ? "effective Hamiltonian check passed" : "effective Hamiltonian check FAILED")
            << (nn ? " (nearest-neighbour only)" : "") << '\n';
  return ok ? 0 : 5;
}

struct SimTrotterArgs {
  std::string mode = "both", filter, out, csv;
  std::vector<int> r{4, 8, 16, 32};
  int n = 4;
  double b = 0.7, t = 1.0, delta = 1e-3;
  std::vector<double> omega;
};

int run_sim_trotter(const SimTrotterArgs& a, const Common& c) {
  TrotterConfig cfg;
  cfg.mode = parse_trotter_mode(a.mode);
  cfg.r_values = a.r;
  cfg.n = a.n;
  cfg.b = a.b;
  cfg.t = a.t;
  cfg.delta = a.delta;
  cfg.omega = a.omega;
  cfg.seed = c.seed;
  cfg.filter = a.filter.empty() ? default_composite() : load_expr(a.filter);
  const TrotterReport rep = trotter_error_report(cfg);
  json pts = json::array();
  std::ostringstream csv;
  csv << "r,measured_error,bound\n";
  for (const auto& p : rep.points) {
    pts.push_back({{"r", p.r}, {"measured", p.measured}, {"bound", p.bound}, {"trace_distance_max", p.trace_distance_max},
                   {"bound_ok", p.bound_ok}, {"trace_ok", p.trace_ok}});
    csv << p.r << ',' << p.measured << ',' << p.bound << '\n';
  }
  emit({{"mode", to_string(rep.mode)},
        {"m", rep.m},
        {"h_norm", rep.h_norm},
        {"drift", rep.drift},
        {"slope", rep.slope},
        {"all_bounds_hold", rep.all_bounds_hold},
        {"points", pts}},
       a.out);
  if (!a.csv.empty()) write_text_file(a.csv, csv.str());
  std::cerr << "slope " << fmt(rep.slope) << ", bounds " << (rep.all_bounds_hold ? "hold" : "VIOLATED") << '\n';
  return rep.all_bounds_hold ? 0 : 5;
}

struct SimAdiabaticArgs {
  int n = 4;
  std::vector<int> steps{2, 4, 8, 16, 32};
  double omega = 4.0, coupling = -1.0, tau = 6.0;
  std::string filter, out, csv;
};

int run_sim_adiabatic(const SimAdiabaticArgs& a) {
  AdiabaticConfig cfg;
  cfg.n = a.n;
  cfg.steps = a.steps;
  cfg.omega = a.omega;
  cfg.coupling = a.coupling;
  cfg.tau = a.tau;
  if (!a.filter.empty()) cfg.filter = load_expr(a.filter);
  const AdiabaticReport rep = adiabatic_run(cfg);
  json pts = json::array();
  std::ostringstream csv;
  csv << "R,measured_error,bound\n";
  for (const auto& p : rep.points) {
    pts.push_back({{"R", p.r}, {"dt", p.dt}, {"infidelity", p.infidelity}, {"predicted", p.predicted},
                   {"target_overlap", p.target_overlap}, {"pulsed_overlap", p.pulsed_overlap}});
    csv << p.r << ',' << p.infidelity << ',' << p.predicted << '\n';
  }
  const bool ratio_ok = rep.ratio_at_largest >= 0.5 && rep.ratio_at_largest <= 2.0;
  emit({{"slope", rep.slope},
        {"ratio_at_largest", rep.ratio_at_largest},
        {"unfiltered_overlap", rep.unfiltered_overlap},
        {"gt_ga_overlap", rep.gt_ga_overlap},
        {"adiabatic_ok", rep.adiabatic_ok},
        {"target_degenerate", rep.target_degenerate},
        {"filter", rep.filter},
        {"points", pts}},
       a.out);
  if (!a.csv.empty()) write_text_file(a.csv, csv.str());
  if (!rep.adiabatic_ok) std::cerr << "warning: unfiltered ramp is not adiabatic (overlap " << rep.unfiltered_overlap << ")\n";
  std::cerr << "infidelity slope " << fmt(rep.slope) << ", ratio to prediction " << fmt(rep.ratio_at_largest) << '\n';
  return ratio_ok ? 0 : 5;
}

struct SimPowerLawArgs {
  int n = 8, levels = 12, passes = 1;
  double exponent = 1.0;
  std::string out;
};

int run_sim_powerlaw(const SimPowerLawArgs& a) {
  PowerLawConfig cfg;
  cfg.n = a.n;
  cfg.levels = a.levels;
  cfg.passes = a.passes;
  cfg.exponent = a.exponent;
  const PowerLawReport rep = verify_power_law(cfg);
  json passes = json::array();
  bool ok = true;
  for (const auto& p : rep.passes) {
    passes.push_back({{"measured", p.measured}, {"ideal", p.ideal}, {"finite_l", p.finite_l},
                      {"tail_bound", p.tail_bound}, {"within_bound", p.within_bound}});
    ok = ok && p.within_bound;
  }
  emit({{"n", a.n}, {"levels", a.levels}, {"passes", passes}, {"passed", ok}}, a.out);
  std::cerr << "power-law profile " << (ok ? "within" : "OUTSIDE") << " the geometric tail bound\n";
  return ok ? 0 : 5;
}

struct SimHeisenbergArgs {
  int n = 3;
  std::vector<int> r{4, 8, 16, 32};
  std::vector<double> omega;
  std::string fx, fy, fz, out;
  double t = 1.0;
};

int run_sim_heisenberg(const SimHeisenbergArgs& a) {
  HeisenbergConfig cfg;
  cfg.n = a.n;
  cfg.omega = a.omega;
  cfg.t = a.t;
  if (!a.fx.empty()) cfg.filter_x = load_expr(a.fx);
  if (!a.fy.empty()) cfg.filter_y = load_expr(a.fy);
  if (!a.fz.empty()) cfg.filter_z = load_expr(a.fz);
  const auto pts = heisenberg_convergence(cfg, a.r);
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({{"r", p.r}, {"error", p.error}});
  emit({{"n", a.n}, {"points", arr}}, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hamforge: pulse-sequence filters for long-range spin chains"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "seed for randomized test data");
  app.add_option("--jobs", common.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_flag_callback("--scalar-kernels", [] { setenv("HAMFORGE_KERNELS", "scalar", 1); }, "disable AVX2 kernels");

  std::function<int()> action;

  auto* filter = app.add_subcommand("filter", "filter expressions")->require_subcommand(1);
  FilterEvalArgs fe;
  auto* eval = filter->add_subcommand("eval", "print f(d) for d = 1..n-1");
  eval->add_option("file", fe.file, "expression JSON")->required();
  eval->add_option("--n", fe.n, "number of qubits")->required();
  eval->add_flag("--exact", fe.exact, "print exact rationals");
  eval->add_option("--csv", fe.csv, "also write d,f CSV here");
  eval->callback([&] { action = [&] { return run_filter_eval(fe); }; });

  DeltaArgs da;
  auto* delta = app.add_subcommand("delta", "Kronecker-delta recipe for one distance");
  delta->add_option("--d", da.d)->required();
  delta->add_option("--n", da.n)->required();
  delta->add_option("--sign", da.sign)->check(CLI::IsMember({-1, 1}));
  delta->add_flag("--verify", da.verify, "check residual and concatenation count");
  delta->add_option("--out", da.out, "recipe JSON path (default stdout)");
  delta->callback([&] { action = [&] { return run_delta(da); }; });

  StrengthArgs sa;
  auto* strength = app.add_subcommand("strength", "sweep s(Q) over (N/2, N-1]");
  strength->add_option("--n", sa.n)->required();
  strength->add_option("--qmin", sa.qmin);
  strength->add_option("--qmax", sa.qmax);
  strength->add_option("--out", sa.out, "CSV path");
  strength->callback([&] { action = [&] { return run_strength(sa, common); }; });

  CompileArgs ca;
  auto* comp = app.add_subcommand("compile", "solve for a filter program reaching a target profile");
  comp->add_option("--target", ca.target)->required();
  comp->add_option("--native", ca.native)->required();
  comp->add_option("--axis", ca.axis);
  comp->add_option("--depth", ca.depth, "product levels in the basis");
  comp->add_flag("--no-delta", ca.no_delta, "leave the delta recipes out of the basis");
  comp->add_option("--power-law", ca.power_law, "add power-law ladders with up to this many levels");
  comp->add_option("--cost", ca.cost, "unit or pulses");
  comp->add_option("--out", ca.out);
  comp->callback([&] { action = [&] { return run_compile(ca); }; });

  ScheduleArgs sch;
  auto* schedule = app.add_subcommand("schedule", "flatten an expression or program into timed spin flips");
  schedule->add_option("--expr", sch.expr);
  schedule->add_option("--program", sch.program);
  schedule->add_option("--n", sch.n);
  schedule->add_option("--time", sch.time);
  schedule->add_option("--format", sch.format, "json or csv");
  schedule->add_option("--out", sch.out);
  schedule->callback([&] { action = [&] { return run_schedule(sch); }; });

  auto* sim = app.add_subcommand("sim", "dense simulations")->require_subcommand(1);
  SimVerifyArgs sv;
  auto* verify = sim->add_subcommand("verify", "filtered propagator against the effective Hamiltonian");
  verify->add_option("--n", sv.n);
  verify->add_option("--filter", sv.filter);
  verify->add_option("--omega", sv.omega)->delimiter(',');
  verify->add_option("--time", sv.time);
  verify->add_option("--out", sv.out);
  verify->callback([&] { action = [&] { return run_sim_verify(sv); }; });

  SimTrotterArgs st;
  auto* trot = sim->add_subcommand("trotter", "split-step error against the bound");
  trot->add_option("--mode", st.mode, "both, delta or pessimistic");
  trot->add_option("--r", st.r)->delimiter(',');
  trot->add_option("--n", st.n);
  trot->add_option("--b", st.b);
  trot->add_option("--t", st.t);
  trot->add_option("--delta", st.delta);
  trot->add_option("--omega", st.omega)->delimiter(',');
  trot->add_option("--filter", st.filter);
  trot->add_option("--out", st.out);
  trot->add_option("--csv", st.csv);
  trot->callback([&] { action = [&] { return run_sim_trotter(st, common); }; });

  SimAdiabaticArgs sad;
  auto* adi = sim->add_subcommand("adiabatic", "stroboscopic filtered ramp");
  adi->add_option("--n", sad.n);
  adi->add_option("--steps", sad.steps)->delimiter(',');
  adi->add_option("--omega", sad.omega);
  adi->add_option("--coupling", sad.coupling);
  adi->add_option("--tau", sad.tau);
  adi->add_option("--filter", sad.filter);
  adi->add_option("--out", sad.out);
  adi->add_option("--csv", sad.csv);
  adi->callback([&] { action = [&] { return run_sim_adiabatic(sad); }; });

  SimPowerLawArgs sp;
  auto* pl = sim->add_subcommand("powerlaw", "power-law increment program");
  pl->add_option("--n", sp.n);
  pl->add_option("--levels", sp.levels);
  pl->add_option("--passes", sp.passes);
  pl->add_option("--exponent", sp.exponent);
  pl->add_option("--out", sp.out);
  pl->callback([&] { action = [&] { return run_sim_powerlaw(sp); }; });

  SimHeisenbergArgs sh;
  auto* heis = sim->add_subcommand("heisenberg", "XYZ target through rotated Ising evolutions");
  heis->add_option("--n", sh.n);
  heis->add_option("--r", sh.r)->delimiter(',');
  heis->add_option("--omega", sh.omega)->delimiter(',');
  heis->add_option("--fx", sh.fx);
  heis->add_option("--fy", sh.fy);
  heis->add_option("--fz", sh.fz);
  heis->add_option("--t", sh.t);
  heis->add_option("--out", sh.out);
  heis->callback([&] { action = [&] { return run_sim_heisenberg(sh); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const TranslationInvarianceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return 3;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 4;
  } catch (const BoundViolation& e) {
    std::cerr << "bound violated: " << e.what() << '\n';
    return 5;
  } catch (const json::exception& e) {
    std::cerr << "error: bad JSON content: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
