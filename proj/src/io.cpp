#include "hamforge/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hamforge/error.hpp"

namespace hamforge {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  const auto slash = s.find('/');
  auto parse_int = [&](const std::string& part) {
    if (part.empty() || part.find_first_not_of("+-0123456789") != std::string::npos ||
        part.find_first_of("0123456789") == std::string::npos)
      throw InputError("not a rational number: '" + text + "'");
    std::string p = part[0] == '+' ? part.substr(1) : part;
    return BigInt(p);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  const BigInt den = parse_int(s.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + text + "'");
  return Rational(parse_int(s.substr(0, slash)), den);
}

bool is_dyadic(const Rational& r) {
  BigInt d = denominator(r);
  return (d & (d - 1)) == 0;
}

namespace {

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Rational weight_from_json(const json& w) {
  if (w.is_string()) return parse_rational(w.get<std::string>());
  if (w.is_number_integer()) return Rational(w.get<std::int64_t>());
  if (w.is_number()) {
    const double v = w.get<double>();
    if (!std::isfinite(v)) throw InputError("weight must be finite");
    return Rational(v);
  }
  throw InputError("weight must be a number or a \"p/q\" string");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<double> number_list(const json& j, const char* key, std::size_t expect) {
  const json& a = field(j, key);
  if (!a.is_array()) throw InputError(std::string("'") + key + "' must be an array");
  if (a.size() != expect)
    throw InputError(std::string("'") + key + "' must have " + std::to_string(expect) + " entries");
  std::vector<double> out;
  for (const auto& v : a) {
    if (!v.is_number()) throw InputError(std::string("'") + key + "' entries must be numbers");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InputError(std::string("'") + key + "' entries must be finite");
    out.push_back(x);
  }
  return out;
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": JSON syntax error at " + line_column(text, e.byte));
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

json read_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

json expr_to_json(const FilterExpr& e) {
  switch (e.kind()) {
    case FilterExpr::Kind::Lambda: return {{"op", "lambda"}, {"k", e.k()}};
    case FilterExpr::Kind::Gamma: return {{"op", "gamma"}, {"k", e.k()}};
    case FilterExpr::Kind::Sum: {
      json terms = json::array();
      for (const auto& t : e.terms()) terms.push_back({{"w", to_string(t.weight)}, {"e", expr_to_json(t.expr)}});
      return {{"op", "sum"}, {"terms", terms}};
    }
    case FilterExpr::Kind::Product: {
      json f = json::array();
      for (const auto& x : e.factors()) f.push_back(expr_to_json(x));
      return {{"op", "prod"}, {"factors", f}};
    }
  }
  return {};
}

FilterExpr expr_from_json(const json& j) {
  const json& op = field(j, "op");
  if (!op.is_string()) throw InputError("'op' must be a string");
  const std::string o = op.get<std::string>();
  auto get_k = [&] {
    const json& k = field(j, "k");
    if (!k.is_number_integer()) throw InputError("'k' must be an integer");
    return k.get<int>();
  };
  if (o == "lambda") return FilterExpr::lambda(get_k());
  if (o == "gamma") return FilterExpr::gamma(get_k());
  if (o == "sum") {
    const json& terms = field(j, "terms");
    if (!terms.is_array()) throw InputError("'terms' must be an array");
    std::vector<WeightedTerm> out;
    for (const auto& t : terms) out.push_back({weight_from_json(field(t, "w")), expr_from_json(field(t, "e"))});
    return FilterExpr::sum(std::move(out));
  }
  if (o == "prod") {
    const json& f = field(j, "factors");
    if (!f.is_array()) throw InputError("'factors' must be an array");
    std::vector<FilterExpr> out;
    for (const auto& x : f) out.push_back(expr_from_json(x));
    return FilterExpr::product(std::move(out));
  }
  throw InputError("unknown op '" + o + "'");
}

json profile_to_json(const CouplingProfile& p) {
  return {{"n", p.qubits()}, {"omega_x", p.omega_x}, {"omega_y", p.omega_y}, {"omega_z", p.omega_z},
          {"b", p.transverse_b}};
}

CouplingProfile profile_from_json(const json& j) {
  const json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<int>() < 2) throw InputError("'n' must be an integer >= 2");
  const int N = n.get<int>();
  CouplingProfile p = make_profile(N - 1);
  p.omega_x = number_list(j, "omega_x", N - 1);
  p.omega_y = j.contains("omega_y") ? number_list(j, "omega_y", N - 1) : std::vector<double>(N - 1, 0.0);
  p.omega_z = j.contains("omega_z") ? number_list(j, "omega_z", N - 1) : std::vector<double>(N - 1, 0.0);
  if (j.contains("b")) {
    if (!j.at("b").is_number() || !std::isfinite(j.at("b").get<double>())) throw InputError("'b' must be a finite number");
    p.transverse_b = j.at("b").get<double>();
  }
  return p;
}

json program_to_json(const CompiledProgram& p) {
  json terms = json::array();
  for (const auto& t : p.terms) terms.push_back({{"index", t.basis_index}, {"expr", expr_to_json(t.expr)}, {"t", t.t}});
  return {{"terms", terms},
          {"objective", p.objective},
          {"residual", p.residual_inf_norm},
          {"total_time", p.total_time},
          {"dual_feasible", p.dual_feasible}};
}

CompiledProgram program_from_json(const json& j) {
  CompiledProgram p;
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw InputError("'terms' must be an array");
  for (const auto& t : terms) {
    ProgramTerm term{t.value("index", 0), expr_from_json(field(t, "expr")), 0.0};
    const json& tv = field(t, "t");
    if (!tv.is_number()) throw InputError("'t' must be a number");
    term.t = tv.get<double>();
    if (term.t < 0) throw InputError("program durations must be nonnegative");
    p.terms.push_back(std::move(term));
  }
  p.objective = field(j, "objective").get<double>();
  p.residual_inf_norm = field(j, "residual").get<double>();
  p.total_time = j.value("total_time", 0.0);
  p.dual_feasible = j.value("dual_feasible", false);
  return p;
}

json recipe_to_json(const DeltaRecipe& r) {
  return {{"d", r.target_distance},
          {"n", r.n},
          {"sign", r.sign},
          {"construction", r.construction},
          {"expr", expr_to_json(r.expr)},
          {"predicted_concatenations", r.predicted_concatenations},
          {"alternative_predictions", r.alternative_predictions},
          {"achieved_concatenations", r.achieved_concatenations},
          {"achieved_strength", r.achieved_strength}};
}

json flattened_to_json(const FlattenedSchedule& f) {
  json flips = json::array();
  for (const auto& e : f.flips) flips.push_back({to_double(e.time), e.qubit});
  return {{"n", f.n}, {"total_time", to_double(f.total_time)}, {"pulse_layers", f.pulse_layers}, {"flips", flips}};
}

FlattenedSchedule flattened_from_json(const json& j) {
  FlattenedSchedule f;
  f.n = field(j, "n").get<int>();
  f.total_time = weight_from_json(field(j, "total_time"));
  f.pulse_layers = j.value("pulse_layers", std::uint64_t{0});
  for (const auto& e : field(j, "flips")) {
    if (!e.is_array() || e.size() != 2) throw InputError("flip events must be [time, qubit] pairs");
    f.flips.push_back({weight_from_json(e[0]), e[1].get<int>()});
  }
  return f;
}

}  // namespace hamforge
