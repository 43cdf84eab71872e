#include "hamforge/filter_algebra.hpp"

#include <bitset>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "hamforge/error.hpp"
#include "sign_rows.hpp"

namespace hamforge {

std::vector<double> FilterVector::to_double() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(hamforge::to_double(v));
  return out;
}

FilterExpr FilterExpr::lambda(int k) {
  if (k < 0) throw InputError("lambda filter needs k >= 0, got " + std::to_string(k));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lambda;
  n->k = k;
  return FilterExpr(std::move(n));
}

FilterExpr FilterExpr::gamma(int k) {
  if (k < 1) throw InputError("gamma filter needs k >= 1, got " + std::to_string(k));
  if (k == 1) return lambda(0);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gamma;
  n->k = k;
  return FilterExpr(std::move(n));
}

FilterExpr FilterExpr::sum(std::vector<WeightedTerm> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  for (auto& t : terms) {
    if (t.weight < 0) throw InputError("negative weight " + hamforge::to_string(t.weight));
    if (t.weight != 0) n->terms.push_back(std::move(t));
  }
  if (n->terms.empty()) throw InputError("sum needs at least one positive weight");
  return FilterExpr(std::move(n));
}

FilterExpr FilterExpr::product(std::vector<FilterExpr> factors) {
  if (factors.empty()) throw InputError("product needs at least one factor");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->factors = std::move(factors);
  return FilterExpr(std::move(n));
}

bool FilterExpr::operator==(const FilterExpr& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind() || k() != o.k()) return false;
  return terms() == o.terms() && factors() == o.factors();
}

std::string FilterExpr::to_string() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Lambda: os << 'L' << k(); break;
    case Kind::Gamma: os << 'G' << k(); break;
    case Kind::Sum: {
      os << '(';
      for (std::size_t i = 0; i < terms().size(); ++i) {
        if (i) os << '+';
        if (terms()[i].weight != 1) os << hamforge::to_string(terms()[i].weight) << '*';
        os << terms()[i].expr.to_string();
      }
      os << ')';
      break;
    }
    case Kind::Product:
      for (std::size_t i = 0; i < factors().size(); ++i) {
        if (i) os << '*';
        os << factors()[i].to_string();
      }
      break;
  }
  return os.str();
}

Rational eval_lambda_exact(std::int64_t k, std::int64_t d) {
  if (k <= 0) throw InputError("eval_lambda: k must be >= 1");
  if (d < 0) throw InputError("eval_lambda: d must be >= 0");
  const std::int64_t q = d / k, r = d % k;
  Rational v(k - 2 * r, k);
  return (q & 1) ? Rational(-v) : v;
}

Rational eval_gamma_exact(std::int64_t k, std::int64_t d) {
  if (k <= 0) throw InputError("eval_gamma: k must be >= 1");
  if (d < 0) throw InputError("eval_gamma: d must be >= 0");
  if (d % k == 0) return Rational(1);
  return Rational(k - 4, k);
}

double eval_lambda(std::int64_t k, std::int64_t d) {
  if (k <= 0) throw InputError("eval_lambda: k must be >= 1");
  if (d < 0) throw InputError("eval_lambda: d must be >= 0");
  const std::int64_t q = d / k, r = d % k;
  const double v = static_cast<double>(k - 2 * r) / static_cast<double>(k);
  return (q & 1) ? -v : v;
}

double eval_gamma(std::int64_t k, std::int64_t d) {
  if (k <= 0) throw InputError("eval_gamma: k must be >= 1");
  if (d < 0) throw InputError("eval_gamma: d must be >= 0");
  if (d % k == 0) return 1.0;
  return 1.0 - 4.0 / static_cast<double>(k);
}

namespace {

template <class T, class Lam, class Gam>
std::vector<T> evaluate(const FilterExpr& e, int D, Lam lam, Gam gam) {
  std::vector<T> out(static_cast<std::size_t>(D));
  switch (e.kind()) {
    case FilterExpr::Kind::Lambda:
      for (int d = 1; d <= D; ++d) out[d - 1] = e.k() == 0 ? T(1) : lam(e.k(), d);
      break;
    case FilterExpr::Kind::Gamma:
      for (int d = 1; d <= D; ++d) out[d - 1] = gam(e.k(), d);
      break;
    case FilterExpr::Kind::Sum:
      for (auto& v : out) v = T(0);
      for (const auto& t : e.terms()) {
        auto child = evaluate<T>(t.expr, D, lam, gam);
        T w;
        if constexpr (std::is_same_v<T, double>) w = hamforge::to_double(t.weight);
        else w = t.weight;
        for (int i = 0; i < D; ++i) out[i] += w * child[i];
      }
      break;
    case FilterExpr::Kind::Product:
      for (auto& v : out) v = T(1);
      for (const auto& f : e.factors()) {
        auto child = evaluate<T>(f, D, lam, gam);
        for (int i = 0; i < D; ++i) out[i] *= child[i];
      }
      break;
  }
  return out;
}

}  // namespace

FilterVector filter_vector(const FilterExpr& e, int D) {
  if (D < 1) throw InputError("filter_vector: D must be >= 1");
  return FilterVector{evaluate<Rational>(
      e, D, [](int k, int d) { return eval_lambda_exact(k, d); },
      [](int k, int d) { return eval_gamma_exact(k, d); })};
}

std::vector<double> filter_vector_f64(const FilterExpr& e, int D) {
  if (D < 1) throw InputError("filter_vector: D must be >= 1");
  return evaluate<double>(
      e, D, [](int k, int d) { return eval_lambda(k, d); },
      [](int k, int d) { return eval_gamma(k, d); });
}

Rational duration(const FilterExpr& e) {
  switch (e.kind()) {
    case FilterExpr::Kind::Lambda:
    case FilterExpr::Kind::Gamma:
      return Rational(1);
    case FilterExpr::Kind::Sum: {
      Rational t(0);
      for (const auto& term : e.terms()) t += term.weight * duration(term.expr);
      return t;
    }
    case FilterExpr::Kind::Product: {
      Rational t(1);
      for (const auto& f : e.factors()) t *= duration(f);
      return t;
    }
  }
  return Rational(0);
}

FilterVector normalized_filter_vector(const FilterExpr& e, int D) {
  FilterVector v = filter_vector(e, D);
  const Rational t = duration(e);
  for (auto& x : v.values) x /= t;
  return v;
}

int concatenation_depth(const FilterExpr& e) {
  int best = 0;
  switch (e.kind()) {
    case FilterExpr::Kind::Lambda:
    case FilterExpr::Kind::Gamma:
      return 0;
    case FilterExpr::Kind::Sum:
      for (const auto& t : e.terms()) best = std::max(best, concatenation_depth(t.expr));
      return best;
    case FilterExpr::Kind::Product:
      for (const auto& f : e.factors()) best = std::max(best, concatenation_depth(f));
      return best + 1;
  }
  return 0;
}

int concatenation_count(const FilterExpr& e) {
  int n = 0;
  switch (e.kind()) {
    case FilterExpr::Kind::Lambda:
    case FilterExpr::Kind::Gamma:
      return 0;
    case FilterExpr::Kind::Sum:
      for (const auto& t : e.terms()) n += concatenation_count(t.expr);
      return n;
    case FilterExpr::Kind::Product:
      n = static_cast<int>(e.factors().size()) - 1;
      for (const auto& f : e.factors()) n += concatenation_count(f);
      return n;
  }
  return 0;
}

FilterExpr decouple_distance_expr(int k) {
  if (k < 1) throw InputError("decouple_distance_expr: k must be >= 1");
  return FilterExpr::sum({{Rational(1), FilterExpr::lambda(k)}, {Rational(1), FilterExpr::lambda(0)}});
}

namespace {

constexpr int kMaxQubits = 256;
using Mask = std::bitset<kMaxQubits>;

// Enough of a schedule to count pulses: rows at both ends and the multiset
// of flip sets at internal boundaries.
struct FlipSummary {
  std::uint64_t segments = 0;
  Mask first, last;
  std::unordered_map<Mask, std::uint64_t> boundaries;

  void add(const Mask& m, std::uint64_t c) {
    if (m.any() && c) boundaries[m] += c;
  }
};

FlipSummary primitive_summary(bool gamma, int k, int N) {
  FlipSummary s;
  if (!gamma && k == 0) {
    s.segments = 1;
    return s;
  }
  s.segments = static_cast<std::uint64_t>(k);
  Mask prev;
  for (int j = 1; j <= k; ++j) {
    Mask row;
    for (int i = 1; i <= N; ++i)
      row[i - 1] = gamma ? detail::gamma_negative(k, i, j) : detail::lambda_negative(k, i, j);
    if (j == 1) s.first = row;
    else s.add(prev ^ row, 1);
    prev = row;
  }
  s.last = prev;
  return s;
}

FlipSummary nest(const FlipSummary& a, const FlipSummary& b) {
  FlipSummary s;
  s.segments = a.segments * b.segments;
  s.first = a.first ^ b.first;
  s.last = a.last ^ b.last;
  for (const auto& [m, c] : b.boundaries) s.add(m, c * a.segments);
  const Mask wrap = b.last ^ b.first;
  for (const auto& [m, c] : a.boundaries) s.add(m ^ wrap, c);
  // boundaries of `a` that flip nothing still see the inner wrap-around
  std::uint64_t silent = a.segments - 1;
  for (const auto& [m, c] : a.boundaries) silent -= c;
  s.add(wrap, silent);
  return s;
}

FlipSummary summarize(const FilterExpr& e, int N) {
  switch (e.kind()) {
    case FilterExpr::Kind::Lambda:
      return primitive_summary(false, e.k(), N);
    case FilterExpr::Kind::Gamma:
      return primitive_summary(true, e.k(), N);
    case FilterExpr::Kind::Sum: {
      FlipSummary s;
      bool started = false;
      for (const auto& t : e.terms()) {
        FlipSummary p = summarize(t.expr, N);
        if (!started) {
          s = std::move(p);
          started = true;
          continue;
        }
        s.add(s.last ^ p.first, 1);
        for (const auto& [m, c] : p.boundaries) s.add(m, c);
        s.segments += p.segments;
        s.last = p.last;
      }
      return s;
    }
    case FilterExpr::Kind::Product: {
      FlipSummary s = summarize(e.factors().front(), N);
      for (std::size_t i = 1; i < e.factors().size(); ++i) s = nest(s, summarize(e.factors()[i], N));
      return s;
    }
  }
  return {};
}

}  // namespace

ResourceCount resource_estimate(const FilterExpr& e, int N) {
  if (N < 2 || N > kMaxQubits) throw InputError("resource_estimate: N must be in [2, 256]");
  const FlipSummary s = summarize(e, N);
  ResourceCount r;
  r.concatenation_depth = concatenation_depth(e);
  r.segment_count = s.segments;
  r.spin_flips = s.first.count() + s.last.count();
  r.pulse_layers = (s.first.any() ? 1 : 0) + (s.last.any() ? 1 : 0);
  for (const auto& [m, c] : s.boundaries) {
    r.spin_flips += c * m.count();
    r.pulse_layers += c;
  }
  return r;
}

}  // namespace hamforge
