#include "hamforge/pulse_engine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "hamforge/error.hpp"
#include "hamforge/kernels.hpp"
#include "sign_rows.hpp"

namespace hamforge {

PulseSchedule::PulseSchedule(int n, std::vector<Rational> durations,
                             const std::vector<std::int8_t>& signs)
    : n_(n), durations_(std::move(durations)) {
  if (n < 1) throw InputError("schedule needs at least one qubit");
  if (durations_.empty()) throw InputError("schedule needs at least one segment");
  const std::size_t S = durations_.size();
  if (signs.size() != S * static_cast<std::size_t>(n))
    throw InputError("schedule sign table has the wrong size");
  for (const auto& d : durations_)
    if (d <= 0) throw InputError("segment durations must be positive");
  signs_.resize(signs.size());
  for (std::size_t l = 0; l < S; ++l)
    for (int q = 0; q < n; ++q) {
      const std::int8_t v = signs[l * n + q];
      if (v != 1 && v != -1) throw InputError("schedule signs must be +1 or -1");
      signs_[static_cast<std::size_t>(q) * S + l] = v;
    }
}

Rational PulseSchedule::total_duration() const {
  Rational t(0);
  for (const auto& d : durations_) t += d;
  return t;
}

std::vector<std::int8_t> PulseSchedule::row(std::size_t l) const {
  std::vector<std::int8_t> r(static_cast<std::size_t>(n_));
  for (int q = 0; q < n_; ++q) r[q] = static_cast<std::int8_t>(sign(l, q));
  return r;
}

PulseSchedule PulseSchedule::merged() const {
  std::vector<Rational> durs;
  std::vector<std::int8_t> signs;
  std::vector<std::int8_t> prev;
  for (std::size_t l = 0; l < segment_count(); ++l) {
    auto r = row(l);
    if (!durs.empty() && r == prev) {
      durs.back() += durations_[l];
      continue;
    }
    durs.push_back(durations_[l]);
    signs.insert(signs.end(), r.begin(), r.end());
    prev = std::move(r);
  }
  return PulseSchedule(n_, std::move(durs), signs);
}

PulseSchedule PulseSchedule::scaled(const Rational& factor) const {
  if (factor <= 0) throw InputError("scale factor must be positive");
  PulseSchedule s = *this;
  for (auto& d : s.durations_) d *= factor;
  return s;
}

PulseSchedule schedule_identity(int N) {
  if (N < 1) throw InputError("schedule needs N >= 1");
  return PulseSchedule(N, {Rational(1)}, std::vector<std::int8_t>(static_cast<std::size_t>(N), 1));
}

PulseSchedule schedule_lambda(int k, int N) {
  if (k < 1) throw InputError("schedule_lambda: k must be >= 1");
  if (N < 2) throw InputError("schedule_lambda: N must be >= 2");
  std::vector<std::int8_t> signs(static_cast<std::size_t>(k) * N);
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= N; ++i)
      signs[static_cast<std::size_t>(j - 1) * N + (i - 1)] = detail::lambda_negative(k, i, j) ? -1 : 1;
  return PulseSchedule(N, std::vector<Rational>(k, Rational(1, k)), signs);
}

PulseSchedule schedule_gamma(int k, int N) {
  if (k < 2) throw InputError("schedule_gamma: k must be >= 2");
  if (N < 2) throw InputError("schedule_gamma: N must be >= 2");
  std::vector<std::int8_t> signs(static_cast<std::size_t>(k) * N);
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= N; ++i)
      signs[static_cast<std::size_t>(j - 1) * N + (i - 1)] = detail::gamma_negative(k, i, j) ? -1 : 1;
  return PulseSchedule(N, std::vector<Rational>(k, Rational(1, k)), signs);
}

PulseSchedule concatenate(const PulseSchedule& outer, const PulseSchedule& inner) {
  if (outer.qubit_count() != inner.qubit_count())
    throw InputError("concatenate: qubit counts differ");
  const int N = outer.qubit_count();
  const std::size_t A = outer.segment_count(), B = inner.segment_count();
  std::vector<Rational> durs;
  durs.reserve(A * B);
  std::vector<std::int8_t> signs(A * B * N);
  for (std::size_t a = 0; a < A; ++a)
    for (std::size_t b = 0; b < B; ++b) {
      durs.push_back(outer.duration(a) * inner.duration(b));
      std::int8_t* row = signs.data() + (a * B + b) * N;
      for (int q = 0; q < N; ++q) row[q] = static_cast<std::int8_t>(outer.sign(a, q) * inner.sign(b, q));
    }
  return PulseSchedule(N, std::move(durs), signs);
}

PulseSchedule sequence(const std::vector<std::pair<PulseSchedule, Rational>>& parts) {
  if (parts.empty()) throw InputError("sequence: no parts");
  const int N = parts.front().first.qubit_count();
  std::vector<Rational> durs;
  std::vector<std::int8_t> signs;
  for (const auto& [s, t] : parts) {
    if (s.qubit_count() != N) throw InputError("sequence: qubit counts differ");
    if (t <= 0) throw InputError("sequence: durations must be positive");
    const Rational scale = t / s.total_duration();
    for (std::size_t l = 0; l < s.segment_count(); ++l) {
      durs.push_back(s.duration(l) * scale);
      auto r = s.row(l);
      signs.insert(signs.end(), r.begin(), r.end());
    }
  }
  return PulseSchedule(N, std::move(durs), signs);
}

namespace {

// Common-denominator integer weights; false if they do not fit comfortably in int64.
bool integer_weights(const PulseSchedule& s, std::vector<std::int64_t>& w, BigInt& scale) {
  BigInt l = 1;
  for (const auto& d : s.durations()) l = boost::multiprecision::lcm(l, denominator(d));
  scale = l;
  BigInt total = 0;
  std::vector<BigInt> big;
  big.reserve(s.segment_count());
  for (const auto& d : s.durations()) {
    big.push_back(numerator(d) * (l / denominator(d)));
    total += big.back();
  }
  if (total > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) return false;
  w.clear();
  for (const auto& b : big) w.push_back(b.convert_to<std::int64_t>());
  return true;
}

}  // namespace

FilterVector realized_filter_unnormalized(const PulseSchedule& s) {
  const int N = s.qubit_count();
  if (N < 2) throw InputError("realized_filter needs at least two qubits");
  FilterVector out;
  out.values.resize(static_cast<std::size_t>(N - 1));
  std::vector<std::int64_t> w;
  BigInt scale;
  if (integer_weights(s, w, scale)) {
    const auto& k = kernels::active();
    for (int d = 1; d < N; ++d) {
      const std::int64_t ref = k.sign_correlation_i64(w.data(), s.qubit_signs(0), s.qubit_signs(d), w.size());
      for (int j = 1; j + d < N; ++j)
        if (k.sign_correlation_i64(w.data(), s.qubit_signs(j), s.qubit_signs(j + d), w.size()) != ref)
          throw TranslationInvarianceError(j + 1, d);
      out.values[d - 1] = Rational(BigInt(ref), scale);
    }
    return out;
  }
  for (int d = 1; d < N; ++d) {
    Rational ref;
    for (int j = 0; j + d < N; ++j) {
      Rational acc(0);
      const std::int8_t* a = s.qubit_signs(j);
      const std::int8_t* b = s.qubit_signs(j + d);
      for (std::size_t l = 0; l < s.segment_count(); ++l)
        acc += a[l] == b[l] ? s.duration(l) : Rational(-s.duration(l));
      if (j == 0) ref = acc;
      else if (acc != ref) throw TranslationInvarianceError(j + 1, d);
    }
    out.values[d - 1] = ref;
  }
  return out;
}

FilterVector realized_filter(const PulseSchedule& s) {
  FilterVector v = realized_filter_unnormalized(s);
  const Rational t = s.total_duration();
  for (auto& x : v.values) x /= t;
  return v;
}

std::vector<double> realized_filter_f64(const PulseSchedule& s) {
  const int N = s.qubit_count();
  if (N < 2) throw InputError("realized_filter needs at least two qubits");
  std::vector<double> w;
  double total = 0.0;
  for (const auto& d : s.durations()) {
    w.push_back(to_double(d));
    total += w.back();
  }
  const auto& k = kernels::active();
  std::vector<double> out(static_cast<std::size_t>(N - 1));
  for (int d = 1; d < N; ++d) {
    const double ref = k.sign_correlation_f64(w.data(), s.qubit_signs(0), s.qubit_signs(d), w.size());
    for (int j = 1; j + d < N; ++j) {
      const double v = k.sign_correlation_f64(w.data(), s.qubit_signs(j), s.qubit_signs(j + d), w.size());
      if (std::abs(v - ref) > 1e-9 * total) throw TranslationInvarianceError(j + 1, d);
    }
    out[d - 1] = ref / total;
  }
  return out;
}

PulseSchedule materialize(const FilterExpr& e, int N) {
  switch (e.kind()) {
    case FilterExpr::Kind::Lambda:
      return e.k() == 0 ? schedule_identity(N) : schedule_lambda(e.k(), N);
    case FilterExpr::Kind::Gamma:
      return schedule_gamma(e.k(), N);
    case FilterExpr::Kind::Sum: {
      std::vector<std::pair<PulseSchedule, Rational>> parts;
      for (const auto& t : e.terms()) parts.emplace_back(materialize(t.expr, N), t.weight * duration(t.expr));
      return sequence(parts);
    }
    case FilterExpr::Kind::Product: {
      PulseSchedule s = materialize(e.factors().front(), N);
      for (std::size_t i = 1; i < e.factors().size(); ++i) s = concatenate(s, materialize(e.factors()[i], N));
      return s;
    }
  }
  throw InputError("materialize: unknown node");
}

ResourceCount count_resources(const PulseSchedule& s) {
  ResourceCount r;
  r.segment_count = s.segment_count();
  const int N = s.qubit_count();
  const std::size_t S = s.segment_count();
  auto boundary = [&](auto flips_at) {
    std::uint64_t c = 0;
    for (int q = 0; q < N; ++q) c += flips_at(q) ? 1 : 0;
    r.spin_flips += c;
    if (c) ++r.pulse_layers;
  };
  boundary([&](int q) { return s.sign(0, q) < 0; });
  for (std::size_t l = 1; l < S; ++l) boundary([&](int q) { return s.sign(l, q) != s.sign(l - 1, q); });
  boundary([&](int q) { return s.sign(S - 1, q) < 0; });
  return r;
}

FlattenedSchedule flatten(const PulseSchedule& s, const Rational& total_time) {
  if (total_time <= 0) throw InputError("flatten: total_time must be positive");
  FlattenedSchedule f;
  f.n = s.qubit_count();
  f.total_time = total_time;
  f.pulse_layers = count_resources(s).pulse_layers;
  const Rational scale = total_time / s.total_duration();
  const int N = s.qubit_count();
  const std::size_t S = s.segment_count();
  for (int q = 0; q < N; ++q)
    if (s.sign(0, q) < 0) f.flips.push_back({Rational(0), q + 1});
  Rational t(0);
  for (std::size_t l = 1; l < S; ++l) {
    t += s.duration(l - 1) * scale;
    for (int q = 0; q < N; ++q)
      if (s.sign(l, q) != s.sign(l - 1, q)) f.flips.push_back({t, q + 1});
  }
  for (int q = 0; q < N; ++q)
    if (s.sign(S - 1, q) < 0) f.flips.push_back({total_time, q + 1});
  return f;
}

PulseSchedule reconstruct(const FlattenedSchedule& f) {
  if (f.n < 1 || f.total_time <= 0) throw InputError("reconstruct: bad header");
  std::map<Rational, std::vector<int>> by_time;
  for (const auto& e : f.flips) {
    if (e.qubit < 1 || e.qubit > f.n) throw InputError("reconstruct: qubit out of range");
    if (e.time < 0 || e.time > f.total_time) throw InputError("reconstruct: flip outside [0, T]");
    by_time[e.time].push_back(e.qubit);
  }
  std::vector<std::int8_t> state(static_cast<std::size_t>(f.n), 1);
  auto apply = [&](const std::vector<int>& qs) {
    for (int q : qs) state[q - 1] = static_cast<std::int8_t>(-state[q - 1]);
  };
  std::vector<Rational> durs;
  std::vector<std::int8_t> signs;
  Rational start(0);
  auto it = by_time.begin();
  if (it != by_time.end() && it->first == 0) apply((it++)->second);
  for (; it != by_time.end(); ++it) {
    if (it->first == f.total_time) break;
    durs.push_back(it->first - start);
    signs.insert(signs.end(), state.begin(), state.end());
    apply(it->second);
    start = it->first;
  }
  durs.push_back(f.total_time - start);
  signs.insert(signs.end(), state.begin(), state.end());
  if (it != by_time.end()) apply(it->second);
  for (auto v : state)
    if (v != 1) throw InputError("reconstruct: flips do not return to the undressed frame");
  return PulseSchedule(f.n, std::move(durs), signs).merged();
}

std::string flattened_to_csv(const FlattenedSchedule& f) {
  std::ostringstream os;
  os.precision(17);
  os << "time,qubit\n";
  for (const auto& e : f.flips) os << to_double(e.time) << ',' << e.qubit << '\n';
  return os.str();
}

}  // namespace hamforge
