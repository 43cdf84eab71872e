#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamforge/filter_algebra.hpp"
#include "hamforge/rational.hpp"

namespace hamforge {

// Per-qubit +-1 control signs over weighted segments. Signs are stored
// qubit-major so the correlation kernels see contiguous rows.
class PulseSchedule {
 public:
  PulseSchedule() = default;
  // signs given segment-major: signs[l * n + q]
  PulseSchedule(int n, std::vector<Rational> durations, const std::vector<std::int8_t>& signs);

  int qubit_count() const { return n_; }
  std::size_t segment_count() const { return durations_.size(); }
  const std::vector<Rational>& durations() const { return durations_; }
  const Rational& duration(std::size_t l) const { return durations_[l]; }
  Rational total_duration() const;
  // q is 0-based
  int sign(std::size_t l, int q) const { return signs_[static_cast<std::size_t>(q) * segment_count() + l]; }
  const std::int8_t* qubit_signs(int q) const { return signs_.data() + static_cast<std::size_t>(q) * segment_count(); }
  std::vector<std::int8_t> row(std::size_t l) const;

  // adjacent segments with identical rows fused, durations added
  PulseSchedule merged() const;
  PulseSchedule scaled(const Rational& factor) const;

  bool operator==(const PulseSchedule& o) const = default;

 private:
  int n_ = 0;
  std::vector<Rational> durations_;
  std::vector<std::int8_t> signs_;
};

PulseSchedule schedule_identity(int N);
PulseSchedule schedule_lambda(int k, int N);
PulseSchedule schedule_gamma(int k, int N);

// Inner schedule nested in every segment of the outer one.
PulseSchedule concatenate(const PulseSchedule& outer, const PulseSchedule& inner);
// Back to back; part p rescaled to total time duration_p.
PulseSchedule sequence(const std::vector<std::pair<PulseSchedule, Rational>>& parts);

// Exact oracle. Throws TranslationInvarianceError if the pair product depends on j.
FilterVector realized_filter(const PulseSchedule& s);
FilterVector realized_filter_unnormalized(const PulseSchedule& s);
std::vector<double> realized_filter_f64(const PulseSchedule& s);

PulseSchedule materialize(const FilterExpr& e, int N);

ResourceCount count_resources(const PulseSchedule& s);

struct FlipEvent {
  Rational time;
  int qubit;  // 1-based
  bool operator==(const FlipEvent&) const = default;
};

struct FlattenedSchedule {
  int n = 0;
  Rational total_time;
  std::vector<FlipEvent> flips;
  std::uint64_t pulse_layers = 0;
  bool operator==(const FlattenedSchedule&) const = default;
};

FlattenedSchedule flatten(const PulseSchedule& s, const Rational& total_time);
// Inverse of flatten up to fusing identical adjacent rows.
PulseSchedule reconstruct(const FlattenedSchedule& f);

std::string flattened_to_csv(const FlattenedSchedule& f);

}  // namespace hamforge
