#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hamforge {

// Malformed or out-of-range input. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A construction failed its own exactness check. Maps to exit code 3.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Target outside the cone of the filter basis. Carries a Farkas direction y
// with y.f_j <= 0 for every basis vector and y.b > 0.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<double> certificate)
      : std::runtime_error(what), certificate_(std::move(certificate)) {}

  const std::vector<double>& certificate() const noexcept { return certificate_; }

 private:
  std::vector<double> certificate_;
};

// A simulated quantity broke a bound it must satisfy. Maps to exit code 5.
class BoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filter vector of a schedule depends on the qubit pair, not only on distance.
class TranslationInvarianceError : public std::runtime_error {
 public:
  TranslationInvarianceError(int first_qubit, int distance)
      : std::runtime_error("schedule is not translation invariant at j=" +
                           std::to_string(first_qubit) + ", d=" + std::to_string(distance)),
        first_qubit_(first_qubit),
        distance_(distance) {}

  int first_qubit() const noexcept { return first_qubit_; }
  int distance() const noexcept { return distance_; }

 private:
  int first_qubit_;
  int distance_;
};

}  // namespace hamforge
