#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hamforge/rational.hpp"

namespace hamforge {

// f(d) for d = 1..D, entry d-1.
struct FilterVector {
  std::vector<Rational> values;

  std::size_t dimension() const { return values.size(); }
  // 1-based distance
  const Rational& at(int d) const { return values.at(static_cast<std::size_t>(d - 1)); }
  std::vector<double> to_double() const;
  bool operator==(const FilterVector& o) const { return values == o.values; }
};

struct WeightedTerm;

class FilterExpr {
 public:
  enum class Kind { Lambda, Gamma, Sum, Product };

  static FilterExpr lambda(int k);
  // gamma(1) collapses to lambda(0)
  static FilterExpr gamma(int k);
  // zero-weight terms are dropped
  static FilterExpr sum(std::vector<WeightedTerm> terms);
  static FilterExpr product(std::vector<FilterExpr> factors);

  Kind kind() const;
  int k() const;
  const std::vector<WeightedTerm>& terms() const;
  const std::vector<FilterExpr>& factors() const;

  bool is_primitive() const { return kind() == Kind::Lambda || kind() == Kind::Gamma; }
  // structural equality
  bool operator==(const FilterExpr& o) const;
  // e.g. "(L2+1/2*L0)*G4"
  std::string to_string() const;

 private:
  struct Node;
  explicit FilterExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct WeightedTerm {
  Rational weight;
  FilterExpr expr;
  bool operator==(const WeightedTerm& o) const { return weight == o.weight && expr == o.expr; }
};

struct FilterExpr::Node {
  Kind kind;
  int k = 0;
  std::vector<WeightedTerm> terms;
  std::vector<FilterExpr> factors;
};

inline FilterExpr::Kind FilterExpr::kind() const { return node_->kind; }
inline int FilterExpr::k() const { return node_->k; }
inline const std::vector<WeightedTerm>& FilterExpr::terms() const { return node_->terms; }
inline const std::vector<FilterExpr>& FilterExpr::factors() const { return node_->factors; }

Rational eval_lambda_exact(std::int64_t k, std::int64_t d);
Rational eval_gamma_exact(std::int64_t k, std::int64_t d);
double eval_lambda(std::int64_t k, std::int64_t d);
double eval_gamma(std::int64_t k, std::int64_t d);

// Unnormalized: sums weight their children's vectors, products multiply.
FilterVector filter_vector(const FilterExpr& e, int D);
std::vector<double> filter_vector_f64(const FilterExpr& e, int D);
// Total time of the sequence built by materialize, primitives taking 1.
Rational duration(const FilterExpr& e);
FilterVector normalized_filter_vector(const FilterExpr& e, int D);

// Max number of Product nodes on a root-to-leaf path.
int concatenation_depth(const FilterExpr& e);
// Pairwise concatenations performed: a product of n factors costs n-1.
int concatenation_count(const FilterExpr& e);

// (Lambda_k + Lambda_0): zeroes every odd multiple of k.
FilterExpr decouple_distance_expr(int k);

struct ResourceCount {
  int concatenation_depth = 0;
  std::uint64_t pulse_layers = 0;
  std::uint64_t spin_flips = 0;
  std::uint64_t segment_count = 0;
  bool operator==(const ResourceCount&) const = default;
};

// What count_resources(materialize(e, N)) would report, without building
// the schedule. N <= 256.
ResourceCount resource_estimate(const FilterExpr& e, int N);

}  // namespace hamforge
