#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordfix/expr.hpp"

namespace ordfix {

// Tolerance used when checking axioms and identifying elements numerically.
inline constexpr double kDefaultAxiomTol = 1e-9;
inline constexpr double kDefaultGrowthBound = 1e6;

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A carrier point: an index into a finite carrier, or a real in an interval.
struct Element {
  enum class Kind { Index, Scalar };

  Kind kind = Kind::Scalar;
  int index = 0;
  double value = 0.0;

  static Element finite(int i) { return Element{Kind::Index, i, 0.0}; }
  static Element scalar(double v) { return Element{Kind::Scalar, 0, v}; }

  bool is_index() const { return kind == Kind::Index; }
  std::string describe() const;
};

// Strict ordering on elements, used only to make report output deterministic.
bool element_less(const Element& a, const Element& b);

// Carrier plus distance function p. Finite carriers store the full n-by-n
// table; interval carriers evaluate an expression in x and y on [lo, hi].
//
// Construction eagerly rejects finite tables violating symmetry or the
// small-self-distance axiom; the remaining axioms are certified by sampling.
class PartialMetricSpace {
 public:
  static PartialMetricSpace finite(std::vector<std::vector<double>> table,
                                   std::string label = "");
  // Skips construction-time validation. For exercising the certifiers on
  // deliberately broken tables.
  static PartialMetricSpace finite_unchecked(std::vector<std::vector<double>> table,
                                             std::string label = "");
  static PartialMetricSpace interval(double lo, double hi, ExprPtr p,
                                     std::string label = "");

  bool is_finite() const { return finite_; }
  int size() const { return n_; }
  double lower() const { return lo_; }
  double upper() const { return hi_; }
  const ExprPtr& distance_expr() const { return p_; }
  const std::vector<double>& table() const { return table_; }
  const std::string& label() const { return label_; }

  bool contains(const Element& a) const;
  void require_member(const Element& a) const;

  double distance(const Element& a, const Element& b) const;
  double self_distance(const Element& a) const;
  // 2 p(a,b) - p(a,a) - p(b,b)
  double induced_distance(const Element& a, const Element& b) const;

  // Identity rule: same index, or |a - b| <= eps for scalars.
  bool identical(const Element& a, const Element& b,
                 double eps = kDefaultAxiomTol) const;

  // Deterministic seeded sample. Finite carriers cover every index when
  // count >= n; interval carriers include both endpoints (and 0 when it is
  // interior) before uniform draws.
  std::vector<Element> sample_elements(int count, std::uint64_t seed) const;

  // Empty placeholder so aggregates can default-construct; fill via a factory.
  PartialMetricSpace() = default;

 private:

  bool finite_ = false;
  int n_ = 0;
  std::vector<double> table_;  // row-major n*n
  double lo_ = 0.0;
  double hi_ = 0.0;
  ExprPtr p_;
  std::string label_;
};

// The relation <=_X: a finite boolean table, or a predicate
// "lhs <rel> rhs" over expressions in x and y.
class PartialOrder {
 public:
  enum class Relation { Leq, Geq, Eq };

  static PartialOrder finite(std::vector<std::vector<bool>> table,
                             std::string label = "");
  static PartialOrder finite_unchecked(std::vector<std::vector<bool>> table,
                                       std::string label = "");
  static PartialOrder predicate(ExprPtr lhs, Relation rel, ExprPtr rhs,
                                std::string label = "");

  bool is_finite() const { return finite_; }
  int size() const { return n_; }
  const ExprPtr& lhs() const { return lhs_; }
  const ExprPtr& rhs() const { return rhs_; }
  Relation relation() const { return rel_; }
  const std::vector<bool>& table() const { return table_; }
  const std::string& label() const { return label_; }

  bool leq(const Element& a, const Element& b,
           double eps = kDefaultAxiomTol) const;
  bool comparable(const Element& a, const Element& b,
                  double eps = kDefaultAxiomTol) const;

  // Empty placeholder so aggregates can default-construct; fill via a factory.
  PartialOrder() = default;

 private:

  bool finite_ = false;
  int n_ = 0;
  std::vector<bool> table_;  // row-major, table[i*n+j] means i <=_X j
  ExprPtr lhs_;
  ExprPtr rhs_;
  Relation rel_ = Relation::Leq;
  std::string label_;
};

std::string_view relation_keyword(PartialOrder::Relation rel);
PartialOrder::Relation relation_from_keyword(std::string_view keyword);

// Control function psi. psi(0) = 0 is required to hold exactly and is
// evaluated once at construction; the other hypotheses are probed by the
// certifier. growth_bound is the largest t the unboundedness probe visits.
class ControlFunction {
 public:
  explicit ControlFunction(ExprPtr psi, double growth_bound = kDefaultGrowthBound);

  double operator()(double t) const;
  double growth_bound() const { return growth_bound_; }
  const ExprPtr& expr() const { return psi_; }

 private:
  ExprPtr psi_;
  double growth_bound_;
};

// Self-map of the carrier: an index table, or an expression in one variable.
class SelfMap {
 public:
  static SelfMap finite(std::vector<int> table, std::string label = "");
  static SelfMap scalar(ExprPtr f, std::string label = "");

  bool is_finite() const { return finite_; }
  int size() const { return static_cast<int>(table_.size()); }
  const std::vector<int>& table() const { return table_; }
  const ExprPtr& expr() const { return f_; }
  const std::string& label() const { return label_; }

  // Applies the map. Scalar maps are not clamped to the carrier; whether the
  // image stays inside is certified separately.
  Element apply(const Element& a) const;

  // Empty placeholder so aggregates can default-construct; fill via a factory.
  SelfMap() = default;

 private:

  bool finite_ = false;
  std::vector<int> table_;
  ExprPtr f_;
  std::string label_;
};

// A complete problem statement: space, order, map, contraction data,
// start point and run controls.
struct ProblemInstance {
  PartialMetricSpace space;
  PartialOrder order;
  SelfMap map;
  std::optional<ControlFunction> psi;
  std::optional<double> banach_c;
  Element x0;
  double tol = 1e-9;
  long max_iter = 1000000;
  long sample_count = 10000;
  std::uint64_t seed = 0;
  double eps_ax = kDefaultAxiomTol;
  std::string label;

  // Cross-field checks: consistent kinds and sizes, at least one of
  // psi / banach_c, x0 in the carrier, positive tolerances.
  void validate() const;
};

}  // namespace ordfix
