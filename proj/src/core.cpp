#include "ordfix/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "rng_util.hpp"

namespace ordfix {

namespace {

std::string real_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool is_bad(double v) { return std::isnan(v) || std::isinf(v); }

void require_xy_only(const Expr& e, const char* what) {
  std::string vars = free_variables(e);
  if (vars.find('t') != std::string::npos)
    throw DomainError(std::string(what) + " may only use the variables x and y");
}

void require_one_var(const Expr& e, const char* what) {
  std::string vars = free_variables(e);
  if (vars.find('y') != std::string::npos)
    throw DomainError(std::string(what) + " may only use a single variable (x or t)");
}

}  // namespace

std::string Element::describe() const {
  if (kind == Kind::Index) return "#" + std::to_string(index);
  return real_text(value);
}

bool element_less(const Element& a, const Element& b) {
  if (a.kind != b.kind) return a.kind == Element::Kind::Index;
  if (a.kind == Element::Kind::Index) return a.index < b.index;
  return a.value < b.value;
}

PartialMetricSpace PartialMetricSpace::finite(std::vector<std::vector<double>> table,
                                              std::string label) {
  PartialMetricSpace s = finite_unchecked(std::move(table), std::move(label));
  int n = s.n_;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double pij = s.table_[i * n + j];
      if (is_bad(pij))
        throw DomainError("distance table entry (" + std::to_string(i) + "," +
                          std::to_string(j) + ") is not finite");
      if (pij < -kDefaultAxiomTol)
        throw DomainError("distance table entry (" + std::to_string(i) + "," +
                          std::to_string(j) + ") is negative: " + real_text(pij));
      double pji = s.table_[j * n + i];
      if (std::abs(pij - pji) > kDefaultAxiomTol)
        throw DomainError("distance table is asymmetric at (" + std::to_string(i) +
                          "," + std::to_string(j) + "): " + real_text(pij) +
                          " vs " + real_text(pji));
      if (s.table_[i * n + i] > pij + kDefaultAxiomTol)
        throw DomainError("self-distance exceeds distance at (" + std::to_string(i) +
                          "," + std::to_string(j) + "): " +
                          real_text(s.table_[i * n + i]) + " > " + real_text(pij));
    }
  }
  return s;
}

PartialMetricSpace PartialMetricSpace::finite_unchecked(
    std::vector<std::vector<double>> table, std::string label) {
  int n = static_cast<int>(table.size());
  if (n == 0) throw DomainError("distance table must be non-empty");
  PartialMetricSpace s;
  s.finite_ = true;
  s.n_ = n;
  s.table_.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw DomainError("distance table must be square");
    s.table_.insert(s.table_.end(), row.begin(), row.end());
  }
  s.label_ = std::move(label);
  return s;
}

PartialMetricSpace PartialMetricSpace::interval(double lo, double hi, ExprPtr p,
                                                std::string label) {
  if (!p) throw DomainError("interval space needs a distance expression");
  if (is_bad(lo) || is_bad(hi) || lo > hi)
    throw DomainError("interval bounds must be finite with min <= max");
  require_xy_only(*p, "distance expression");
  PartialMetricSpace s;
  s.finite_ = false;
  s.lo_ = lo;
  s.hi_ = hi;
  s.p_ = std::move(p);
  s.label_ = std::move(label);
  return s;
}

bool PartialMetricSpace::contains(const Element& a) const {
  if (finite_) return a.is_index() && a.index >= 0 && a.index < n_;
  return !a.is_index() && a.value >= lo_ && a.value <= hi_;
}

void PartialMetricSpace::require_member(const Element& a) const {
  if (!contains(a))
    throw DomainError("element " + a.describe() + " is outside the carrier");
}

double PartialMetricSpace::distance(const Element& a, const Element& b) const {
  if (finite_) {
    if (!a.is_index() || !b.is_index() || a.index < 0 || a.index >= n_ ||
        b.index < 0 || b.index >= n_)
      throw DomainError("finite carrier distance needs valid indices");
    return table_[static_cast<std::size_t>(a.index) * n_ + b.index];
  }
  if (a.is_index() || b.is_index())
    throw DomainError("interval carrier distance needs scalar points");
  EvalEnv env = EvalEnv::pair(a.value, b.value);
  return evaluate(*p_, env);
}

double PartialMetricSpace::self_distance(const Element& a) const {
  return distance(a, a);
}

double PartialMetricSpace::induced_distance(const Element& a, const Element& b) const {
  return 2.0 * distance(a, b) - self_distance(a) - self_distance(b);
}

bool PartialMetricSpace::identical(const Element& a, const Element& b,
                                   double eps) const {
  if (a.kind != b.kind) return false;
  if (a.is_index()) return a.index == b.index;
  return std::abs(a.value - b.value) <= eps;
}

std::vector<Element> PartialMetricSpace::sample_elements(int count,
                                                         std::uint64_t seed) const {
  std::vector<Element> out;
  if (count <= 0) return out;
  out.reserve(count);
  std::mt19937_64 g(seed);
  if (finite_) {
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n_ - 1; i > 0; --i)
      std::swap(order[i], order[bounded(g, static_cast<std::uint64_t>(i) + 1)]);
    for (int i = 0; i < count && i < n_; ++i) out.push_back(Element::finite(order[i]));
    while (static_cast<int>(out.size()) < count)
      out.push_back(Element::finite(static_cast<int>(bounded(g, n_))));
    return out;
  }
  out.push_back(Element::scalar(lo_));
  if (static_cast<int>(out.size()) < count && hi_ > lo_)
    out.push_back(Element::scalar(hi_));
  if (static_cast<int>(out.size()) < count && lo_ < 0.0 && 0.0 < hi_)
    out.push_back(Element::scalar(0.0));
  while (static_cast<int>(out.size()) < count)
    out.push_back(Element::scalar(uniform_in(g, lo_, hi_)));
  return out;
}

PartialOrder PartialOrder::finite(std::vector<std::vector<bool>> table,
                                  std::string label) {
  PartialOrder o = finite_unchecked(std::move(table), std::move(label));
  for (int i = 0; i < o.n_; ++i)
    if (!o.table_[static_cast<std::size_t>(i) * o.n_ + i])
      throw DomainError("order table is not reflexive at index " + std::to_string(i));
  return o;
}

PartialOrder PartialOrder::finite_unchecked(std::vector<std::vector<bool>> table,
                                            std::string label) {
  int n = static_cast<int>(table.size());
  if (n == 0) throw DomainError("order table must be non-empty");
  PartialOrder o;
  o.finite_ = true;
  o.n_ = n;
  o.table_.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw DomainError("order table must be square");
    o.table_.insert(o.table_.end(), row.begin(), row.end());
  }
  o.label_ = std::move(label);
  return o;
}

PartialOrder PartialOrder::predicate(ExprPtr lhs, Relation rel, ExprPtr rhs,
                                     std::string label) {
  if (!lhs || !rhs) throw DomainError("order predicate needs both sides");
  require_xy_only(*lhs, "order predicate");
  require_xy_only(*rhs, "order predicate");
  PartialOrder o;
  o.finite_ = false;
  o.lhs_ = std::move(lhs);
  o.rhs_ = std::move(rhs);
  o.rel_ = rel;
  o.label_ = std::move(label);
  return o;
}

bool PartialOrder::leq(const Element& a, const Element& b, double eps) const {
  if (finite_) {
    if (!a.is_index() || !b.is_index() || a.index < 0 || a.index >= n_ ||
        b.index < 0 || b.index >= n_)
      throw DomainError("finite order needs valid indices");
    return table_[static_cast<std::size_t>(a.index) * n_ + b.index];
  }
  if (a.is_index() || b.is_index())
    throw DomainError("order predicate needs scalar points");
  EvalEnv env = EvalEnv::pair(a.value, b.value);
  double l = evaluate(*lhs_, env);
  double r = evaluate(*rhs_, env);
  switch (rel_) {
    case Relation::Leq: return l <= r + eps;
    case Relation::Geq: return l >= r - eps;
    case Relation::Eq: return std::abs(l - r) <= eps;
  }
  return false;
}

bool PartialOrder::comparable(const Element& a, const Element& b, double eps) const {
  return leq(a, b, eps) || leq(b, a, eps);
}

std::string_view relation_keyword(PartialOrder::Relation rel) {
  switch (rel) {
    case PartialOrder::Relation::Leq: return "leq";
    case PartialOrder::Relation::Geq: return "geq";
    case PartialOrder::Relation::Eq: return "eq";
  }
  return "leq";
}

PartialOrder::Relation relation_from_keyword(std::string_view keyword) {
  if (keyword == "leq") return PartialOrder::Relation::Leq;
  if (keyword == "geq") return PartialOrder::Relation::Geq;
  if (keyword == "eq") return PartialOrder::Relation::Eq;
  throw DomainError("unknown order relation '" + std::string(keyword) +
                    "' (expected leq, geq or eq)");
}

ControlFunction::ControlFunction(ExprPtr psi, double growth_bound)
    : psi_(std::move(psi)), growth_bound_(growth_bound) {
  if (!psi_) throw DomainError("control function needs an expression");
  require_one_var(*psi_, "control function");
  if (is_bad(growth_bound_) || growth_bound_ <= 0.0)
    throw DomainError("control function growth bound must be positive");
  EvalEnv zero = EvalEnv::single(0.0);
  double at_zero = evaluate(*psi_, zero);
  if (at_zero != 0.0)
    throw DomainError("control function must vanish at zero, got " +
                      real_text(at_zero));
}

double ControlFunction::operator()(double t) const {
  EvalEnv env = EvalEnv::single(t);
  return evaluate(*psi_, env);
}

SelfMap SelfMap::finite(std::vector<int> table, std::string label) {
  int n = static_cast<int>(table.size());
  if (n == 0) throw DomainError("map table must be non-empty");
  for (int i = 0; i < n; ++i)
    if (table[i] < 0 || table[i] >= n)
      throw DomainError("map table entry " + std::to_string(i) + " -> " +
                        std::to_string(table[i]) + " leaves the carrier");
  SelfMap m;
  m.finite_ = true;
  m.table_ = std::move(table);
  m.label_ = std::move(label);
  return m;
}

SelfMap SelfMap::scalar(ExprPtr f, std::string label) {
  if (!f) throw DomainError("scalar map needs an expression");
  require_one_var(*f, "self-map");
  SelfMap m;
  m.finite_ = false;
  m.f_ = std::move(f);
  m.label_ = std::move(label);
  return m;
}

Element SelfMap::apply(const Element& a) const {
  if (finite_) {
    if (!a.is_index() || a.index < 0 || a.index >= size())
      throw DomainError("finite map needs a valid index");
    return Element::finite(table_[a.index]);
  }
  if (a.is_index()) throw DomainError("scalar map needs a scalar point");
  EvalEnv env = EvalEnv::single(a.value);
  return Element::scalar(evaluate(*f_, env));
}

void ProblemInstance::validate() const {
  if (space.is_finite()) {
    if (!order.is_finite())
      throw DomainError("finite carrier needs a finite order table");
    if (order.size() != space.size())
      throw DomainError("order table size does not match the carrier");
    if (!map.is_finite())
      throw DomainError("finite carrier needs a finite map table");
    if (map.size() != space.size())
      throw DomainError("map table size does not match the carrier");
  } else {
    if (order.is_finite())
      throw DomainError("interval carrier needs an order predicate");
    if (map.is_finite())
      throw DomainError("interval carrier needs a scalar map");
  }
  if (!psi && !banach_c)
    throw DomainError("instance needs a control function or a contraction factor");
  if (banach_c && (is_bad(*banach_c) || *banach_c < 0.0 || *banach_c >= 1.0))
    throw DomainError("contraction factor must lie in [0, 1)");
  if (!space.contains(x0))
    throw DomainError("start point " + x0.describe() + " is outside the carrier");
  if (is_bad(tol) || tol <= 0.0) throw DomainError("tolerance must be positive");
  if (max_iter <= 0) throw DomainError("iteration budget must be positive");
  if (sample_count <= 0) throw DomainError("sample count must be positive");
  if (is_bad(eps_ax) || eps_ax < 0.0)
    throw DomainError("axiom tolerance must be non-negative");
}

}  // namespace ordfix
