#include "ordfix/solve.hpp"

#include <algorithm>
#include <cmath>

namespace ordfix {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterExceeded: return "max_iter_exceeded";
    case SolveStatus::FixedPointHit: return "fixed_point_hit";
    case SolveStatus::DescentViolation: return "descent_violation";
  }
  return "max_iter_exceeded";
}

namespace {

// Default radius for the Cauchy-style confinement diagnostic run after
// every solve; tests may call the check directly with other radii.
constexpr double kConfinementRadius = 0.1;

bool exact_repeat(const Element& a, const Element& b) {
  if (a.kind != b.kind) return false;
  if (a.is_index()) return a.index == b.index;
  return a.value == b.value;
}

const ControlFunction& solver_psi(const ProblemInstance& instance,
                                  std::optional<ControlFunction>& storage) {
  if (instance.psi) return *instance.psi;
  storage = psi_from_c(*instance.banach_c);
  return *storage;
}

void add_violation(CheckResult& r, std::vector<Element> witness,
                   std::vector<std::pair<std::string, double>> values,
                   std::string message) {
  constexpr int kCap = 5;
  if (static_cast<int>(r.violations.size()) < kCap)
    r.violations.push_back(
        {r.name, std::move(witness), std::move(values), std::move(message)});
  r.status = CheckStatus::Fail;
}

}  // namespace

SolveResult picard_solve(const ProblemInstance& instance) {
  instance.validate();
  std::optional<ControlFunction> psi_storage;
  const ControlFunction& psi = solver_psi(instance, psi_storage);
  const PartialMetricSpace& space = instance.space;
  const SelfMap& map = instance.map;
  double tol = instance.tol;
  double eps = instance.eps_ax;

  Element fx0 = map.apply(instance.x0);
  if (!instance.order.leq(instance.x0, fx0, eps))
    throw HypothesisError("start point " + instance.x0.describe() +
                          " is not below its image " + fx0.describe() +
                          " in the order");

  SolveResult result;
  IterationTrace& trace = result.trace;
  trace.points.push_back(instance.x0);
  trace.self_dists.push_back(space.self_distance(instance.x0));

  for (long n = 1; n <= instance.max_iter; ++n) {
    Element prev = trace.points.back();
    Element next = map.apply(prev);
    double rho = space.distance(next, prev);
    double self = space.self_distance(next);
    trace.points.push_back(next);
    trace.rho.push_back(rho);
    trace.self_dists.push_back(self);
    trace.iterations_used = n;

    if (n >= 2 && !trace.first_descent_violation) {
      double rho_prev = trace.rho[n - 2];
      if (rho > rho_prev - psi(rho_prev) + eps)
        trace.first_descent_violation = n - 1;
    }

    bool repeat = exact_repeat(next, prev);
    if (repeat && rho <= tol && self <= tol) {
      trace.status = SolveStatus::FixedPointHit;
      result.fixed_point = next;
      result.residual = rho;
      result.self_distance_at_u = self;
      break;
    }
    if (repeat && space.is_finite()) {
      // The orbit can never move again; stop without claiming a fixed point.
      trace.status = trace.first_descent_violation ? SolveStatus::DescentViolation
                                                   : SolveStatus::MaxIterExceeded;
      break;
    }
    if (!repeat && rho <= tol && self <= tol) {
      double residual = space.distance(next, map.apply(next));
      if (residual <= tol) {
        trace.status = SolveStatus::Converged;
        result.fixed_point = next;
        result.residual = residual;
        result.self_distance_at_u = self;
        break;
      }
    }
  }

  if (!result.fixed_point && trace.status == SolveStatus::MaxIterExceeded &&
      trace.first_descent_violation)
    trace.status = SolveStatus::DescentViolation;

  result.certificates.seed = instance.seed;
  result.certificates.sample_count = instance.sample_count;
  result.certificates.checks.push_back(descent_check(trace, psi, eps));
  result.certificates.checks.push_back(
      orbit_confinement_check(trace, space, psi, kConfinementRadius, eps));
  const Element& limit =
      result.fixed_point ? *result.fixed_point : trace.points.back();
  result.certificates.checks.push_back(
      order_limit_check(trace, instance.order, limit, eps));
  return result;
}

CheckResult descent_check(const IterationTrace& trace, const ControlFunction& psi,
                          double eps) {
  CheckResult r;
  r.name = "solve.descent";
  r.exhaustive = true;
  if (trace.rho.size() < 2) {
    r.notes.push_back("fewer than two steps; vacuously true");
    return r;
  }
  for (std::size_t n = 1; n < trace.rho.size(); ++n) {
    ++r.samples_used;
    double rho_prev = trace.rho[n - 1];
    double rho = trace.rho[n];
    double bound = rho_prev - psi(rho_prev);
    if (rho > bound + eps)
      add_violation(r,
                    {trace.points[n - 1], trace.points[n], trace.points[n + 1]},
                    {{"lhs", rho},
                     {"rhs", bound},
                     {"step", static_cast<double>(n)}},
                    "descent inequality fails at step " + std::to_string(n));
    else if (rho > rho_prev + eps)
      add_violation(r,
                    {trace.points[n - 1], trace.points[n], trace.points[n + 1]},
                    {{"lhs", rho},
                     {"rhs", rho_prev},
                     {"step", static_cast<double>(n)}},
                    "step distances increase at step " + std::to_string(n));
  }
  return r;
}

CheckResult orbit_confinement_check(const IterationTrace& trace,
                                    const PartialMetricSpace& space,
                                    const ControlFunction& psi, double eps,
                                    double eps_ax) {
  CheckResult r;
  r.name = "solve.confinement";
  r.exhaustive = true;
  if (eps <= 0.0) throw DomainError("confinement radius must be positive");
  double threshold = std::min(eps / 2.0, psi(eps / 2.0));
  r.values.push_back({"eps", eps});
  r.values.push_back({"threshold", threshold});

  std::optional<std::size_t> n0;
  for (std::size_t n = 0; n < trace.rho.size(); ++n)
    if (trace.rho[n] <= threshold) {
      n0 = n;
      break;
    }
  if (!n0) {
    r.status = CheckStatus::Skipped;
    r.notes.push_back("no step distance within the confinement threshold");
    return r;
  }
  r.values.push_back({"n0", static_cast<double>(*n0)});
  for (std::size_t n = *n0; n < trace.points.size(); ++n) {
    ++r.samples_used;
    double d = space.distance(trace.points[n], trace.points[*n0]);
    if (d > eps + eps_ax)
      add_violation(r, {trace.points[n], trace.points[*n0]},
                    {{"lhs", d},
                     {"rhs", eps},
                     {"eps", eps},
                     {"step", static_cast<double>(n)}},
                    "orbit point escapes the confinement ball at step " +
                        std::to_string(n));
  }
  return r;
}

CheckResult order_limit_check(const IterationTrace& trace, const PartialOrder& order,
                              const Element& u, double eps_ax) {
  CheckResult r;
  r.name = "solve.order_limit";
  r.exhaustive = true;
  for (std::size_t n = 0; n + 1 < trace.points.size(); ++n) {
    ++r.samples_used;
    try {
      if (!order.leq(trace.points[n], trace.points[n + 1], eps_ax))
        add_violation(r, {trace.points[n], trace.points[n + 1]},
                      {{"step", static_cast<double>(n)}},
                      "orbit is not non-decreasing at step " + std::to_string(n));
    } catch (const std::exception& e) {
      add_violation(r, {trace.points[n], trace.points[n + 1]}, {},
                    std::string("evaluation error: ") + e.what());
    }
  }
  for (std::size_t n = 0; n < trace.points.size(); ++n) {
    ++r.samples_used;
    try {
      if (!order.leq(trace.points[n], u, eps_ax))
        add_violation(r, {trace.points[n], u},
                      {{"step", static_cast<double>(n)}},
                      "orbit point not below the limit at step " + std::to_string(n));
    } catch (const std::exception& e) {
      add_violation(r, {trace.points[n], u}, {},
                    std::string("evaluation error: ") + e.what());
    }
  }
  return r;
}

std::pair<double, double> verify_fixed_point(const PartialMetricSpace& space,
                                             const SelfMap& map, const Element& u) {
  space.require_member(u);
  return {space.distance(u, map.apply(u)), space.self_distance(u)};
}

UniquenessResult uniqueness_cross_check(const ProblemInstance& instance,
                                        const std::vector<Element>& starts) {
  UniquenessResult out;
  out.check.name = "solve.uniqueness";
  out.check.exhaustive = true;

  SamplePlan plan{instance.sample_count, instance.seed, instance.eps_ax};
  auto fragment = certify_comparability_hypothesis(instance.space, instance.order, plan);
  out.applicable = fragment.front().status != CheckStatus::Fail;

  for (const Element& start : starts) {
    ProblemInstance run = instance;
    run.x0 = start;
    try {
      run.validate();
      SolveResult sr = picard_solve(run);
      if (sr.fixed_point) out.fixed_points.push_back(*sr.fixed_point);
      out.runs.emplace_back(start, std::move(sr));
    } catch (const HypothesisError&) {
      out.check.notes.push_back("start " + start.describe() +
                                " skipped: not below its image");
    } catch (const DomainError& e) {
      out.check.notes.push_back("start " + start.describe() +
                                " skipped: " + e.what());
    }
  }

  if (!out.applicable) {
    out.check.status = CheckStatus::Skipped;
    out.check.notes.push_back(
        "comparability hypothesis failed on samples; uniqueness not guaranteed");
    for (std::size_t i = 0; i < out.fixed_points.size(); ++i)
      for (std::size_t j = i + 1; j < out.fixed_points.size(); ++j)
        if (!instance.space.identical(out.fixed_points[i], out.fixed_points[j],
                                      instance.eps_ax))
          out.check.notes.push_back(
              "distinct fixed points " + out.fixed_points[i].describe() + " and " +
              out.fixed_points[j].describe() + " found; the hypothesis is sharp");
    return out;
  }

  if (out.fixed_points.size() < 2)
    out.check.notes.push_back("fewer than two fixed points to compare");
  for (std::size_t i = 0; i < out.fixed_points.size(); ++i)
    for (std::size_t j = i + 1; j < out.fixed_points.size(); ++j) {
      ++out.check.samples_used;
      const Element& a = out.fixed_points[i];
      const Element& b = out.fixed_points[j];
      double d = instance.space.distance(a, b);
      if (d > instance.tol || !instance.space.identical(a, b, instance.eps_ax))
        add_violation(out.check, {a, b},
                      {{"lhs", d}, {"rhs", instance.tol}, {"tol", instance.tol}},
                      "fixed points from different starts disagree");
    }
  return out;
}

}  // namespace ordfix
