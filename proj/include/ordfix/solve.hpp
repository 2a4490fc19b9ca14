#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ordfix/certify.hpp"
#include "ordfix/core.hpp"

namespace ordfix {

// The starting point does not sit below its image in the order.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SolveStatus { Converged, MaxIterExceeded, FixedPointHit, DescentViolation };

std::string_view to_string(SolveStatus s);

// The recorded orbit x_0, x_1 = f(x_0), ... with per-step distances
// rho[n] = p(x_{n+1}, x_n) and self distances p(x_n, x_n).
struct IterationTrace {
  std::vector<Element> points;
  std::vector<double> rho;
  std::vector<double> self_dists;
  SolveStatus status = SolveStatus::MaxIterExceeded;
  long iterations_used = 0;
  // First step n with rho_n > rho_{n-1} - psi(rho_{n-1}); the solver keeps
  // going when this happens and only flags it.
  std::optional<long> first_descent_violation;
};

struct SolveResult {
  IterationTrace trace;
  std::optional<Element> fixed_point;
  double residual = 0.0;            // p(u, f u) when a fixed point is accepted
  double self_distance_at_u = 0.0;  // p(u, u)
  CertificateReport certificates;   // checks the solver itself consulted
};

// Picard iteration from instance.x0. Requires x0 <=_X f(x0) (throws
// HypothesisError otherwise). A fixed point u is accepted only when both
// p(u, f u) <= tol and p(u, u) <= tol; exact repeats on finite carriers stop
// the orbit immediately.
SolveResult picard_solve(const ProblemInstance& instance);

// rho_n <= rho_{n-1} - psi(rho_{n-1}) + eps at every step, and the rho
// sequence is non-increasing within eps.
CheckResult descent_check(const IterationTrace& trace, const ControlFunction& psi,
                          double eps = kDefaultAxiomTol);

// Finds the first n0 with rho_{n0} <= min(eps/2, psi(eps/2)) and checks that
// every later orbit point stays within distance eps of x_{n0}. Skipped when
// no step qualifies. The located n0 is recorded in the check values.
CheckResult orbit_confinement_check(const IterationTrace& trace,
                                    const PartialMetricSpace& space,
                                    const ControlFunction& psi, double eps,
                                    double eps_ax = kDefaultAxiomTol);

// The orbit is <=_X-non-decreasing and sits below u.
CheckResult order_limit_check(const IterationTrace& trace, const PartialOrder& order,
                              const Element& u, double eps_ax = kDefaultAxiomTol);

// (p(u, f u), p(u, u)); the caller deems u fixed when both are within tol.
std::pair<double, double> verify_fixed_point(const PartialMetricSpace& space,
                                             const SelfMap& map, const Element& u);

struct UniquenessResult {
  CheckResult check;  // "solve.uniqueness"
  bool applicable = false;  // comparability hypothesis held on samples
  std::vector<std::pair<Element, SolveResult>> runs;
  std::vector<Element> fixed_points;
};

// Solves from every admissible start and checks that all accepted fixed
// points coincide pairwise. When the comparability hypothesis fails the check
// is reported not-applicable and distinct fixed points are listed as
// evidence that the extra hypothesis is needed.
UniquenessResult uniqueness_cross_check(const ProblemInstance& instance,
                                        const std::vector<Element>& starts);

}  // namespace ordfix
