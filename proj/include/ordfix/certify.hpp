#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordfix/core.hpp"

namespace ordfix {

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus s);

// A concrete point where a certified property fails. Re-running the named
// check at the witness reproduces the failure (see replay_violation).
struct Violation {
  std::string check;
  std::vector<Element> witness;
  std::vector<std::pair<std::string, double>> values;
  std::string message;

  std::optional<double> value(std::string_view name) const;
};

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  long samples_used = 0;
  bool exhaustive = false;
  std::vector<Violation> violations;
  // Check-level labelled reals (e.g. the located step of a trace check).
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> notes;
};

struct CertificateReport {
  std::vector<CheckResult> checks;
  std::uint64_t seed = 0;
  long sample_count = 0;

  bool all_passed() const;  // no failing check (skipped checks are fine)
  const CheckResult* find(std::string_view name) const;
  void append(std::vector<CheckResult> fragment);
};

// How many seeded checks to run per axiom, and at what tolerance. Finite
// carriers with at most kExhaustiveLimit points are enumerated exhaustively
// instead.
struct SamplePlan {
  long sample_count = 10000;
  std::uint64_t seed = 0;
  double eps_ax = kDefaultAxiomTol;
};

inline constexpr int kExhaustiveLimit = 64;

// Axioms p1-p4 on sampled pairs/triples: p1 both directions, small self
// distance, symmetry, and the triangle inequality with the p(z,z) correction.
std::vector<CheckResult> certify_partial_metric(const PartialMetricSpace& space,
                                                const SamplePlan& plan);

// The induced metric 2p(x,y)-p(x,x)-p(y,y): zero self distance, symmetry,
// triangle inequality, and separation of points.
std::vector<CheckResult> certify_induced_metric(const PartialMetricSpace& space,
                                                const SamplePlan& plan);

// Reflexivity, antisymmetry and transitivity of <=_X; also notes whether
// every sampled pair was comparable.
std::vector<CheckResult> certify_order(const PartialMetricSpace& space,
                                       const PartialOrder& order,
                                       const SamplePlan& plan);

// psi(0)=0, positivity on t>0, monotonicity on a sorted grid, and the
// unboundedness probe psi(G) >= threshold. Continuity is assumed, not checked.
std::vector<CheckResult> certify_control_function(const ControlFunction& psi,
                                                  const SamplePlan& plan,
                                                  double growth_threshold = 1.0);

// a <=_X b implies f(a) <=_X f(b) on sampled related pairs; also checks that
// images stay inside the carrier.
std::vector<CheckResult> certify_monotone(const PartialMetricSpace& space,
                                          const SelfMap& map,
                                          const PartialOrder& order,
                                          const SamplePlan& plan);

// p(fa,fb) <= p(a,b) - psi(p(a,b)) on sampled comparable pairs. Incomparable
// pairs are skipped and counted; low comparable coverage is flagged.
std::vector<CheckResult> certify_weak_contraction(const PartialMetricSpace& space,
                                                  const PartialOrder& order,
                                                  const SelfMap& map,
                                                  const ControlFunction& psi,
                                                  const SamplePlan& plan);

// p(fa,fb) <= c p(a,b) on sampled comparable pairs, 0 <= c < 1.
std::vector<CheckResult> certify_banach(const PartialMetricSpace& space,
                                        const PartialOrder& order,
                                        const SelfMap& map, double c,
                                        const SamplePlan& plan);

// The control function t -> (1-c) t equivalent to a Banach constant c.
ControlFunction psi_from_c(double c);

// For every sampled pair (a,b) there must be a sampled z comparable with
// both (a and b themselves qualify).
std::vector<CheckResult> certify_comparability_hypothesis(
    const PartialMetricSpace& space, const PartialOrder& order,
    const SamplePlan& plan);

// A finite sequence prefix with its declared limit.
struct ProbeSequence {
  std::vector<Element> terms;
  Element limit;
};

inline constexpr double kDefaultProbeTol = 1e-2;

// Sequential continuity probes: if the tail of p(x_n, L) sits within
// probe_tol of p(L,L) then so must the tail of p(f x_n, f L) around
// p(fL, fL); likewise for the induced metric tending to zero. A probe with
// no sequence establishing its premise is reported as skipped, not proved.
std::vector<CheckResult> probe_sequential_continuity(
    const PartialMetricSpace& space, const SelfMap& map,
    const std::vector<ProbeSequence>& sequences,
    double probe_tol = kDefaultProbeTol, double eps_ax = kDefaultAxiomTol);

// Runs every certifier applicable to the instance, including the starting
// point condition x0 <=_X f(x0).
CertificateReport certify_instance(const ProblemInstance& instance);

// Everything a replay needs to re-evaluate a violation in isolation.
struct ReplayContext {
  const PartialMetricSpace* space = nullptr;
  const PartialOrder* order = nullptr;
  const SelfMap* map = nullptr;
  const ControlFunction* psi = nullptr;
  std::optional<double> banach_c;
  double eps_ax = kDefaultAxiomTol;

  static ReplayContext of(const ProblemInstance& instance);
};

// True when the named check still fails at the recorded witness.
bool replay_violation(const Violation& v, const ReplayContext& ctx);

// Seeded search for an instance that violates exactly the named hypothesis
// while the fixed-point conclusion fails. Supported mutations:
// "comparability" and "psi_positivity".
std::optional<Violation> search_counterexample(const ProblemInstance& instance,
                                               std::string_view mutation,
                                               long budget);

}  // namespace ordfix
