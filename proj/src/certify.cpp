#include "ordfix/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rng_util.hpp"

namespace ordfix {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "fail";
}

std::optional<double> Violation::value(std::string_view name) const {
  for (const auto& [label, v] : values)
    if (label == name) return v;
  return std::nullopt;
}

bool CertificateReport::all_passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

const CheckResult* CertificateReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void CertificateReport::append(std::vector<CheckResult> fragment) {
  for (auto& c : fragment) checks.push_back(std::move(c));
}

namespace {

constexpr int kMaxRecordedViolations = 5;

bool violation_less(const Violation& a, const Violation& b) {
  std::size_t n = std::min(a.witness.size(), b.witness.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (element_less(a.witness[i], b.witness[i])) return true;
    if (element_less(b.witness[i], a.witness[i])) return false;
  }
  if (a.witness.size() != b.witness.size())
    return a.witness.size() < b.witness.size();
  return a.message < b.message;
}

// Collects violations for one check, capping how many are kept and
// normalizing their order so reports do not depend on evaluation order.
struct CheckBuilder {
  CheckResult r;
  long found = 0;

  explicit CheckBuilder(std::string name) { r.name = std::move(name); }

  void violation(std::vector<Element> witness,
                 std::vector<std::pair<std::string, double>> values,
                 std::string message) {
    ++found;
    if (static_cast<int>(r.violations.size()) < kMaxRecordedViolations)
      r.violations.push_back(
          {r.name, std::move(witness), std::move(values), std::move(message)});
  }

  void eval_failure(std::vector<Element> witness, const std::exception& e) {
    violation(std::move(witness), {},
              std::string("evaluation error: ") + e.what());
  }

  CheckResult finish() {
    std::sort(r.violations.begin(), r.violations.end(), violation_less);
    if (found > static_cast<long>(r.violations.size()))
      r.notes.push_back(
          std::to_string(found - static_cast<long>(r.violations.size())) +
          " further violations suppressed");
    if (!r.violations.empty()) r.status = CheckStatus::Fail;
    return std::move(r);
  }
};

// Seeded point source; the first interval draws are the endpoints (and zero
// when interior) so boundary cases are always exercised.
struct Drawer {
  const PartialMetricSpace& space;
  std::mt19937_64 g;
  long k = 0;

  Drawer(const PartialMetricSpace& s, std::uint64_t seed) : space(s), g(seed) {}

  Element next() {
    if (space.is_finite())
      return Element::finite(
          static_cast<int>(bounded(g, static_cast<std::uint64_t>(space.size()))));
    ++k;
    if (k == 1) return Element::scalar(space.lower());
    if (k == 2 && space.upper() > space.lower())
      return Element::scalar(space.upper());
    if (k == 3 && space.lower() < 0.0 && 0.0 < space.upper())
      return Element::scalar(0.0);
    return Element::scalar(uniform_in(g, space.lower(), space.upper()));
  }
};

bool use_exhaustive(const PartialMetricSpace& space) {
  return space.is_finite() && space.size() <= kExhaustiveLimit;
}

template <class Fn>
void for_each_element(const PartialMetricSpace& space, const SamplePlan& plan,
                      std::string_view tag, CheckBuilder& cb, Fn&& fn) {
  if (use_exhaustive(space)) {
    cb.r.exhaustive = true;
    for (int i = 0; i < space.size(); ++i) {
      fn(Element::finite(i));
      ++cb.r.samples_used;
    }
    return;
  }
  Drawer d(space, mix_seed(plan.seed, tag));
  for (long k = 0; k < plan.sample_count; ++k) {
    fn(d.next());
    ++cb.r.samples_used;
  }
}

template <class Fn>
void for_each_pair(const PartialMetricSpace& space, const SamplePlan& plan,
                   std::string_view tag, CheckBuilder& cb, Fn&& fn) {
  if (use_exhaustive(space)) {
    cb.r.exhaustive = true;
    for (int i = 0; i < space.size(); ++i)
      for (int j = 0; j < space.size(); ++j) {
        fn(Element::finite(i), Element::finite(j));
        ++cb.r.samples_used;
      }
    return;
  }
  Drawer d(space, mix_seed(plan.seed, tag));
  for (long k = 0; k < plan.sample_count; ++k) {
    Element a = d.next();
    Element b = d.next();
    fn(a, b);
    ++cb.r.samples_used;
  }
}

template <class Fn>
void for_each_triple(const PartialMetricSpace& space, const SamplePlan& plan,
                     std::string_view tag, CheckBuilder& cb, Fn&& fn) {
  if (use_exhaustive(space)) {
    cb.r.exhaustive = true;
    for (int i = 0; i < space.size(); ++i)
      for (int j = 0; j < space.size(); ++j)
        for (int l = 0; l < space.size(); ++l) {
          fn(Element::finite(i), Element::finite(j), Element::finite(l));
          ++cb.r.samples_used;
        }
    return;
  }
  Drawer d(space, mix_seed(plan.seed, tag));
  for (long k = 0; k < plan.sample_count; ++k) {
    Element a = d.next();
    Element b = d.next();
    Element z = d.next();
    fn(a, b, z);
    ++cb.r.samples_used;
  }
}

}  // namespace

std::vector<CheckResult> certify_partial_metric(const PartialMetricSpace& space,
                                                const SamplePlan& plan) {
  std::vector<CheckResult> out;
  double eps = plan.eps_ax;
  {
    CheckBuilder cb("pm.p1");
    for_each_pair(space, plan, "pm.p1", cb, [&](const Element& a, const Element& b) {
      try {
        double paa = space.self_distance(a);
        double pbb = space.self_distance(b);
        double pab = space.distance(a, b);
        bool equal = std::abs(paa - pab) <= eps && std::abs(pbb - pab) <= eps;
        bool ident = space.identical(a, b, eps);
        if (ident && !equal)
          cb.violation({a, b}, {{"p_aa", paa}, {"p_ab", pab}, {"p_bb", pbb}},
                       "identical points with unequal self and cross distances");
        else if (equal && !ident)
          cb.violation({a, b}, {{"p_aa", paa}, {"p_ab", pab}, {"p_bb", pbb}},
                       "equal self and cross distances at distinct points");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b}, e);
      }
    });
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("pm.p2");
    for_each_pair(space, plan, "pm.p2", cb, [&](const Element& a, const Element& b) {
      try {
        double paa = space.self_distance(a);
        double pab = space.distance(a, b);
        if (paa > pab + eps)
          cb.violation({a, b}, {{"lhs", paa}, {"rhs", pab}},
                       "self-distance exceeds cross distance");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b}, e);
      }
    });
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("pm.p3");
    for_each_pair(space, plan, "pm.p3", cb, [&](const Element& a, const Element& b) {
      try {
        double pab = space.distance(a, b);
        double pba = space.distance(b, a);
        if (std::abs(pab - pba) > eps)
          cb.violation({a, b}, {{"lhs", pab}, {"rhs", pba}}, "asymmetric distance");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b}, e);
      }
    });
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("pm.p4");
    for_each_triple(space, plan, "pm.p4", cb,
                    [&](const Element& a, const Element& b, const Element& z) {
      try {
        double lhs = space.distance(a, b);
        double rhs = space.distance(a, z) + space.distance(z, b) -
                     space.self_distance(z);
        if (lhs > rhs + eps)
          cb.violation({a, b, z}, {{"lhs", lhs}, {"rhs", rhs}},
                       "triangle inequality with self-distance correction fails");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b, z}, e);
      }
    });
    out.push_back(cb.finish());
  }
  return out;
}

std::vector<CheckResult> certify_induced_metric(const PartialMetricSpace& space,
                                                const SamplePlan& plan) {
  std::vector<CheckResult> out;
  double eps = plan.eps_ax;
  {
    CheckBuilder cb("induced.self_zero");
    for_each_element(space, plan, "induced.self_zero", cb, [&](const Element& a) {
      try {
        double v = space.induced_distance(a, a);
        if (std::abs(v) > eps)
          cb.violation({a}, {{"lhs", v}, {"rhs", 0.0}},
                       "induced self-distance is not zero");
      } catch (const std::exception& e) {
        cb.eval_failure({a}, e);
      }
    });
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("induced.symmetry");
    for_each_pair(space, plan, "induced.symmetry", cb,
                  [&](const Element& a, const Element& b) {
      try {
        double dab = space.induced_distance(a, b);
        double dba = space.induced_distance(b, a);
        if (std::abs(dab - dba) > eps)
          cb.violation({a, b}, {{"lhs", dab}, {"rhs", dba}},
                       "induced distance is asymmetric");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b}, e);
      }
    });
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("induced.triangle");
    for_each_triple(space, plan, "induced.triangle", cb,
                    [&](const Element& a, const Element& b, const Element& z) {
      try {
        double lhs = space.induced_distance(a, b);
        double rhs = space.induced_distance(a, z) + space.induced_distance(z, b);
        if (lhs > rhs + eps)
          cb.violation({a, b, z}, {{"lhs", lhs}, {"rhs", rhs}},
                       "induced triangle inequality fails");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b, z}, e);
      }
    });
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("induced.separation");
    for_each_pair(space, plan, "induced.separation", cb,
                  [&](const Element& a, const Element& b) {
      try {
        double dab = space.induced_distance(a, b);
        if (dab <= eps && !space.identical(a, b, eps))
          cb.violation({a, b}, {{"lhs", dab}, {"rhs", 0.0}},
                       "zero induced distance at distinct points");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b}, e);
      }
    });
    out.push_back(cb.finish());
  }
  return out;
}

std::vector<CheckResult> certify_order(const PartialMetricSpace& space,
                                       const PartialOrder& order,
                                       const SamplePlan& plan) {
  std::vector<CheckResult> out;
  double eps = plan.eps_ax;
  {
    CheckBuilder cb("order.reflexive");
    for_each_element(space, plan, "order.reflexive", cb, [&](const Element& a) {
      try {
        if (!order.leq(a, a, eps))
          cb.violation({a}, {}, "point not related to itself");
      } catch (const std::exception& e) {
        cb.eval_failure({a}, e);
      }
    });
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("order.antisymmetric");
    long comparable = 0;
    long pairs = 0;
    for_each_pair(space, plan, "order.antisymmetric", cb,
                  [&](const Element& a, const Element& b) {
      try {
        bool ab = order.leq(a, b, eps);
        bool ba = order.leq(b, a, eps);
        ++pairs;
        if (ab || ba) ++comparable;
        if (ab && ba && !space.identical(a, b, eps))
          cb.violation({a, b}, {}, "distinct points related both ways");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b}, e);
      }
    });
    if (pairs > 0 && comparable == pairs)
      cb.r.notes.push_back("every sampled pair comparable (total on samples)");
    else if (pairs > 0)
      cb.r.notes.push_back(std::to_string(pairs - comparable) + " of " +
                           std::to_string(pairs) + " sampled pairs incomparable");
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("order.transitive");
    for_each_triple(space, plan, "order.transitive", cb,
                    [&](const Element& a, const Element& b, const Element& z) {
      try {
        if (order.leq(a, b, eps) && order.leq(b, z, eps) && !order.leq(a, z, eps))
          cb.violation({a, b, z}, {}, "relation is not transitive");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b, z}, e);
      }
    });
    out.push_back(cb.finish());
  }
  return out;
}

std::vector<CheckResult> certify_control_function(const ControlFunction& psi,
                                                  const SamplePlan& plan,
                                                  double growth_threshold) {
  std::vector<CheckResult> out;
  double eps = plan.eps_ax;
  double G = psi.growth_bound();

  std::vector<double> ladder;
  for (double t = 1.0; t < G; t *= 2.0) ladder.push_back(t);
  ladder.push_back(G);
  std::vector<double> near_zero;
  for (int k = 1; k <= 40; ++k) near_zero.push_back(std::ldexp(1.0, -k));

  {
    CheckBuilder cb("psi.zero_at_zero");
    cb.r.samples_used = 1;
    try {
      double v = psi(0.0);
      if (v != 0.0)
        cb.violation({Element::scalar(0.0)}, {{"lhs", v}, {"rhs", 0.0}},
                     "control function does not vanish at zero");
    } catch (const std::exception& e) {
      cb.eval_failure({Element::scalar(0.0)}, e);
    }
    out.push_back(cb.finish());
  }
  {
    // The ladder is scanned before the near-zero points, so the first
    // recorded witness for a function failing positivity everywhere is t=1.
    CheckBuilder cb("psi.positive");
    bool done = false;
    auto probe = [&](double t) {
      if (done) return;
      ++cb.r.samples_used;
      try {
        double v = psi(t);
        if (v <= 0.0) {
          cb.violation({Element::scalar(t)}, {{"lhs", v}, {"rhs", 0.0}},
                       "control function not positive at positive argument");
          done = true;
        }
      } catch (const std::exception& e) {
        cb.eval_failure({Element::scalar(t)}, e);
        done = true;
      }
    };
    for (double t : ladder) probe(t);
    for (double t : near_zero) probe(t);
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("psi.nondecreasing");
    std::vector<double> grid;
    grid.push_back(0.0);
    grid.insert(grid.end(), near_zero.begin(), near_zero.end());
    grid.insert(grid.end(), ladder.begin(), ladder.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      ++cb.r.samples_used;
      try {
        double lo = psi(grid[i]);
        double hi = psi(grid[i + 1]);
        if (lo > hi + eps) {
          cb.violation({Element::scalar(grid[i]), Element::scalar(grid[i + 1])},
                       {{"lhs", lo}, {"rhs", hi}},
                       "control function decreases along the grid");
          break;
        }
      } catch (const std::exception& e) {
        cb.eval_failure({Element::scalar(grid[i]), Element::scalar(grid[i + 1])}, e);
        break;
      }
    }
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("psi.growth");
    cb.r.samples_used = 1;
    try {
      double v = psi(G);
      if (v < growth_threshold)
        cb.violation({Element::scalar(G)}, {{"lhs", v}, {"rhs", growth_threshold},
                                            {"threshold", growth_threshold}},
                     "growth probe below threshold");
    } catch (const std::exception& e) {
      cb.eval_failure({Element::scalar(G)}, e);
    }
    cb.r.notes.push_back("unboundedness probed at the growth bound; not a proof");
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("psi.continuity");
    cb.r.status = CheckStatus::Skipped;
    cb.r.notes.push_back("continuity assumed; not certifiable by finite evaluation");
    out.push_back(cb.r);
  }
  return out;
}

std::vector<CheckResult> certify_monotone(const PartialMetricSpace& space,
                                          const SelfMap& map,
                                          const PartialOrder& order,
                                          const SamplePlan& plan) {
  std::vector<CheckResult> out;
  double eps = plan.eps_ax;
  {
    CheckBuilder cb("map.in_carrier");
    for_each_element(space, plan, "map.in_carrier", cb, [&](const Element& a) {
      try {
        Element image = map.apply(a);
        if (!space.contains(image))
          cb.violation({a},
                       {{"image", image.is_index() ? static_cast<double>(image.index)
                                                   : image.value}},
                       "image leaves the carrier");
      } catch (const std::exception& e) {
        cb.eval_failure({a}, e);
      }
    });
    out.push_back(cb.finish());
  }
  {
    CheckBuilder cb("map.monotone");
    long related = 0;
    long pairs = 0;
    for_each_pair(space, plan, "map.monotone", cb,
                  [&](const Element& a, const Element& b) {
      try {
        ++pairs;
        if (!order.leq(a, b, eps)) return;
        ++related;
        if (!order.leq(map.apply(a), map.apply(b), eps))
          cb.violation({a, b}, {}, "map does not preserve the order");
      } catch (const std::exception& e) {
        cb.eval_failure({a, b}, e);
      }
    });
    cb.r.notes.push_back(std::to_string(related) + " of " + std::to_string(pairs) +
                         " sampled pairs related");
    if (related == 0 && cb.found == 0) cb.r.status = CheckStatus::Skipped;
    out.push_back(cb.finish());
  }
  return out;
}

namespace {

// Shared by the weak-contraction and Banach certifiers so both see the same
// sampled pairs under one seed: the two inequalities are then comparable
// check-for-check.
template <class Bound>
CheckResult contraction_check(std::string name, const PartialMetricSpace& space,
                              const PartialOrder& order, const SelfMap& map,
                              const SamplePlan& plan, Bound&& bound) {
  CheckBuilder cb(std::move(name));
  long comparable = 0;
  long pairs = 0;
  for_each_pair(space, plan, "contraction.pairs", cb,
                [&](const Element& a, const Element& b) {
    try {
      ++pairs;
      if (!order.comparable(a, b, plan.eps_ax)) return;
      ++comparable;
      double d = space.distance(a, b);
      double lhs = space.distance(map.apply(a), map.apply(b));
      double rhs = bound(d);
      if (lhs > rhs + plan.eps_ax)
        cb.violation({a, b}, {{"lhs", lhs}, {"rhs", rhs}, {"p_ab", d}},
                     "contraction inequality fails");
    } catch (const std::exception& e) {
      cb.eval_failure({a, b}, e);
    }
  });
  cb.r.notes.push_back(std::to_string(comparable) + " of " + std::to_string(pairs) +
                       " sampled pairs comparable");
  if (pairs > 0 && comparable * 10 < pairs)
    cb.r.notes.push_back("warning: low comparable coverage, below 10%");
  if (comparable == 0 && cb.found == 0) cb.r.status = CheckStatus::Skipped;
  return cb.finish();
}

}  // namespace

std::vector<CheckResult> certify_weak_contraction(const PartialMetricSpace& space,
                                                  const PartialOrder& order,
                                                  const SelfMap& map,
                                                  const ControlFunction& psi,
                                                  const SamplePlan& plan) {
  std::vector<CheckResult> out;
  out.push_back(contraction_check("contraction.weak", space, order, map, plan,
                                  [&](double d) { return d - psi(d); }));
  return out;
}

std::vector<CheckResult> certify_banach(const PartialMetricSpace& space,
                                        const PartialOrder& order,
                                        const SelfMap& map, double c,
                                        const SamplePlan& plan) {
  if (!(c >= 0.0 && c < 1.0))
    throw DomainError("contraction factor must lie in [0, 1)");
  std::vector<CheckResult> out;
  out.push_back(contraction_check("contraction.banach", space, order, map, plan,
                                  [c](double d) { return c * d; }));
  return out;
}

ControlFunction psi_from_c(double c) {
  if (!(c >= 0.0 && c < 1.0))
    throw DomainError("contraction factor must lie in [0, 1)");
  return ControlFunction(
      Expr::binary(BinaryOp::Mul, Expr::literal(1.0 - c), Expr::variable('t')));
}

std::vector<CheckResult> certify_comparability_hypothesis(
    const PartialMetricSpace& space, const PartialOrder& order,
    const SamplePlan& plan) {
  std::vector<CheckResult> out;
  double eps = plan.eps_ax;
  CheckBuilder cb("order.comparability");
  std::vector<Element> pool;
  if (use_exhaustive(space)) {
    pool.reserve(space.size());
    for (int i = 0; i < space.size(); ++i) pool.push_back(Element::finite(i));
  } else {
    pool = space.sample_elements(64, mix_seed(plan.seed, "order.comparability.pool"));
  }
  for_each_pair(space, plan, "order.comparability", cb,
                [&](const Element& a, const Element& b) {
    try {
      if (order.comparable(a, a, eps) && order.comparable(a, b, eps)) return;
      if (order.comparable(b, a, eps) && order.comparable(b, b, eps)) return;
      for (const Element& z : pool)
        if (order.comparable(z, a, eps) && order.comparable(z, b, eps)) return;
      cb.violation({a, b}, {}, "no sampled point comparable with both");
    } catch (const std::exception& e) {
      cb.eval_failure({a, b}, e);
    }
  });
  cb.r.notes.push_back("mediators drawn from " + std::to_string(pool.size()) +
                       " sampled points plus the pair itself");
  out.push_back(cb.finish());
  return out;
}

std::vector<CheckResult> probe_sequential_continuity(
    const PartialMetricSpace& space, const SelfMap& map,
    const std::vector<ProbeSequence>& sequences, double probe_tol,
    double eps_ax) {
  CheckBuilder plain("continuity.limits");
  CheckBuilder proper("continuity.proper_limits");
  long premises_plain = 0;
  long premises_proper = 0;

  for (const auto& seq : sequences) {
    if (seq.terms.empty())
      throw DomainError("continuity probe needs a non-empty sequence");
    std::size_t K = seq.terms.size();
    std::size_t tail_start = K - std::max<std::size_t>(1, K / 5);
    try {
      const Element& L = seq.limit;
      Element fL = map.apply(L);
      double pLL = space.self_distance(L);
      double pfLfL = space.self_distance(fL);

      bool premise_plain = true;
      bool premise_proper = true;
      for (std::size_t n = tail_start; n < K; ++n) {
        if (std::abs(space.distance(seq.terms[n], L) - pLL) > probe_tol)
          premise_plain = false;
        if (std::abs(space.induced_distance(seq.terms[n], L)) > probe_tol)
          premise_proper = false;
      }
      if (premise_plain) {
        ++premises_plain;
        for (std::size_t n = tail_start; n < K; ++n) {
          ++plain.r.samples_used;
          double gap = std::abs(space.distance(map.apply(seq.terms[n]), fL) - pfLfL);
          if (gap > probe_tol + eps_ax)
            plain.violation({seq.terms[n], L},
                            {{"lhs", gap}, {"rhs", probe_tol}, {"tol", probe_tol}},
                            "image sequence does not track the image limit");
        }
      }
      if (premise_proper) {
        ++premises_proper;
        for (std::size_t n = tail_start; n < K; ++n) {
          ++proper.r.samples_used;
          double gap = std::abs(space.induced_distance(map.apply(seq.terms[n]), fL));
          if (gap > probe_tol + eps_ax)
            proper.violation({seq.terms[n], L},
                             {{"lhs", gap}, {"rhs", probe_tol}, {"tol", probe_tol}},
                             "image sequence not properly convergent to image limit");
        }
      }
    } catch (const std::exception& e) {
      plain.eval_failure({seq.limit}, e);
      proper.eval_failure({seq.limit}, e);
    }
  }

  if (premises_plain == 0 && plain.found == 0) {
    plain.r.status = CheckStatus::Skipped;
    plain.r.notes.push_back("no sequence established the premise");
  }
  if (premises_proper == 0 && proper.found == 0) {
    proper.r.status = CheckStatus::Skipped;
    proper.r.notes.push_back("no sequence established the premise");
  }
  plain.r.notes.push_back("probe over declared sequences; not a proof");
  proper.r.notes.push_back("probe over declared sequences; not a proof");

  std::vector<CheckResult> out;
  out.push_back(plain.finish());
  out.push_back(proper.finish());
  return out;
}

namespace {

std::vector<ProbeSequence> default_probe_sequences(const PartialMetricSpace& space,
                                                   const Element& x0) {
  std::vector<ProbeSequence> out;
  const int K = 200;
  if (space.is_finite()) {
    ProbeSequence s;
    s.limit = x0;
    s.terms.assign(K, x0);
    out.push_back(std::move(s));
    return out;
  }
  auto descending_to = [&](double limit) {
    ProbeSequence s;
    s.limit = Element::scalar(limit);
    double delta = std::min(1.0, (space.upper() - limit) / 2.0);
    for (int n = 1; n <= K; ++n)
      s.terms.push_back(Element::scalar(limit + delta / n));
    return s;
  };
  out.push_back(descending_to(space.lower()));
  out.push_back(descending_to(space.lower() + (space.upper() - space.lower()) / 2.0));
  return out;
}

CheckResult start_condition_check(const ProblemInstance& instance) {
  CheckBuilder cb("start.order_progress");
  cb.r.samples_used = 1;
  try {
    Element fx0 = instance.map.apply(instance.x0);
    if (!instance.order.leq(instance.x0, fx0, instance.eps_ax))
      cb.violation({instance.x0, fx0}, {}, "start point is not below its image");
  } catch (const std::exception& e) {
    cb.eval_failure({instance.x0}, e);
  }
  return cb.finish();
}

}  // namespace

CertificateReport certify_instance(const ProblemInstance& instance) {
  instance.validate();
  SamplePlan plan{instance.sample_count, instance.seed, instance.eps_ax};

  CertificateReport report;
  report.seed = instance.seed;
  report.sample_count = instance.sample_count;

  report.append(certify_partial_metric(instance.space, plan));
  report.append(certify_induced_metric(instance.space, plan));
  report.append(certify_order(instance.space, instance.order, plan));

  if (instance.psi)
    report.append(certify_control_function(*instance.psi, plan));
  else
    report.append(certify_control_function(psi_from_c(*instance.banach_c), plan));

  report.append(certify_monotone(instance.space, instance.map, instance.order, plan));

  if (instance.psi)
    report.append(certify_weak_contraction(instance.space, instance.order,
                                           instance.map, *instance.psi, plan));
  if (instance.banach_c)
    report.append(certify_banach(instance.space, instance.order, instance.map,
                                 *instance.banach_c, plan));

  report.checks.push_back(start_condition_check(instance));
  report.append(certify_comparability_hypothesis(instance.space, instance.order, plan));
  report.append(probe_sequential_continuity(
      instance.space, instance.map,
      default_probe_sequences(instance.space, instance.x0), kDefaultProbeTol,
      instance.eps_ax));
  return report;
}

ReplayContext ReplayContext::of(const ProblemInstance& instance) {
  ReplayContext ctx;
  ctx.space = &instance.space;
  ctx.order = &instance.order;
  ctx.map = &instance.map;
  ctx.psi = instance.psi ? &*instance.psi : nullptr;
  ctx.banach_c = instance.banach_c;
  ctx.eps_ax = instance.eps_ax;
  return ctx;
}

namespace {

const Element& witness_at(const Violation& v, std::size_t i) {
  if (i >= v.witness.size())
    throw DomainError("violation for " + v.check + " is missing witness elements");
  return v.witness[i];
}

const PartialMetricSpace& need_space(const ReplayContext& ctx) {
  if (!ctx.space) throw DomainError("replay needs a space");
  return *ctx.space;
}

const PartialOrder& need_order(const ReplayContext& ctx) {
  if (!ctx.order) throw DomainError("replay needs an order");
  return *ctx.order;
}

const SelfMap& need_map(const ReplayContext& ctx) {
  if (!ctx.map) throw DomainError("replay needs a map");
  return *ctx.map;
}

}  // namespace

bool replay_violation(const Violation& v, const ReplayContext& ctx) {
  const std::string& c = v.check;
  double eps = ctx.eps_ax;

  if (c == "pm.p1") {
    const auto& s = need_space(ctx);
    const Element& a = witness_at(v, 0);
    const Element& b = witness_at(v, 1);
    double paa = s.self_distance(a), pbb = s.self_distance(b), pab = s.distance(a, b);
    bool equal = std::abs(paa - pab) <= eps && std::abs(pbb - pab) <= eps;
    bool ident = s.identical(a, b, eps);
    return equal != ident;
  }
  if (c == "pm.p2") {
    const auto& s = need_space(ctx);
    return s.self_distance(witness_at(v, 0)) >
           s.distance(witness_at(v, 0), witness_at(v, 1)) + eps;
  }
  if (c == "pm.p3") {
    const auto& s = need_space(ctx);
    return std::abs(s.distance(witness_at(v, 0), witness_at(v, 1)) -
                    s.distance(witness_at(v, 1), witness_at(v, 0))) > eps;
  }
  if (c == "pm.p4") {
    const auto& s = need_space(ctx);
    const Element& a = witness_at(v, 0);
    const Element& b = witness_at(v, 1);
    const Element& z = witness_at(v, 2);
    return s.distance(a, b) >
           s.distance(a, z) + s.distance(z, b) - s.self_distance(z) + eps;
  }
  if (c == "induced.self_zero") {
    const auto& s = need_space(ctx);
    return std::abs(s.induced_distance(witness_at(v, 0), witness_at(v, 0))) > eps;
  }
  if (c == "induced.symmetry") {
    const auto& s = need_space(ctx);
    return std::abs(s.induced_distance(witness_at(v, 0), witness_at(v, 1)) -
                    s.induced_distance(witness_at(v, 1), witness_at(v, 0))) > eps;
  }
  if (c == "induced.triangle") {
    const auto& s = need_space(ctx);
    const Element& a = witness_at(v, 0);
    const Element& b = witness_at(v, 1);
    const Element& z = witness_at(v, 2);
    return s.induced_distance(a, b) >
           s.induced_distance(a, z) + s.induced_distance(z, b) + eps;
  }
  if (c == "induced.separation") {
    const auto& s = need_space(ctx);
    const Element& a = witness_at(v, 0);
    const Element& b = witness_at(v, 1);
    return s.induced_distance(a, b) <= eps && !s.identical(a, b, eps);
  }
  if (c == "order.reflexive")
    return !need_order(ctx).leq(witness_at(v, 0), witness_at(v, 0), eps);
  if (c == "order.antisymmetric") {
    const auto& o = need_order(ctx);
    const auto& s = need_space(ctx);
    const Element& a = witness_at(v, 0);
    const Element& b = witness_at(v, 1);
    return o.leq(a, b, eps) && o.leq(b, a, eps) && !s.identical(a, b, eps);
  }
  if (c == "order.transitive") {
    const auto& o = need_order(ctx);
    return o.leq(witness_at(v, 0), witness_at(v, 1), eps) &&
           o.leq(witness_at(v, 1), witness_at(v, 2), eps) &&
           !o.leq(witness_at(v, 0), witness_at(v, 2), eps);
  }
  if (c == "order.comparability")
    return !need_order(ctx).comparable(witness_at(v, 0), witness_at(v, 1), eps);
  if (c == "psi.zero_at_zero") {
    if (!ctx.psi) throw DomainError("replay needs a control function");
    return (*ctx.psi)(0.0) != 0.0;
  }
  if (c == "psi.positive") {
    if (!ctx.psi) throw DomainError("replay needs a control function");
    double t = witness_at(v, 0).value;
    return t > 0.0 && (*ctx.psi)(t) <= 0.0;
  }
  if (c == "psi.nondecreasing") {
    if (!ctx.psi) throw DomainError("replay needs a control function");
    return (*ctx.psi)(witness_at(v, 0).value) >
           (*ctx.psi)(witness_at(v, 1).value) + eps;
  }
  if (c == "psi.growth") {
    if (!ctx.psi) throw DomainError("replay needs a control function");
    double threshold = v.value("threshold").value_or(1.0);
    return (*ctx.psi)(witness_at(v, 0).value) < threshold;
  }
  if (c == "map.in_carrier")
    return !need_space(ctx).contains(need_map(ctx).apply(witness_at(v, 0)));
  if (c == "map.monotone") {
    const auto& o = need_order(ctx);
    const auto& m = need_map(ctx);
    const Element& a = witness_at(v, 0);
    const Element& b = witness_at(v, 1);
    return o.leq(a, b, eps) && !o.leq(m.apply(a), m.apply(b), eps);
  }
  if (c == "contraction.weak") {
    const auto& s = need_space(ctx);
    const auto& m = need_map(ctx);
    const Element& a = witness_at(v, 0);
    const Element& b = witness_at(v, 1);
    std::optional<ControlFunction> derived;
    const ControlFunction* psi = ctx.psi;
    if (!psi && ctx.banach_c) {
      derived = psi_from_c(*ctx.banach_c);
      psi = &*derived;
    }
    if (!psi) throw DomainError("replay needs a control function");
    if (!need_order(ctx).comparable(a, b, eps)) return false;
    double d = s.distance(a, b);
    return s.distance(m.apply(a), m.apply(b)) > d - (*psi)(d) + eps;
  }
  if (c == "contraction.banach") {
    if (!ctx.banach_c) throw DomainError("replay needs a contraction factor");
    const auto& s = need_space(ctx);
    const auto& m = need_map(ctx);
    const Element& a = witness_at(v, 0);
    const Element& b = witness_at(v, 1);
    if (!need_order(ctx).comparable(a, b, eps)) return false;
    return s.distance(m.apply(a), m.apply(b)) > *ctx.banach_c * s.distance(a, b) + eps;
  }
  if (c == "start.order_progress") {
    const Element& a = witness_at(v, 0);
    return !need_order(ctx).leq(a, need_map(ctx).apply(a), eps);
  }
  if (c == "continuity.limits") {
    const auto& s = need_space(ctx);
    const auto& m = need_map(ctx);
    double tol = v.value("tol").value_or(kDefaultProbeTol);
    Element fL = m.apply(witness_at(v, 1));
    return std::abs(s.distance(m.apply(witness_at(v, 0)), fL) -
                    s.self_distance(fL)) > tol + eps;
  }
  if (c == "continuity.proper_limits") {
    const auto& s = need_space(ctx);
    const auto& m = need_map(ctx);
    double tol = v.value("tol").value_or(kDefaultProbeTol);
    return std::abs(s.induced_distance(m.apply(witness_at(v, 0)),
                                       m.apply(witness_at(v, 1)))) > tol + eps;
  }
  if (c == "solve.descent") {
    const auto& s = need_space(ctx);
    std::optional<ControlFunction> derived;
    const ControlFunction* psi = ctx.psi;
    if (!psi && ctx.banach_c) {
      derived = psi_from_c(*ctx.banach_c);
      psi = &*derived;
    }
    if (!psi) throw DomainError("replay needs a control function");
    double rho_prev = s.distance(witness_at(v, 1), witness_at(v, 0));
    double rho = s.distance(witness_at(v, 2), witness_at(v, 1));
    return rho > rho_prev - (*psi)(rho_prev) + eps;
  }
  if (c == "solve.confinement") {
    const auto& s = need_space(ctx);
    double bound = v.value("eps").value_or(0.0);
    return s.distance(witness_at(v, 0), witness_at(v, 1)) > bound + eps;
  }
  if (c == "solve.order_limit")
    return !need_order(ctx).leq(witness_at(v, 0), witness_at(v, 1), eps);
  if (c == "solve.uniqueness") {
    const auto& s = need_space(ctx);
    double tol = v.value("tol").value_or(0.0);
    return s.distance(witness_at(v, 0), witness_at(v, 1)) > tol ||
           !s.identical(witness_at(v, 0), witness_at(v, 1), eps);
  }
  throw DomainError("check '" + c + "' has no isolated replay");
}

namespace {

// Two order-incomparable chains, each collapsing onto its own anchor, with
// distances |v_i - v_j| for values spaced so every same-chain step at least
// halves the gap. Everything except the mediator hypothesis holds, and two
// distinct zero-self-distance fixed points exist.
std::optional<Violation> search_without_comparability(const ProblemInstance& seed_from,
                                                      long budget) {
  for (long attempt = 0; attempt < budget; ++attempt) {
    std::mt19937_64 g(mix_seed(seed_from.seed + static_cast<std::uint64_t>(attempt),
                               "search.comparability"));
    int na = 1 + static_cast<int>(bounded(g, 4));
    int nb = 1 + static_cast<int>(bounded(g, 4));
    int n = na + nb;
    double base_a = static_cast<double>(bounded(g, 10));
    double base_b = base_a + 50.0 + static_cast<double>(bounded(g, 10));

    std::vector<double> v(n);
    for (int i = 0; i < na; ++i) v[i] = base_a + std::ldexp(1.0, i) - 1.0;
    for (int i = 0; i < nb; ++i) v[na + i] = base_b + std::ldexp(1.0, i) - 1.0;

    std::vector<std::vector<double>> p(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p[i][j] = std::abs(v[i] - v[j]);

    auto block = [na](int i) { return i < na ? 0 : 1; };
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        rel[i][j] = block(i) == block(j) && i >= j;

    std::vector<int> f(n);
    for (int i = 0; i < n; ++i)
      f[i] = block(i) == 0 ? std::max(i - 1, 0) : std::max(i - 1, na);

    ProblemInstance cand;
    cand.space = PartialMetricSpace::finite(p);
    cand.order = PartialOrder::finite(rel);
    cand.map = SelfMap::finite(f);
    cand.psi = ControlFunction(
        Expr::binary(BinaryOp::Mul, Expr::literal(0.5), Expr::variable('t')));
    cand.x0 = Element::finite(na - 1);
    cand.seed = seed_from.seed;
    cand.sample_count = seed_from.sample_count;
    cand.eps_ax = seed_from.eps_ax;

    CertificateReport rep = certify_instance(cand);
    bool only_comparability_fails = true;
    bool comparability_fails = false;
    for (const auto& check : rep.checks) {
      if (check.status != CheckStatus::Fail) continue;
      if (check.name == "order.comparability")
        comparability_fails = true;
      else
        only_comparability_fails = false;
    }
    if (!comparability_fails || !only_comparability_fails) continue;

    auto walk = [&](int start) {
      int at = start;
      for (int step = 0; step < n + 1; ++step) at = f[at];
      return at;
    };
    int ua = walk(na - 1);
    int ub = walk(n - 1);
    if (ua == ub) continue;
    double gap = p[ua][ub];
    if (gap <= cand.tol) continue;
    return Violation{
        "search.comparability",
        {Element::finite(ua), Element::finite(ub)},
        {{"p_u1_u2", gap}, {"carrier_size", static_cast<double>(n)}},
        "two distinct fixed points exist once the mediator hypothesis is dropped "
        "(attempt " + std::to_string(attempt) + ")"};
  }
  return std::nullopt;
}

// Identity map with a vanishing control function: the orbit is constant at a
// point of positive self-distance, never meeting the stopping rule.
std::optional<Violation> search_without_positivity(const ProblemInstance& seed_from,
                                                   long budget) {
  SelfMap identity =
      seed_from.space.is_finite()
          ? SelfMap::finite([&] {
              std::vector<int> t(seed_from.space.size());
              std::iota(t.begin(), t.end(), 0);
              return t;
            }())
          : SelfMap::scalar(Expr::variable('t'));
  ControlFunction flat(Expr::literal(0.0));

  for (long attempt = 0; attempt < budget; ++attempt) {
    auto points = seed_from.space.sample_elements(
        64, mix_seed(seed_from.seed + static_cast<std::uint64_t>(attempt),
                     "search.psi_positivity"));
    for (const Element& a : points) {
      double self = seed_from.space.self_distance(a);
      if (self <= seed_from.tol) continue;
      if (!seed_from.order.leq(a, identity.apply(a), seed_from.eps_ax)) continue;
      if (flat(1.0) > 0.0) continue;
      return Violation{
          "search.psi_positivity",
          {a},
          {{"rho", self}, {"psi_at_1", flat(1.0)}},
          "with positivity dropped the identity orbit stalls at constant step "
          "distance and never converges (attempt " + std::to_string(attempt) + ")"};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> search_counterexample(const ProblemInstance& instance,
                                               std::string_view mutation,
                                               long budget) {
  if (budget < 1) throw DomainError("search budget must be at least 1");
  if (mutation == "comparability")
    return search_without_comparability(instance, budget);
  if (mutation == "psi_positivity")
    return search_without_positivity(instance, budget);
  throw DomainError("unknown mutation '" + std::string(mutation) + "'");
}

}  // namespace ordfix
