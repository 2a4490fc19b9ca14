#include "ordfix/runner.hpp"

#include <cmath>
#include <sstream>

#include "ordfix/expr.hpp"

namespace ordfix {

namespace {

// Checks that do not gate existence: comparability only affects uniqueness,
// and the continuity probes are evidence, not hypotheses that can fail hard.
bool advisory_check(std::string_view name) {
  return name == "order.comparability" || name == "continuity.limits" ||
         name == "continuity.proper_limits";
}

struct FailureSplit {
  std::vector<std::string> binding;
  std::vector<std::string> advisory;
  long passed = 0;
  long skipped = 0;
};

FailureSplit split_failures(const std::vector<CheckResult>& checks) {
  FailureSplit split;
  for (const CheckResult& check : checks) {
    switch (check.status) {
      case CheckStatus::Pass:
        ++split.passed;
        break;
      case CheckStatus::Skipped:
        ++split.skipped;
        break;
      case CheckStatus::Fail:
        (advisory_check(check.name) ? split.advisory : split.binding)
            .push_back(check.name);
        break;
    }
  }
  return split;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

void echo_instance(ReportDocument& doc, const ProblemInstance& instance,
                   const char* kind) {
  doc.label = instance.label;
  doc.kind = kind;
  doc.seed = instance.seed;
  doc.samples = instance.sample_count;
  doc.tol = instance.tol;
}

}  // namespace

RunOutcome run_certify(const ProblemInstance& instance) {
  RunOutcome out;
  echo_instance(out.report, instance, "certify");
  CertificateReport rep = certify_instance(instance);
  out.report.certificates = std::move(rep.checks);

  const FailureSplit split = split_failures(out.report.certificates);
  std::ostringstream verdict;
  if (split.binding.empty()) {
    verdict << "all hypothesis checks passed (" << split.passed << " passed, "
            << split.skipped << " skipped)";
    out.exit_code = kExitOk;
  } else {
    verdict << "violations found in: " << join(split.binding);
    out.exit_code = kExitViolation;
  }
  if (!split.advisory.empty()) {
    verdict << "; advisory failures: " << join(split.advisory);
  }
  out.report.verdict = verdict.str();
  return out;
}

RunOutcome run_solve(const ProblemInstance& instance,
                     const std::vector<Element>& extra_starts) {
  RunOutcome out;
  echo_instance(out.report, instance, "solve");
  CertificateReport rep = certify_instance(instance);
  out.report.certificates = std::move(rep.checks);

  const CheckResult* start_check = [&]() -> const CheckResult* {
    for (const CheckResult& c : out.report.certificates) {
      if (c.name == "start.order_progress") return &c;
    }
    return nullptr;
  }();
  if (start_check && start_check->status == CheckStatus::Fail) {
    out.report.verdict = "refused: start point is not below its image in the order";
    out.exit_code = kExitViolation;
    return out;
  }

  std::vector<Element> starts{instance.x0};
  starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());

  bool all_converged = true;
  try {
    if (starts.size() == 1) {
      SolveResult result = picard_solve(instance);
      all_converged = result.fixed_point.has_value();
      out.report.diagnostics = result.certificates.checks;
      out.report.solves.push_back(make_solve_section(instance.x0, result));
    } else {
      UniquenessResult uq = uniqueness_cross_check(instance, starts);
      if (uq.runs.empty()) {
        out.report.diagnostics.push_back(uq.check);
        out.report.verdict = "refused: no admissible start";
        out.exit_code = kExitViolation;
        return out;
      }
      for (const auto& [start, result] : uq.runs) {
        if (!result.fixed_point) all_converged = false;
        out.report.solves.push_back(make_solve_section(start, result));
      }
      out.report.diagnostics = uq.runs.front().second.certificates.checks;
      out.report.diagnostics.push_back(uq.check);
    }
  } catch (const HypothesisError& e) {
    out.report.verdict = std::string("refused: ") + e.what();
    out.exit_code = kExitViolation;
    return out;
  } catch (const EvalError& e) {
    out.report.verdict = std::string("evaluation failed during solve: ") + e.what();
    out.exit_code = kExitViolation;
    return out;
  } catch (const DomainError& e) {
    out.report.verdict = std::string("domain error during solve: ") + e.what();
    out.exit_code = kExitViolation;
    return out;
  }

  FailureSplit split = split_failures(out.report.certificates);
  for (const CheckResult& check : out.report.diagnostics) {
    if (check.status == CheckStatus::Fail) split.binding.push_back(check.name);
  }

  std::ostringstream verdict;
  if (!split.binding.empty()) {
    out.exit_code = kExitViolation;
    verdict << "violations found in: " << join(split.binding);
  } else if (!all_converged) {
    out.exit_code = kExitNoConvergence;
    verdict << "no fixed point within the iteration budget";
    for (const SolveSection& s : out.report.solves) {
      if (!s.fixed_point) {
        verdict << " (start " << s.start.describe() << ": "
                << to_string(s.status) << ")";
        break;
      }
    }
  } else {
    out.exit_code = kExitOk;
    // cluster by indistinguishability at tolerance, not by printed text:
    // scalar runs land on slightly different approximations of the same point
    std::vector<Element> reps;
    std::vector<std::string> distinct;
    for (const SolveSection& s : out.report.solves) {
      bool seen = false;
      for (const Element& r : reps) {
        seen = seen || instance.space.identical(*s.fixed_point, r, instance.tol);
      }
      if (!seen) {
        reps.push_back(*s.fixed_point);
        distinct.push_back(s.fixed_point->describe());
      }
    }
    if (distinct.size() == 1) {
      const SolveSection& s = out.report.solves.front();
      verdict << "fixed point u=" << distinct.front()
              << " (residual=" << format_real(s.residual)
              << ", self=" << format_real(s.self_distance) << ")";
      if (out.report.solves.size() > 1) {
        verdict << " agreed across " << out.report.solves.size() << " starts";
      }
      verdict << "; all checks passed";
    } else {
      verdict << "distinct fixed points: " << join(distinct)
              << "; uniqueness needs the comparability hypothesis";
    }
  }
  if (!split.advisory.empty()) {
    verdict << "; advisory failures: " << join(split.advisory);
  }
  out.report.verdict = verdict.str();
  return out;
}

RunOutcome run_gallery_entry(const GalleryEntry& entry) {
  RunOutcome out = run_solve(entry.instance);
  out.report.kind = "gallery";
  if (!entry.name.empty()) out.report.label = entry.name;
  if (!entry.expected) return out;

  const SolveSection* primary =
      out.report.solves.empty() ? nullptr : &out.report.solves.front();
  if (!primary || !primary->fixed_point) {
    out.report.verdict += "; catalog result not reached";
    if (out.exit_code == kExitOk) out.exit_code = kExitNoConvergence;
    return out;
  }
  const bool point_ok = entry.instance.space.identical(
      *primary->fixed_point, entry.expected->fixed_point, entry.instance.tol);
  const bool self_ok =
      std::abs(primary->self_distance - entry.expected->self_distance) <=
      entry.instance.tol;
  if (point_ok && self_ok) {
    out.report.verdict += "; matches the catalog result";
  } else {
    out.report.verdict += "; MISMATCH with the catalog result (expected u=" +
                          entry.expected->fixed_point.describe() + ", self=" +
                          format_real(entry.expected->self_distance) + ")";
    out.exit_code = kExitViolation;
  }
  return out;
}

}  // namespace ordfix
