#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordfix/certify.hpp"
#include "ordfix/solve.hpp"

namespace ordfix {

// Fixed 17-significant-digit rendering; the same value always produces the
// same bytes, which is what makes reports reproducible.
std::string format_real(double v);

struct TraceRow {
  long n = 0;
  Element point;
  std::optional<double> rho;
  double self_dist = 0.0;
};

struct SolveSection {
  Element start;
  SolveStatus status = SolveStatus::MaxIterExceeded;
  long iterations = 0;
  std::optional<Element> fixed_point;
  double residual = 0.0;
  double self_distance = 0.0;
  std::vector<TraceRow> head_rows;  // first 10 steps
  std::vector<TraceRow> tail_rows;  // last 10 steps, when distinct
  long trace_length = 0;            // total recorded steps
};

// The full structured output of a run: instance echo, certificate section,
// solve sections with trace excerpts, and a one-line verdict. Rendering is
// byte-stable: fixed field order and fixed numeric formatting.
struct ReportDocument {
  std::string label;
  std::string kind;
  std::uint64_t seed = 0;
  long samples = 0;
  double tol = 0.0;
  std::vector<CheckResult> certificates;
  std::vector<CheckResult> diagnostics;  // trace-level checks
  std::vector<SolveSection> solves;
  std::string verdict;

  std::string to_text(bool quiet = false) const;
  std::string to_json_text() const;
};

SolveSection make_solve_section(const Element& start, const SolveResult& result);

}  // namespace ordfix
