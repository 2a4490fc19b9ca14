#pragma once

#include <vector>

#include "ordfix/gallery.hpp"
#include "ordfix/report.hpp"

namespace ordfix {

// Exit codes shared by the library entry points and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoConvergence = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  ReportDocument report;
};

// Runs every applicable certifier. Exit 0 when no check fails.
RunOutcome run_certify(const ProblemInstance& instance);

// Certifies first (solving is refused only when x0 <=_X f(x0) fails), then
// iterates from x0 and any extra starts, with trace diagnostics and the
// multi-start uniqueness cross-check.
RunOutcome run_solve(const ProblemInstance& instance,
                     const std::vector<Element>& extra_starts = {});

// Certify + solve a gallery entry and compare against its expected result.
RunOutcome run_gallery_entry(const GalleryEntry& entry);

}  // namespace ordfix
