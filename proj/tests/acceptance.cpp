// Final gate: re-derives every quantitative claim end to end and prints one
// pass/fail line per criterion. Everything is run twice; the last criterion
// demands byte-identical transcripts of the first nine.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "ordfix/gallery.hpp"
#include "ordfix/instance_io.hpp"
#include "ordfix/runner.hpp"

using namespace ordfix;

namespace {

struct CritResult {
  bool ok = false;
  std::string detail;      // shown on the criterion line
  std::string transcript;  // must be byte-identical across runs
};

std::filesystem::path instance_dir() {
  if (const char* env = std::getenv("ORDFIX_INSTANCE_DIR")) return env;
  return std::filesystem::path(__FILE__).parent_path().parent_path() / "instances";
}

std::string cli_binary() {
  if (const char* env = std::getenv("ORDFIX_CLI_BIN")) return env;
  return "./ordfix";
}

struct Shell {
  int exit_code = -1;
  std::string output;
};

Shell run_command(const std::string& cmd) {
  Shell r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ProblemInstance load_max_half() {
  return load_instance(instance_dir() / "max_half.json");
}

GalleryEntry seeded_random_entry(std::uint64_t seed) {
  return random_finite_instance(1 + static_cast<int>(seed % 16), seed);
}

// 1. the worked example through the CLI: convergence numbers and runtime
CritResult criterion1(int run) {
  CritResult r;
  const std::filesystem::path report_path =
      std::filesystem::temp_directory_path() /
      ("ordfix_accept_c1_run" + std::to_string(run) + ".json");
  const std::string cmd = cli_binary() + " solve " +
                          (instance_dir() / "max_half.json").string() +
                          " --quiet --report " + report_path.string();
  const auto t0 = std::chrono::steady_clock::now();
  const Shell shell = run_command(cmd);
  const double elapsed = seconds_since(t0);
  if (shell.exit_code != 0) {
    r.detail = "cli exit " + std::to_string(shell.exit_code);
    return r;
  }
  try {
    const nlohmann::json doc = nlohmann::json::parse(slurp(report_path));
    const auto& solve = doc.at("solves").at(0);
    const long iters = solve.at("iterations").get<long>();
    const double u =
        std::strtod(solve.at("fixed_point").get<std::string>().c_str(), nullptr);
    const double residual =
        std::strtod(solve.at("residual").get<std::string>().c_str(), nullptr);
    const double self =
        std::strtod(solve.at("self_distance").get<std::string>().c_str(), nullptr);
    r.ok = solve.at("status") == "converged" && iters <= 40 &&
           std::fabs(u) <= 1e-9 && residual <= 1e-9 && self <= 1e-9 &&
           elapsed < 1.0;
    std::ostringstream d;
    d << "u=" << u << " in " << iters << " iterations, " << residual
      << " residual, " << elapsed << " s";
    r.detail = d.str();
  } catch (const std::exception& e) {
    r.detail = std::string("report unreadable: ") + e.what();
    return r;
  }
  r.transcript = slurp(report_path);
  std::filesystem::remove(report_path);
  return r;
}

// 2. full certificate suite at 10^4 samples, stable across three seeds
CritResult criterion2() {
  CritResult r;
  std::ostringstream transcript;
  std::map<std::string, std::string> statuses;
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed : {1, 2, 3}) {
    ProblemInstance inst = load_max_half();
    inst.sample_count = 10000;
    inst.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    CertificateReport rep = certify_instance(inst);
    const double elapsed = seconds_since(t0);
    if (elapsed >= 5.0) {
      ok = false;
      detail = "too slow";
    }
    for (const CheckResult& c : rep.checks) {
      if (c.status == CheckStatus::Fail) {
        ok = false;
        detail = c.name + " failed at seed " + std::to_string(seed);
      }
      transcript << seed << " " << c.name << " " << to_string(c.status) << "\n";
      auto it = statuses.find(c.name);
      if (it == statuses.end()) {
        statuses[c.name] = std::string(to_string(c.status));
      } else if (it->second != to_string(c.status)) {
        ok = false;
        detail = c.name + " unstable across seeds";
      }
    }
  }
  r.ok = ok;
  r.detail = ok ? std::to_string(statuses.size()) + " checks stable over seeds 1..3"
              : detail;
  r.transcript = transcript.str();
  return r;
}

// 3. the per-step descent inequality with a 1e-12 slack
CritResult criterion3() {
  CritResult r;
  ProblemInstance inst = load_max_half();
  SolveResult sr = picard_solve(inst);
  const ControlFunction& psi = *inst.psi;
  std::ostringstream transcript;
  r.ok = !sr.trace.rho.empty();
  for (std::size_t n = 0; n < sr.trace.rho.size(); ++n) {
    transcript << sr.trace.rho[n] << "\n";
    if (n == 0) continue;
    const double bound = sr.trace.rho[n - 1] - psi(sr.trace.rho[n - 1]) + 1e-12;
    if (sr.trace.rho[n] > bound) {
      r.ok = false;
      r.detail = "violated at step " + std::to_string(n);
    }
  }
  if (r.ok) {
    r.detail = "holds at all " + std::to_string(sr.trace.rho.size()) + " steps";
  }
  r.transcript = transcript.str();
  return r;
}

// 4. orbit confinement for eps = 0.1 lands at step 7
CritResult criterion4() {
  CritResult r;
  ProblemInstance inst = load_max_half();
  SolveResult sr = picard_solve(inst);
  CheckResult conf = orbit_confinement_check(sr.trace, inst.space, *inst.psi, 0.1);
  double n0 = -1.0;
  double threshold = -1.0;
  for (const auto& [name, value] : conf.values) {
    if (name == "n0") n0 = value;
    if (name == "threshold") threshold = value;
  }
  bool stays = true;
  const Element& anchor = sr.trace.points[7];
  for (std::size_t n = 7; n < sr.trace.points.size(); ++n) {
    if (inst.space.distance(sr.trace.points[n], anchor) > 0.1) stays = false;
  }
  r.ok = conf.status == CheckStatus::Pass && n0 == 7.0 && threshold == 0.0125 && stays;
  std::ostringstream d;
  d << "n0=" << n0 << ", threshold=" << threshold;
  r.detail = d.str();
  r.transcript = d.str();
  return r;
}

// 5. induced metric axioms hold exhaustively on 100 generated instances
CritResult criterion5() {
  CritResult r;
  std::ostringstream transcript;
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GalleryEntry entry = seeded_random_entry(seed);
    SamplePlan plan;
    plan.seed = seed;
    bool all = true;
    for (const CheckResult& c : certify_partial_metric(entry.instance.space, plan)) {
      all = all && c.exhaustive && c.status == CheckStatus::Pass;
    }
    if (!all) {
      ++failures;  // instance outside the criterion's precondition
      continue;
    }
    for (const CheckResult& c : certify_induced_metric(entry.instance.space, plan)) {
      all = all && c.exhaustive && c.status == CheckStatus::Pass;
    }
    if (!all) ++failures;
    transcript << seed << " " << (all ? "ok" : "FAIL") << "\n";
  }
  r.ok = failures == 0;
  r.detail = "100 instances, " + std::to_string(failures) + " failures";
  r.transcript = transcript.str();
  return r;
}

// 6. Banach constant 1/2 and its translated control function agree
CritResult criterion6() {
  CritResult r;
  ProblemInstance inst = load_max_half();
  std::ostringstream transcript;
  int disagreements = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SamplePlan plan;
    plan.sample_count = inst.sample_count;
    plan.seed = seed;
    plan.eps_ax = inst.eps_ax;
    std::vector<CheckResult> weak = certify_weak_contraction(
        inst.space, inst.order, inst.map, psi_from_c(0.5), plan);
    std::vector<CheckResult> banach =
        certify_banach(inst.space, inst.order, inst.map, 0.5, plan);
    bool agree = weak.size() == banach.size();
    for (std::size_t i = 0; agree && i < weak.size(); ++i) {
      agree = weak[i].status == banach[i].status &&
              weak[i].samples_used == banach[i].samples_used &&
              weak[i].violations.size() == banach[i].violations.size() &&
              weak[i].notes == banach[i].notes;
    }
    if (!agree) ++disagreements;
    transcript << seed << " " << (agree ? "agree" : "DISAGREE") << "\n";
  }
  r.ok = disagreements == 0;
  r.detail = "100 sample sets, " + std::to_string(disagreements) + " disagreements";
  r.transcript = transcript.str();
  return r;
}

// 7. one fixed point from three starts, pairwise within 1e-8
CritResult criterion7() {
  CritResult r;
  ProblemInstance inst = load_max_half();
  const std::vector<Element> starts = {Element::scalar(1.0), Element::scalar(10.0),
                                       Element::scalar(123.4)};
  UniquenessResult uq = uniqueness_cross_check(inst, starts);
  bool ok = uq.applicable && uq.check.status == CheckStatus::Pass &&
            uq.fixed_points.size() == 3;
  double worst = 0.0;
  std::ostringstream transcript;
  for (std::size_t i = 0; i < uq.fixed_points.size(); ++i) {
    transcript << uq.fixed_points[i].describe() << "\n";
    for (std::size_t j = i + 1; j < uq.fixed_points.size(); ++j) {
      worst = std::max(worst,
                       inst.space.distance(uq.fixed_points[i], uq.fixed_points[j]));
    }
  }
  ok = ok && worst <= 1e-8;
  r.ok = ok;
  std::ostringstream d;
  d << uq.fixed_points.size() << " starts, worst pairwise distance " << worst;
  r.detail = d.str();
  r.transcript = transcript.str();
  return r;
}

// 8. the two shipped counterexample fixtures detect what they should
CritResult criterion8() {
  CritResult r;
  std::ostringstream transcript;

  ProblemInstance ident = load_instance(instance_dir() / "identity_psi.json");
  RunOutcome cert = run_certify(ident);
  transcript << cert.report.to_json_text();
  const CheckResult* weak = nullptr;
  for (const CheckResult& c : cert.report.certificates) {
    if (c.name == "contraction.weak") weak = &c;
  }
  bool ident_ok = cert.exit_code == kExitViolation && weak &&
                  weak->status == CheckStatus::Fail && !weak->violations.empty();
  if (ident_ok) {
    const ReplayContext ctx = ReplayContext::of(ident);
    for (const Violation& v : weak->violations) {
      ident_ok = ident_ok && replay_violation(v, ctx);
    }
  }

  ProblemInstance anti = load_instance(instance_dir() / "antichain_pair.json");
  RunOutcome solved = run_solve(anti, {Element::finite(1)});
  transcript << solved.report.to_json_text();
  bool comp_failed = false;
  for (const CheckResult& c : solved.report.certificates) {
    if (c.name == "order.comparability") comp_failed = c.status == CheckStatus::Fail;
  }
  bool anti_ok = solved.report.solves.size() == 2 && comp_failed;
  if (anti_ok) {
    const auto& a = solved.report.solves[0].fixed_point;
    const auto& b = solved.report.solves[1].fixed_point;
    anti_ok = a.has_value() && b.has_value() && a->index != b->index;
  }

  r.ok = ident_ok && anti_ok;
  r.detail = std::string("replayed weak-contraction witness: ") +
             (ident_ok ? "yes" : "no") + "; two distinct fixed points: " +
             (anti_ok ? "yes" : "no");
  r.transcript = transcript.str();
  return r;
}

// 9. solver result equals the brute-force orbit walk on 100 instances
CritResult criterion9() {
  CritResult r;
  std::ostringstream transcript;
  int mismatches = 0;
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GalleryEntry entry = seeded_random_entry(seed);
    std::optional<int> walked = oracle::orbit_fixed_point(
        entry.instance.map.table(), entry.instance.x0.index);
    if (!walked) continue;  // oracle found no fixed orbit point
    ++compared;
    SolveResult sr = picard_solve(entry.instance);
    const bool match = sr.fixed_point.has_value() && sr.fixed_point->index == *walked;
    if (!match) ++mismatches;
    transcript << seed << " " << *walked << " "
               << (sr.fixed_point ? sr.fixed_point->describe() : "none") << "\n";
  }
  r.ok = mismatches == 0 && compared > 0;
  r.detail = std::to_string(compared) + " compared, " +
             std::to_string(mismatches) + " mismatches";
  r.transcript = transcript.str();
  return r;
}

std::vector<CritResult> run_all(int run) {
  std::vector<CritResult> out;
  out.push_back(criterion1(run));
  out.push_back(criterion2());
  out.push_back(criterion3());
  out.push_back(criterion4());
  out.push_back(criterion5());
  out.push_back(criterion6());
  out.push_back(criterion7());
  out.push_back(criterion8());
  out.push_back(criterion9());
  return out;
}

}  // namespace

int main() {
  const std::vector<CritResult> first = run_all(1);
  const std::vector<CritResult> second = run_all(2);

  bool all_ok = true;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const bool ok = first[i].ok && second[i].ok;
    all_ok = all_ok && ok;
    std::cout << "criterion " << (i + 1) << ": " << (ok ? "PASS" : "FAIL") << " — "
              << first[i].detail << "\n";
  }

  bool deterministic = true;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i].transcript != second[i].transcript) {
      deterministic = false;
      std::cout << "criterion 10: transcript of criterion " << (i + 1)
                << " differs between runs\n";
    }
  }
  all_ok = all_ok && deterministic;
  std::cout << "criterion 10: " << (deterministic ? "PASS" : "FAIL")
            << " — byte-identical transcripts across two runs of 1-9\n";

  return all_ok ? 0 : 1;
}
