#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ordfix/instance_io.hpp"
#include "ordfix/runner.hpp"

namespace {

using namespace ordfix;

struct CommonOpts {
  std::optional<std::uint64_t> seed;
  std::optional<long> samples;
  std::optional<double> tol;
  std::optional<long> max_iter;
  std::string report_path;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "Sampling seed override");
  cmd->add_option("--samples", opts.samples, "Samples per check override");
  cmd->add_option("--tol", opts.tol, "Tolerance override");
  cmd->add_option("--max-iter", opts.max_iter, "Iteration budget override");
  cmd->add_option("--report", opts.report_path, "Also write the JSON report here");
  cmd->add_flag("--quiet", opts.quiet, "Drop trace rows from the text output");
}

void apply_overrides(ProblemInstance& instance, const CommonOpts& opts) {
  if (opts.seed) instance.seed = *opts.seed;
  if (opts.samples) instance.sample_count = *opts.samples;
  if (opts.tol) instance.tol = *opts.tol;
  if (opts.max_iter) instance.max_iter = *opts.max_iter;
}

int emit(const RunOutcome& outcome, const CommonOpts& opts) {
  std::cout << outcome.report.to_text(opts.quiet);
  if (!opts.report_path.empty()) {
    std::ofstream out(opts.report_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write report to '" << opts.report_path << "'\n";
      return kExitUsage;
    }
    out << outcome.report.to_json_text();
  }
  return outcome.exit_code;
}

// Extra starts arrive as numbers; finite carriers want indices.
std::vector<Element> convert_starts(const ProblemInstance& instance,
                                    const std::vector<double>& raw) {
  std::vector<Element> out;
  for (double v : raw) {
    if (instance.space.is_finite()) {
      const long idx = std::lround(v);
      if (static_cast<double>(idx) != v) {
        throw ValidationError("--start",
                              "finite carriers take integer start indices");
      }
      out.push_back(Element::finite(static_cast<int>(idx)));
    } else {
      out.push_back(Element::scalar(v));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify ordered partial-metric fixed point hypotheses and "
               "run the iteration they guarantee"};
  app.require_subcommand(1);

  auto* certify_cmd =
      app.add_subcommand("certify", "Check every hypothesis of an instance file");
  std::string certify_file;
  certify_cmd->add_option("file", certify_file, "Instance document (JSON)")
      ->required();
  CommonOpts certify_opts;
  add_common(certify_cmd, certify_opts);

  auto* solve_cmd =
      app.add_subcommand("solve", "Certify, then iterate to a fixed point");
  std::string solve_file;
  solve_cmd->add_option("file", solve_file, "Instance document (JSON)")->required();
  std::vector<double> solve_starts;
  solve_cmd->add_option("--start", solve_starts,
                        "Extra start point (repeatable)");
  CommonOpts solve_opts;
  add_common(solve_cmd, solve_opts);

  auto* gallery_cmd =
      app.add_subcommand("gallery", "List built-in instances or run one");
  std::string gallery_name;
  gallery_cmd->add_option("name", gallery_name, "Entry name, or 'list'")
      ->required();
  CommonOpts gallery_opts;
  add_common(gallery_cmd, gallery_opts);

  auto* export_cmd =
      app.add_subcommand("export", "Write a built-in instance to a file");
  std::string export_name;
  std::string export_file;
  export_cmd->add_option("name", export_name, "Entry name")->required();
  export_cmd->add_option("file", export_file, "Destination path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // help text
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*certify_cmd) {
      ProblemInstance instance = load_instance(certify_file);
      apply_overrides(instance, certify_opts);
      return emit(run_certify(instance), certify_opts);
    }
    if (*solve_cmd) {
      ProblemInstance instance = load_instance(solve_file);
      apply_overrides(instance, solve_opts);
      return emit(run_solve(instance, convert_starts(instance, solve_starts)),
                  solve_opts);
    }
    if (*gallery_cmd) {
      if (gallery_name == "list") {
        for (const std::string& name : gallery_names()) std::cout << name << "\n";
        return kExitOk;
      }
      std::optional<GalleryEntry> entry = find_gallery_entry(gallery_name);
      if (!entry) {
        std::cerr << "unknown gallery entry '" << gallery_name
                  << "' (try 'gallery list')\n";
        return kExitUsage;
      }
      apply_overrides(entry->instance, gallery_opts);
      return emit(run_gallery_entry(*entry), gallery_opts);
    }
    if (*export_cmd) {
      std::optional<GalleryEntry> entry = find_gallery_entry(export_name);
      if (!entry) {
        std::cerr << "unknown gallery entry '" << export_name
                  << "' (try 'gallery list')\n";
        return kExitUsage;
      }
      write_instance(entry->instance, export_file);
      std::cout << "wrote " << export_file << "\n";
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
