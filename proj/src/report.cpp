#include "ordfix/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace ordfix {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

TraceRow row_at(const IterationTrace& trace, std::size_t n) {
  TraceRow row;
  row.n = static_cast<long>(n);
  row.point = trace.points[n];
  if (n > 0 && n - 1 < trace.rho.size()) row.rho = trace.rho[n - 1];
  if (n < trace.self_dists.size()) row.self_dist = trace.self_dists[n];
  return row;
}

void append_check_text(std::ostringstream& out, const CheckResult& check) {
  out << "  " << to_string(check.status) << "  " << check.name;
  out << "  samples=" << check.samples_used;
  if (check.exhaustive) out << " (exhaustive)";
  out << "\n";
  for (const auto& [name, value] : check.values) {
    out << "      " << name << " = " << format_real(value) << "\n";
  }
  for (const auto& v : check.violations) {
    out << "      witness (";
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
      if (i) out << ", ";
      out << v.witness[i].describe();
    }
    out << ")";
    for (std::size_t i = 0; i < v.values.size(); ++i) {
      out << (i ? ", " : ": ") << v.values[i].first << "="
          << format_real(v.values[i].second);
    }
    if (!v.message.empty()) out << " -- " << v.message;
    out << "\n";
  }
  for (const auto& note : check.notes) {
    out << "      note: " << note << "\n";
  }
}

void append_row_text(std::ostringstream& out, const TraceRow& row) {
  out << "      n=" << row.n << "  x=" << row.point.describe();
  if (row.rho) out << "  step=" << format_real(*row.rho);
  out << "  self=" << format_real(row.self_dist) << "\n";
}

nlohmann::ordered_json check_json(const CheckResult& check) {
  nlohmann::ordered_json j;
  j["name"] = check.name;
  j["status"] = std::string(to_string(check.status));
  j["samples_used"] = check.samples_used;
  j["exhaustive"] = check.exhaustive;
  if (!check.values.empty()) {
    nlohmann::ordered_json vals;
    for (const auto& [name, value] : check.values) vals[name] = format_real(value);
    j["values"] = vals;
  }
  nlohmann::ordered_json viols = nlohmann::ordered_json::array();
  for (const auto& v : check.violations) {
    nlohmann::ordered_json jv;
    nlohmann::ordered_json witness = nlohmann::ordered_json::array();
    for (const auto& w : v.witness) witness.push_back(w.describe());
    jv["witness"] = witness;
    nlohmann::ordered_json vals;
    for (const auto& [name, value] : v.values) vals[name] = format_real(value);
    jv["values"] = vals;
    jv["message"] = v.message;
    viols.push_back(jv);
  }
  j["violations"] = viols;
  j["notes"] = check.notes;
  return j;
}

nlohmann::ordered_json row_json(const TraceRow& row) {
  nlohmann::ordered_json j;
  j["n"] = row.n;
  j["point"] = row.point.describe();
  if (row.rho) j["step"] = format_real(*row.rho);
  j["self"] = format_real(row.self_dist);
  return j;
}

nlohmann::ordered_json solve_json(const SolveSection& s) {
  nlohmann::ordered_json j;
  j["start"] = s.start.describe();
  j["status"] = std::string(to_string(s.status));
  j["iterations"] = s.iterations;
  if (s.fixed_point) {
    j["fixed_point"] = s.fixed_point->describe();
    j["residual"] = format_real(s.residual);
    j["self_distance"] = format_real(s.self_distance);
  }
  j["trace_rows"] = s.trace_length;
  nlohmann::ordered_json head = nlohmann::ordered_json::array();
  for (const auto& row : s.head_rows) head.push_back(row_json(row));
  j["head"] = head;
  nlohmann::ordered_json tail = nlohmann::ordered_json::array();
  for (const auto& row : s.tail_rows) tail.push_back(row_json(row));
  j["tail"] = tail;
  return j;
}

}  // namespace

SolveSection make_solve_section(const Element& start, const SolveResult& result) {
  SolveSection section;
  section.start = start;
  section.status = result.trace.status;
  section.iterations = result.trace.iterations_used;
  section.fixed_point = result.fixed_point;
  section.residual = result.residual;
  section.self_distance = result.self_distance_at_u;
  const std::size_t total = result.trace.points.size();
  section.trace_length = static_cast<long>(total);
  if (total <= 20) {
    for (std::size_t n = 0; n < total; ++n) {
      section.head_rows.push_back(row_at(result.trace, n));
    }
  } else {
    for (std::size_t n = 0; n < 10; ++n) {
      section.head_rows.push_back(row_at(result.trace, n));
    }
    for (std::size_t n = total - 10; n < total; ++n) {
      section.tail_rows.push_back(row_at(result.trace, n));
    }
  }
  return section;
}

std::string ReportDocument::to_text(bool quiet) const {
  std::ostringstream out;
  out << "== " << (label.empty() ? "report" : label) << " ==\n";
  out << "kind: " << kind << "\n";
  out << "seed: " << seed << "  samples: " << samples
      << "  tol: " << format_real(tol) << "\n";
  if (!certificates.empty()) {
    out << "certificates:\n";
    for (const auto& check : certificates) append_check_text(out, check);
  }
  if (!diagnostics.empty()) {
    out << "diagnostics:\n";
    for (const auto& check : diagnostics) append_check_text(out, check);
  }
  for (std::size_t i = 0; i < solves.size(); ++i) {
    const SolveSection& s = solves[i];
    out << "solve " << (i + 1) << ": start=" << s.start.describe() << "  "
        << to_string(s.status) << " after " << s.iterations << " iterations\n";
    if (s.fixed_point) {
      out << "  fixed point u=" << s.fixed_point->describe()
          << "  residual=" << format_real(s.residual)
          << "  self=" << format_real(s.self_distance) << "\n";
    }
    if (!quiet) {
      out << "  trace (" << s.trace_length << " rows):\n";
      for (const auto& row : s.head_rows) append_row_text(out, row);
      if (!s.tail_rows.empty()) {
        out << "      ...\n";
        for (const auto& row : s.tail_rows) append_row_text(out, row);
      }
    }
  }
  out << "verdict: " << verdict << "\n";
  return out.str();
}

std::string ReportDocument::to_json_text() const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["kind"] = kind;
  j["seed"] = seed;
  j["samples"] = samples;
  j["tol"] = format_real(tol);
  nlohmann::ordered_json certs = nlohmann::ordered_json::array();
  for (const auto& check : certificates) certs.push_back(check_json(check));
  j["certificates"] = certs;
  nlohmann::ordered_json diags = nlohmann::ordered_json::array();
  for (const auto& check : diagnostics) diags.push_back(check_json(check));
  j["diagnostics"] = diags;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& s : solves) runs.push_back(solve_json(s));
  j["solves"] = runs;
  j["verdict"] = verdict;
  return j.dump(2) + "\n";
}

}  // namespace ordfix
