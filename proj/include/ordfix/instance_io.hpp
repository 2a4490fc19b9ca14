#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ordfix/core.hpp"

namespace ordfix {

// A document failed schema validation; names the offending field.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Instance documents are JSON. Top-level fields:
//   kind: "finite" | "interval"
//   finite:   p_table (n x n), order_table (n x n booleans), map_table (n)
//   interval: domain {min, max}, p_expr, order {lhs, rel, rhs}, f_expr
//   common:   psi_expr and/or banach_c, x0, tol, max_iter, samples, seed,
//             label, eps_ax, psi_growth_bound (the last five optional)
ProblemInstance parse_instance_text(const std::string& text,
                                    const std::string& fallback_label = "");
ProblemInstance load_instance(const std::filesystem::path& path);

std::string instance_to_json_text(const ProblemInstance& instance);
void write_instance(const ProblemInstance& instance,
                    const std::filesystem::path& path);

}  // namespace ordfix
