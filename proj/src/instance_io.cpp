#include "ordfix/instance_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ordfix/expr.hpp"

namespace ordfix {

using json = nlohmann::ordered_json;

ValidationError::ValidationError(const std::string& field,
                                 const std::string& message)
    : std::runtime_error(field + ": " + message), field_(field) {}

namespace {

const json& require_field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ValidationError(name, "missing required field");
  return *it;
}

std::string as_text(const json& j, const std::string& field) {
  if (!j.is_string()) throw ValidationError(field, "expected a string");
  return j.get<std::string>();
}

double as_real(const json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field, "expected a number");
  return j.get<double>();
}

long as_integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ValidationError(field, "expected an integer");
  return j.get<long>();
}

std::uint64_t as_seed(const json& j, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
    throw ValidationError(field, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

ExprPtr as_expr(const json& j, const std::string& field) {
  const std::string text = as_text(j, field);
  try {
    return parse_expr(text);
  } catch (const ParseError& e) {
    std::ostringstream msg;
    msg << e.what() << " (offset " << e.offset() << " in \"" << text << "\")";
    throw ValidationError(field, msg.str());
  }
}

std::vector<std::vector<double>> as_real_matrix(const json& j,
                                                const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array of rows");
  std::vector<std::vector<double>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw ValidationError(field, "expected an array of rows");
    std::vector<double> r;
    for (const auto& cell : row) r.push_back(as_real(cell, field));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<bool>> as_bool_matrix(const json& j,
                                              const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array of rows");
  std::vector<std::vector<bool>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw ValidationError(field, "expected an array of rows");
    std::vector<bool> r;
    for (const auto& cell : row) {
      if (!cell.is_boolean()) throw ValidationError(field, "expected booleans");
      r.push_back(cell.get<bool>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<int> as_int_vector(const json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array of integers");
  std::vector<int> out;
  for (const auto& cell : j) {
    out.push_back(static_cast<int>(as_integer(cell, field)));
  }
  return out;
}

void reject_unknown_fields(const json& doc, const std::set<std::string>& known) {
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) {
      throw ValidationError(item.key(), "unknown field");
    }
  }
}

}  // namespace

ProblemInstance parse_instance_text(const std::string& text,
                                    const std::string& fallback_label) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("document", e.what());
  }
  if (!doc.is_object()) throw ValidationError("document", "expected a JSON object");

  const std::string kind = as_text(require_field(doc, "kind"), "kind");

  std::set<std::string> known = {"kind",    "psi_expr", "psi_growth_bound",
                                 "banach_c", "x0",      "tol",
                                 "max_iter", "samples",  "seed",
                                 "label",    "eps_ax"};
  if (kind == "finite") {
    known.insert({"p_table", "order_table", "map_table"});
  } else if (kind == "interval") {
    known.insert({"domain", "p_expr", "order", "f_expr"});
  } else {
    throw ValidationError("kind", "must be \"finite\" or \"interval\"");
  }
  reject_unknown_fields(doc, known);

  ProblemInstance inst;
  if (doc.contains("label")) inst.label = as_text(doc["label"], "label");
  if (inst.label.empty()) inst.label = fallback_label;

  if (kind == "finite") {
    try {
      inst.space = PartialMetricSpace::finite(
          as_real_matrix(require_field(doc, "p_table"), "p_table"), inst.label);
    } catch (const DomainError& e) {
      throw ValidationError("p_table", e.what());
    }
    try {
      inst.order = PartialOrder::finite(
          as_bool_matrix(require_field(doc, "order_table"), "order_table"));
    } catch (const DomainError& e) {
      throw ValidationError("order_table", e.what());
    }
    try {
      inst.map = SelfMap::finite(
          as_int_vector(require_field(doc, "map_table"), "map_table"));
    } catch (const DomainError& e) {
      throw ValidationError("map_table", e.what());
    }
    inst.x0 = Element::finite(
        static_cast<int>(as_integer(require_field(doc, "x0"), "x0")));
  } else {
    const json& dom = require_field(doc, "domain");
    if (!dom.is_object()) throw ValidationError("domain", "expected an object");
    const double lo = as_real(require_field(dom, "min"), "domain.min");
    const double hi = as_real(require_field(dom, "max"), "domain.max");
    try {
      inst.space = PartialMetricSpace::interval(
          lo, hi, as_expr(require_field(doc, "p_expr"), "p_expr"), inst.label);
    } catch (const DomainError& e) {
      throw ValidationError("p_expr", e.what());
    }
    const json& ord = require_field(doc, "order");
    if (!ord.is_object()) throw ValidationError("order", "expected an object");
    try {
      inst.order = PartialOrder::predicate(
          as_expr(require_field(ord, "lhs"), "order.lhs"),
          relation_from_keyword(as_text(require_field(ord, "rel"), "order.rel")),
          as_expr(require_field(ord, "rhs"), "order.rhs"));
    } catch (const DomainError& e) {
      throw ValidationError("order", e.what());
    }
    try {
      inst.map = SelfMap::scalar(as_expr(require_field(doc, "f_expr"), "f_expr"));
    } catch (const DomainError& e) {
      throw ValidationError("f_expr", e.what());
    }
    inst.x0 = Element::scalar(as_real(require_field(doc, "x0"), "x0"));
  }

  if (doc.contains("psi_growth_bound") && !doc.contains("psi_expr")) {
    throw ValidationError("psi_growth_bound", "requires psi_expr");
  }
  if (doc.contains("psi_expr")) {
    double bound = kDefaultGrowthBound;
    if (doc.contains("psi_growth_bound")) {
      bound = as_real(doc["psi_growth_bound"], "psi_growth_bound");
    }
    try {
      inst.psi.emplace(as_expr(doc["psi_expr"], "psi_expr"), bound);
    } catch (const DomainError& e) {
      throw ValidationError("psi_expr", e.what());
    }
  }
  if (doc.contains("banach_c")) {
    inst.banach_c = as_real(doc["banach_c"], "banach_c");
  }
  if (!inst.psi && !inst.banach_c) {
    throw ValidationError("psi_expr", "need psi_expr or banach_c");
  }

  if (doc.contains("tol")) inst.tol = as_real(doc["tol"], "tol");
  if (doc.contains("max_iter")) inst.max_iter = as_integer(doc["max_iter"], "max_iter");
  if (doc.contains("samples")) inst.sample_count = as_integer(doc["samples"], "samples");
  if (doc.contains("seed")) inst.seed = as_seed(doc["seed"], "seed");
  if (doc.contains("eps_ax")) inst.eps_ax = as_real(doc["eps_ax"], "eps_ax");

  try {
    inst.validate();
  } catch (const DomainError& e) {
    throw ValidationError("instance", e.what());
  }
  return inst;
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("path", "cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str(), path.stem().string());
}

std::string instance_to_json_text(const ProblemInstance& instance) {
  json j;
  if (instance.space.is_finite()) {
    j["kind"] = "finite";
    const int n = instance.space.size();
    const std::vector<double>& flat = instance.space.table();
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int k = 0; k < n; ++k) row.push_back(flat[i * n + k]);
      rows.push_back(row);
    }
    j["p_table"] = rows;
    const std::vector<bool>& rel = instance.order.table();
    json order_rows = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int k = 0; k < n; ++k) row.push_back(static_cast<bool>(rel[i * n + k]));
      order_rows.push_back(row);
    }
    j["order_table"] = order_rows;
    j["map_table"] = instance.map.table();
    j["x0"] = instance.x0.index;
  } else {
    j["kind"] = "interval";
    j["domain"] = {{"min", instance.space.lower()}, {"max", instance.space.upper()}};
    j["p_expr"] = to_string(*instance.space.distance_expr());
    j["order"] = {{"lhs", to_string(*instance.order.lhs())},
                  {"rel", std::string(relation_keyword(instance.order.relation()))},
                  {"rhs", to_string(*instance.order.rhs())}};
    j["f_expr"] = to_string(*instance.map.expr());
    j["x0"] = instance.x0.value;
  }
  if (instance.psi) {
    j["psi_expr"] = to_string(*instance.psi->expr());
    j["psi_growth_bound"] = instance.psi->growth_bound();
  }
  if (instance.banach_c) j["banach_c"] = *instance.banach_c;
  j["tol"] = instance.tol;
  j["max_iter"] = instance.max_iter;
  j["samples"] = instance.sample_count;
  j["seed"] = instance.seed;
  j["eps_ax"] = instance.eps_ax;
  j["label"] = instance.label;
  return j.dump(2) + "\n";
}

void write_instance(const ProblemInstance& instance,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("path", "cannot open '" + path.string() + "' for writing");
  }
  out << instance_to_json_text(instance);
  if (!out) {
    throw ValidationError("path", "write failed for '" + path.string() + "'");
  }
}

}  // namespace ordfix
