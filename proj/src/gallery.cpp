#include "ordfix/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "rng_util.hpp"

namespace ordfix {

GalleryEntry max_half_example() {
  GalleryEntry e;
  e.name = "max-half";
  e.notes = "max metric with the halving map under a total order; fixed point 0";
  e.instance.space =
      PartialMetricSpace::interval(0.0, 1000.0, parse_expr("max(x, y)"),
                                   "max(x, y) on [0, 1000]");
  e.instance.order = PartialOrder::predicate(
      parse_expr("x"), PartialOrder::Relation::Eq, parse_expr("max(x, y)"),
      "x below y when x = max(x, y)");
  e.instance.map = SelfMap::scalar(parse_expr("t / 2"), "halving map");
  e.instance.psi = ControlFunction(parse_expr("t / 4"));
  e.instance.x0 = Element::scalar(1.0);
  e.instance.label = "max-half";
  e.expected = GalleryExpected{Element::scalar(0.0), 0.0};
  return e;
}

PartialMetricSpace metric_embedding(const std::vector<std::vector<double>>& table,
                                    std::string label) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i >= table[i].size() || table[i][i] != 0.0)
      throw DomainError("metric table needs a zero diagonal, entry (" +
                        std::to_string(i) + "," + std::to_string(i) +
                        ") is nonzero");
  }
  return PartialMetricSpace::finite(table, std::move(label));
}

PartialMetricSpace metric_embedding(double lo, double hi, ExprPtr d,
                                    std::string label) {
  if (!d) throw DomainError("metric embedding needs a distance expression");
  for (int k = 0; k <= 16; ++k) {
    double x = lo + (hi - lo) * k / 16.0;
    EvalEnv env = EvalEnv::pair(x, x);
    if (evaluate(*d, env) != 0.0)
      throw DomainError("metric expression has nonzero self-distance at " +
                        Element::scalar(x).describe());
  }
  return PartialMetricSpace::interval(lo, hi, std::move(d), std::move(label));
}

GalleryEntry metric_half() {
  GalleryEntry e;
  e.name = "metric-half";
  e.notes = "absolute-difference metric with the halving map and factor 1/2";
  e.instance.space = metric_embedding(0.0, 1000.0, parse_expr("abs(x - y)"),
                                      "abs(x - y) on [0, 1000]");
  e.instance.order = PartialOrder::predicate(
      parse_expr("x"), PartialOrder::Relation::Geq, parse_expr("y"),
      "x below y when x >= y");
  e.instance.map = SelfMap::scalar(parse_expr("t / 2"), "halving map");
  e.instance.banach_c = 0.5;
  e.instance.x0 = Element::scalar(1.0);
  e.instance.label = "metric-half";
  e.expected = GalleryExpected{Element::scalar(0.0), 0.0};
  return e;
}

GalleryEntry finite_chain() {
  GalleryEntry e;
  e.name = "finite-chain";
  e.notes = "two-point chain collapsed by a constant map";
  e.instance.space = PartialMetricSpace::finite({{0.0, 1.0}, {1.0, 1.0}},
                                                "two-point table");
  e.instance.order = PartialOrder::finite({{true, false}, {true, true}},
                                          "chain 1 below 0");
  e.instance.map = SelfMap::finite({0, 0}, "constant 0");
  e.instance.psi = ControlFunction(parse_expr("t / 2"));
  e.instance.x0 = Element::finite(1);
  e.instance.label = "finite-chain";
  e.expected = GalleryExpected{Element::finite(0), 0.0};
  return e;
}

GalleryEntry random_finite_instance(int n, std::uint64_t seed) {
  if (n < 1 || n > 16)
    throw DomainError("random instance size must lie in [1, 16]");
  std::mt19937_64 g(mix_seed(seed, "gallery.random"));

  // Distinct anchors with gaps in [0.75, 1.25], so separation is far above
  // the axiom tolerance.
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + uniform_in(g, 0.0, 0.25);
  auto s = [&](int i, int j) { return std::abs(v[i] - v[j]); };

  // Self-distance weights. p(i,j) = r(i) + r(j) + s(i,j) is a valid partial
  // metric exactly when r is 1-Lipschitz with respect to s, so the weights
  // are clamped exhaustively until that holds; index 0 is pinned to zero so
  // the terminal point of every orbit has zero self-distance.
  std::vector<double> r(n);
  for (int i = 1; i < n; ++i) r[i] = uniform_in(g, 0.0, 1.0);
  r[0] = 0.0;
  for (int pass = 0; pass < n; ++pass) {
    bool changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i] > r[j] + s(i, j)) {
          r[i] = r[j] + s(i, j);
          changed = true;
        }
    if (!changed) break;
  }

  std::vector<std::vector<double>> p(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[i][j] = i == j ? 2.0 * r[i] : r[i] + r[j] + s(i, j);

  // Total chain order n-1, ..., 1, 0 (read downward), and a monotone map
  // that strictly descends the chain away from index 0.
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rel[i][j] = i >= j;

  std::vector<int> f(n);
  f[0] = 0;
  for (int i = 1; i < n; ++i)
    f[i] = f[i - 1] + static_cast<int>(bounded(g, static_cast<std::uint64_t>(
                                                      i - f[i - 1])));

  GalleryEntry e;
  e.name = "random-n" + std::to_string(n) + "-s" + std::to_string(seed);
  e.notes = "seeded oracle instance; chain order with a descending map";
  e.instance.space = PartialMetricSpace::finite(p, e.name);
  e.instance.order = PartialOrder::finite(rel, "chain");
  e.instance.map = SelfMap::finite(f, "descending map");
  e.instance.psi = ControlFunction(parse_expr("t / 2"));
  e.instance.x0 = Element::finite(n - 1);
  e.instance.seed = seed;
  e.instance.label = e.name;

  int at = n - 1;
  for (int step = 0; step <= n; ++step) at = f[at];
  e.expected = GalleryExpected{Element::finite(at), p[at][at]};
  return e;
}

std::vector<std::string> gallery_names() {
  return {"max-half", "metric-half", "finite-chain"};
}

std::optional<GalleryEntry> find_gallery_entry(std::string_view name) {
  if (name == "max-half") return max_half_example();
  if (name == "metric-half") return metric_half();
  if (name == "finite-chain") return finite_chain();
  return std::nullopt;
}

}  // namespace ordfix
