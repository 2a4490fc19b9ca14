#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordfix/core.hpp"

namespace ordfix {

struct GalleryExpected {
  Element fixed_point;
  double self_distance = 0.0;
};

struct GalleryEntry {
  std::string name;
  ProblemInstance instance;
  std::optional<GalleryExpected> expected;
  std::string notes;
};

// The max-metric instance: p(x,y) = max(x,y) on [0, 1000], order
// x <=_X y iff x = max(x,y), the halving map, psi(t) = t/4, start 1.
// Fixed point 0 with zero self distance.
GalleryEntry max_half_example();

// Wraps an ordinary metric as a partial metric with zero self distances.
// Rejects tables with a nonzero diagonal; expression metrics are probed at
// sampled points.
PartialMetricSpace metric_embedding(const std::vector<std::vector<double>>& table,
                                    std::string label = "");
PartialMetricSpace metric_embedding(double lo, double hi, ExprPtr d,
                                    std::string label = "");

// |x - y| on [0, 1000] with the halving map under the Banach constant 1/2.
GalleryEntry metric_half();

// Two-point chain with a constant map; the smallest end-to-end finite case.
GalleryEntry finite_chain();

// Seeded generator of valid finite instances (n <= 16): a partial metric
// built from r(i)+r(j)+s(i,j) with exhaustive check-and-clamp repair, a
// partial order extending a chain, a monotone map that makes progress along
// the chain, and psi(t) = t/2. The expected fixed point is known by
// construction and doubles as oracle fodder.
GalleryEntry random_finite_instance(int n, std::uint64_t seed);

std::vector<std::string> gallery_names();
std::optional<GalleryEntry> find_gallery_entry(std::string_view name);

}  // namespace ordfix
