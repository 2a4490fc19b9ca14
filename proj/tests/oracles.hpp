#pragma once

// Brute-force re-implementations used as independent ground truth in tests.
// They deliberately share no code with the library: plain loops over plain
// tables.

#include <cmath>
#include <cstdlib>
#include <optional>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<double>>;

inline bool same(double a, double b, double eps) { return std::fabs(a - b) <= eps; }

// x = y iff p(x,x) = p(x,y) = p(y,y), both directions.
inline bool p1_holds(const Table& p, double eps) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool indistinguishable =
          same(p[i][i], p[i][j], eps) && same(p[j][j], p[i][j], eps);
      if (indistinguishable != (i == j)) return false;
    }
  }
  return true;
}

inline bool p2_holds(const Table& p, double eps) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[i][i] > p[i][j] + eps) return false;
    }
  }
  return true;
}

inline bool p3_holds(const Table& p, double eps) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!same(p[i][j], p[j][i], eps)) return false;
    }
  }
  return true;
}

inline bool p4_holds(const Table& p, double eps) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (p[i][j] > p[i][k] + p[k][j] - p[k][k] + eps) return false;
      }
    }
  }
  return true;
}

inline bool partial_metric_holds(const Table& p, double eps) {
  return p1_holds(p, eps) && p2_holds(p, eps) && p3_holds(p, eps) && p4_holds(p, eps);
}

inline Table induced_table(const Table& p) {
  const std::size_t n = p.size();
  Table d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = 2.0 * p[i][j] - p[i][i] - p[j][j];
    }
  }
  return d;
}

// Ordinary metric axioms, including separation of distinct points.
inline bool metric_holds(const Table& d, double eps) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(d[i][i]) > eps) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] < -eps) return false;
      if (!same(d[i][j], d[j][i], eps)) return false;
      if (i != j && d[i][j] <= eps) return false;
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i][j] > d[i][k] + d[k][j] + eps) return false;
      }
    }
  }
  return true;
}

// Walks the orbit of x0 under an index map and returns the first orbit point
// that maps to itself, if the orbit reaches one before cycling.
inline std::optional<int> orbit_fixed_point(const std::vector<int>& f, int x0) {
  std::vector<bool> seen(f.size(), false);
  int at = x0;
  while (!seen[static_cast<std::size_t>(at)]) {
    seen[static_cast<std::size_t>(at)] = true;
    if (f[static_cast<std::size_t>(at)] == at) return at;
    at = f[static_cast<std::size_t>(at)];
  }
  return std::nullopt;
}

}  // namespace oracle
