#pragma once

#include <cmath>
#include <vector>

namespace qsync {

/// `points` evenly spaced values from lo to hi inclusive; a single point yields {lo}.
inline std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points > 0 ? points : 0));
  for (int i = 0; i < points; ++i) {
    out.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
  }
  if (points > 1) out.back() = hi;
  return out;
}

/// Geometric spacing; lo and hi must be positive.
inline std::vector<double> logspace(double lo, double hi, int points) {
  std::vector<double> out = linspace(std::log(lo), std::log(hi), points);
  for (auto& v : out) v = std::exp(v);
  if (!out.empty()) {
    out.front() = lo;
    if (points > 1) out.back() = hi;
  }
  return out;
}

}  // namespace qsync
