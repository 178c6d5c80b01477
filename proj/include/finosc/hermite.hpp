#pragma once

// Normalized Hermite-Gaussian functions
//   Psi_m(x) = (m! 2^m sqrt(pi))^{-1/2} H_m(x) exp(-x^2/2)
// evaluated with the normalized three-term recurrence, which never forms
// H_m or m! and stays bounded for large m.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace finosc {

inline constexpr int max_hermite_order = 300;

/// Fills out[k] = Psi_k(x) for k = 0 .. out.size()-1.
inline void hermite_gaussians(double x, std::span<double> out) {
  if (out.empty()) return;
  if (out.size() > static_cast<std::size_t>(max_hermite_order) + 1)
    throw std::invalid_argument("hermite order above " + std::to_string(max_hermite_order));
  double prev = 0.0;
  double cur = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  out[0] = cur;
  for (std::size_t n = 0; n + 1 < out.size(); ++n) {
    const double nd = static_cast<double>(n);
    const double next = x * std::sqrt(2.0 / (nd + 1.0)) * cur - std::sqrt(nd / (nd + 1.0)) * prev;
    prev = cur;
    cur = next;
    out[n + 1] = cur;
  }
}

inline double hermite_gaussian(int m, double x) {
  if (m < 0 || m > max_hermite_order)
    throw std::invalid_argument("hermite order " + std::to_string(m) + " outside [0, " +
                                std::to_string(max_hermite_order) + "]");
  double prev = 0.0;
  double cur = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  for (int n = 0; n < m; ++n) {
    const double next = x * std::sqrt(2.0 / (n + 1.0)) * cur - std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace finosc
