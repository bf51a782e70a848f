#ifndef CAUCHYCL_BOUNDS_HPP
#define CAUCHYCL_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "cauchycl/constellation.hpp"
#include "cauchycl/error.hpp"
#include "cauchycl/geometry.hpp"

namespace cauchycl {

namespace detail {
inline void require_pairs(const Constellation& c, const char* what) {
  if (c.size() < 2) throw Error(ErrorCode::NotEnoughPoints, std::string(what) + " needs M >= 2");
}
}  // namespace detail

/// Probability that a scalar Cauchy(0, gamma) projection exceeds d/2:
/// 1/2 - arctan(d / (2 gamma)) / pi.
inline double pairwise_error_term(double d, double gamma) {
  if (!(d > 0.0)) throw Error(ErrorCode::NonpositiveInput, "distance must be positive");
  if (!(gamma > 0.0)) throw Error(ErrorCode::NonpositiveInput, "gamma must be positive");
  return 0.5 - std::atan(d / (2.0 * gamma)) / std::numbers::pi;
}

/// Sum of reciprocal distances from point i to every other point.
inline double burden(const Constellation& c, std::size_t i) {
  detail::require_pairs(c, "burden");
  c.check_index(i);
  double b = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (j != i) b += 1.0 / distance(c[i], c[j]);
  return b;
}

inline std::vector<double> burdens(const Constellation& c) {
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = burden(c, i);
  return out;
}

inline double burden_max(const Constellation& c) {
  const auto b = burdens(c);
  return *std::max_element(b.begin(), b.end());
}

inline double union_bound_symbol(const Constellation& c, std::size_t i, double gamma) {
  detail::require_pairs(c, "union bound");
  c.check_index(i);
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (j != i) s += pairwise_error_term(distance(c[i], c[j]), gamma);
  return s;
}

/// Equiprobable average of the per-symbol bounds.
inline double union_bound_average(const Constellation& c, double gamma) {
  detail::require_pairs(c, "union bound");
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += union_bound_symbol(c, i, gamma);
  return s / static_cast<double>(c.size());
}

/// Same quantity through the pair sum (2/M) sum_{i<j} term(d_ij).
inline double union_bound_average_pairwise(const Constellation& c, double gamma) {
  detail::require_pairs(c, "union bound");
  double s = 0.0;
  for (const auto& e : distance_spectrum(c)) s += pairwise_error_term(e.distance, gamma);
  return 2.0 * s / static_cast<double>(c.size());
}

/// Slope in gamma of the leading-order symbol bound: (2/pi) B_i.
inline double asymptotic_coefficient_symbol(const Constellation& c, std::size_t i) {
  return 2.0 / std::numbers::pi * burden(c, i);
}

/// (4 / (M pi)) sum_{i<j} 1/d_ij.
inline double asymptotic_coefficient_average(const Constellation& c) {
  detail::require_pairs(c, "asymptotic coefficient");
  double s = 0.0;
  for (const auto& e : distance_spectrum(c)) s += 1.0 / e.distance;
  return 4.0 / (static_cast<double>(c.size()) * std::numbers::pi) * s;
}

struct AsymptoticTerm {
  double coefficient = 0.0;
  double value = 0.0;  // coefficient * gamma
};

struct BoundReport {
  double gamma = 0.0;
  std::vector<double> per_symbol_exact_bound;
  std::vector<double> per_symbol_exact_bound_clamped;  // min(bound, 1), for plotting
  double avg_exact_bound = 0.0;
  double avg_exact_bound_clamped = 0.0;
  std::vector<AsymptoticTerm> per_symbol_asymptotic;
  AsymptoticTerm avg_asymptotic;
};

/// Union bounds are reported raw, even above 1; the clamped copies exist
/// only for display.
inline BoundReport bound_report(const Constellation& c, double gamma) {
  detail::require_pairs(c, "bound report");
  if (!(gamma > 0.0)) throw Error(ErrorCode::NonpositiveInput, "gamma must be positive", "/gamma");
  BoundReport r;
  r.gamma = gamma;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double b = union_bound_symbol(c, i, gamma);
    r.per_symbol_exact_bound.push_back(b);
    r.per_symbol_exact_bound_clamped.push_back(std::min(b, 1.0));
    const double k = asymptotic_coefficient_symbol(c, i);
    r.per_symbol_asymptotic.push_back({k, k * gamma});
  }
  r.avg_exact_bound = union_bound_average(c, gamma);
  r.avg_exact_bound_clamped = std::min(r.avg_exact_bound, 1.0);
  const double k = asymptotic_coefficient_average(c);
  r.avg_asymptotic = {k, k * gamma};
  return r;
}

}  // namespace cauchycl

#endif  // CAUCHYCL_BOUNDS_HPP
