#ifndef CAUCHYCL_NOISE_HPP
#define CAUCHYCL_NOISE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "cauchycl/constellation.hpp"
#include "cauchycl/error.hpp"
#include "cauchycl/rng.hpp"

namespace cauchycl {

/// Isotropic d-dimensional Cauchy law with scale gamma.
class NoiseModel {
 public:
  NoiseModel(double gamma, std::size_t dim) : gamma_(gamma), dim_(dim) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
      throw Error(ErrorCode::NonpositiveInput, "noise scale gamma must be positive and finite", "/gamma");
    if (dim < 1) throw Error(ErrorCode::DimensionMismatch, "noise dimension must be >= 1");
  }

  double gamma() const noexcept { return gamma_; }
  std::size_t dim() const noexcept { return dim_; }

  /// log c_d = log Gamma((d+1)/2) - ((d+1)/2) log pi.
  double log_normalizer() const {
    const double h = 0.5 * static_cast<double>(dim_ + 1);
    return std::lgamma(h) - h * std::log(std::numbers::pi);
  }

 private:
  double gamma_;
  std::size_t dim_;
};

inline double log_density(const NoiseModel& m, std::span<const double> n) {
  if (n.size() != m.dim())
    throw Error(ErrorCode::DimensionMismatch, "noise vector has dimension " + std::to_string(n.size()) +
                                                  ", model has " + std::to_string(m.dim()));
  const double d = static_cast<double>(m.dim());
  const double r2 = dot(n, n) / (m.gamma() * m.gamma());
  return m.log_normalizer() - d * std::log(m.gamma()) - 0.5 * (d + 1.0) * std::log1p(r2);
}

/// Writes gamma * G / H into `out`, pulling standard normals from `normal()`.
/// G is drawn first, then H; an exactly-zero H is discarded and redrawn.
/// Near-zero H is kept: it is what produces the heavy tail.
template <typename NormalSource>
void sample_into(const NoiseModel& m, NormalSource&& normal, std::span<double> out) {
  for (auto& g : out) g = normal();
  double h = normal();
  while (h == 0.0) h = normal();
  const double scale = m.gamma() / h;
  for (auto& g : out) g *= scale;
}

inline Vector sample(const NoiseModel& m, RngStream& rng) {
  Vector n(m.dim());
  sample_into(m, [&rng] { return rng.normal(); }, std::span<double>(n));
  return n;
}

inline double cauchy_cdf(double z, double gamma) { return 0.5 + std::atan(z / gamma) / std::numbers::pi; }

/// Kolmogorov-Smirnov distance between sorted samples and Cauchy(0, gamma).
inline double ks_statistic_cauchy(std::vector<double> values, double gamma) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double f = cauchy_cdf(values[k], gamma);
    d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
  }
  return d;
}

/// KS statistic of u.N over n_samples draws against the scalar
/// Cauchy(0, gamma) law, which every unit projection must follow.
inline double projection_ks(const NoiseModel& m, std::span<const double> u, std::size_t n_samples,
                            RngStream& rng) {
  if (u.size() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "direction dimension differs from model");
  if (std::abs(norm(u) - 1.0) > 1e-9) throw Error(ErrorCode::NotUnitVector, "projection direction must be unit");
  if (n_samples < 100) throw Error(ErrorCode::InvalidSampleCount, "projection_ks needs at least 100 samples");
  std::vector<double> proj;
  proj.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) proj.push_back(dot(u, sample(m, rng)));
  return ks_statistic_cauchy(std::move(proj), m.gamma());
}

}  // namespace cauchycl

#endif  // CAUCHYCL_NOISE_HPP
