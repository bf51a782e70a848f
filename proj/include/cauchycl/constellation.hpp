#ifndef CAUCHYCL_CONSTELLATION_HPP
#define CAUCHYCL_CONSTELLATION_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cauchycl/error.hpp"

namespace cauchycl {

using Vector = std::vector<double>;
using Point = Vector;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return std::sqrt(s);
}

/// Relative threshold below which two symbols count as the same point.
inline constexpr double kDuplicateTolerance = 1e-9;
inline constexpr double kPriorSumTolerance = 1e-12;

/// An ordered finite signal set in R^d. Construction validates every
/// invariant, so any Constellation value in hand is usable as-is.
class Constellation {
 public:
  explicit Constellation(std::vector<Point> points,
                         std::optional<std::vector<double>> priors = std::nullopt,
                         std::optional<std::vector<std::string>> labels = std::nullopt,
                         std::string name = {})
      : points_(std::move(points)),
        priors_(std::move(priors)),
        labels_(std::move(labels)),
        name_(std::move(name)) {
    validate();
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return points_.front().size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const Point& at(std::size_t i) const {
    check_index(i);
    return points_[i];
  }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::optional<std::vector<double>>& explicit_priors() const noexcept { return priors_; }
  const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }
  const std::string& name() const noexcept { return name_; }

  double prior(std::size_t i) const {
    return priors_ ? (*priors_)[i] : 1.0 / static_cast<double>(points_.size());
  }

  /// Priors with the equiprobable default filled in.
  std::vector<double> priors() const {
    if (priors_) return *priors_;
    return std::vector<double>(points_.size(), 1.0 / static_cast<double>(points_.size()));
  }

  std::string label(std::size_t i) const {
    if (labels_) return (*labels_)[i];
    return "P" + std::to_string(i + 1);
  }

  double max_norm() const {
    double m = 0.0;
    for (const auto& p : points_) m = std::max(m, norm(p));
    return m;
  }

  double duplicate_threshold() const { return kDuplicateTolerance * (1.0 + max_norm()); }

  void check_index(std::size_t i) const {
    if (i >= points_.size())
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(i) + " out of range for M=" +
                      std::to_string(points_.size()));
  }

  void check_dimension(std::size_t d, const char* what = "vector") const {
    if (d != dim())
      throw Error(ErrorCode::DimensionMismatch,
                  std::string(what) + " has dimension " + std::to_string(d) +
                      ", constellation has " + std::to_string(dim()));
  }

  /// Same priors, labels and name; points mapped through `f`.
  template <typename F>
  Constellation transformed(F&& f) const {
    std::vector<Point> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(f(p));
    return Constellation(std::move(out), priors_, labels_, name_);
  }

  friend bool operator==(const Constellation& a, const Constellation& b) {
    return a.points_ == b.points_ && a.priors_ == b.priors_ && a.labels_ == b.labels_;
  }

 private:
  void validate() const {
    if (points_.empty()) throw Error(ErrorCode::NotEnoughPoints, "constellation is empty", "/points");
    const std::size_t d = points_.front().size();
    if (d == 0) throw Error(ErrorCode::DimensionMismatch, "points must have dimension >= 1", "/points/0");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const std::string path = "/points/" + std::to_string(i);
      if (points_[i].size() != d)
        throw Error(ErrorCode::DimensionMismatch,
                    "point " + std::to_string(i) + " has dimension " +
                        std::to_string(points_[i].size()) + ", expected " + std::to_string(d),
                    path);
      for (double v : points_[i])
        if (!std::isfinite(v))
          throw Error(ErrorCode::InvalidValue, "non-finite coordinate in point " + std::to_string(i), path);
    }
    const double tol = duplicate_threshold();
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j)
        if (distance(points_[i], points_[j]) < tol)
          throw Error(ErrorCode::DuplicatePoint,
                      "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide",
                      "/points/" + std::to_string(j));
    if (priors_) {
      if (priors_->size() != points_.size())
        throw Error(ErrorCode::InvalidPriors, "priors length differs from number of points", "/priors");
      double sum = 0.0;
      for (std::size_t i = 0; i < priors_->size(); ++i) {
        const double p = (*priors_)[i];
        if (!std::isfinite(p) || p < 0.0)
          throw Error(ErrorCode::InvalidPriors, "prior must be finite and >= 0", "/priors/" + std::to_string(i));
        sum += p;
      }
      if (std::abs(sum - 1.0) > kPriorSumTolerance)
        throw Error(ErrorCode::InvalidPriors, "priors must sum to 1", "/priors");
    }
    if (labels_ && labels_->size() != points_.size())
      throw Error(ErrorCode::InvalidValue, "labels length differs from number of points", "/labels");
  }

  std::vector<Point> points_;
  std::optional<std::vector<double>> priors_;
  std::optional<std::vector<std::string>> labels_;
  std::string name_;
};

}  // namespace cauchycl

#endif  // CAUCHYCL_CONSTELLATION_HPP
