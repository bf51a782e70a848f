#ifndef CAUCHYCL_DESCRIPTORS_HPP
#define CAUCHYCL_DESCRIPTORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cauchycl/bounds.hpp"
#include "cauchycl/constellation.hpp"
#include "cauchycl/detector.hpp"
#include "cauchycl/error.hpp"
#include "cauchycl/geometry.hpp"

namespace cauchycl {

/// Exact-route angular fractions below this are collapsed.
inline constexpr double kCollapseTolerance = 1e-12;
/// Direction-sampling route: collapsed when the one-sided 99% upper
/// bound on the fraction falls below this.
inline constexpr double kEstimatedCollapseBound = 1e-3;
inline constexpr double kZ99OneSided = 2.3263478740408408;

struct ReportOptions {
  SphereMc fallback{200000, 2026};  // used only when d != 2
};

struct ReliabilityReport {
  std::size_t m = 0;
  std::size_t dim = 0;
  bool angles_estimated = false;

  std::vector<double> angular;            // A_i
  std::vector<double> angular_std_error;  // zeros on the exact route
  double a_min = 0.0;
  std::vector<bool> collapse;

  std::vector<double> large_noise_correct;  // limits of P_c(x_i)
  std::vector<double> large_noise_error;
  double large_noise_avg_correct = 0.0;
  double large_noise_avg_error = 0.0;

  std::vector<double> burden;  // B_i, empty when M = 1
  double b_max = 0.0;
  double normalized_b_max = 0.0;  // sqrt(power) * b_max

  std::vector<HullEntry> hull;  // planar constellations only
  double power = 0.0;
  double d_min = 0.0;
};

inline ReliabilityReport report(const Constellation& c, const ReportOptions& opt = {}) {
  ReliabilityReport r;
  r.m = c.size();
  r.dim = c.dim();
  r.angles_estimated = c.dim() != 2;

  for (std::size_t i = 0; i < c.size(); ++i) {
    AngularFraction a;
    bool collapsed = false;
    if (!r.angles_estimated) {
      a = angular_fraction(c, i, Exact2D{});
      collapsed = a.value < kCollapseTolerance;
    } else {
      a = angular_fraction(c, i, opt.fallback);
      const Interval one_sided = wilson_interval(a.hits, a.samples, kZ99OneSided);
      collapsed = one_sided.hi < kEstimatedCollapseBound;
    }
    r.angular.push_back(a.value);
    r.angular_std_error.push_back(a.std_error);
    r.collapse.push_back(collapsed);
    r.large_noise_correct.push_back(a.value);
    r.large_noise_error.push_back(1.0 - a.value);
    r.large_noise_avg_correct += c.prior(i) * a.value;
  }
  r.large_noise_avg_error = 1.0 - r.large_noise_avg_correct;
  r.a_min = *std::min_element(r.angular.begin(), r.angular.end());

  r.power = average_power(c);
  if (c.size() >= 2) {
    r.burden = burdens(c);
    r.b_max = *std::max_element(r.burden.begin(), r.burden.end());
    r.normalized_b_max = std::sqrt(r.power) * r.b_max;
    r.d_min = min_distance(c);
  }
  if (c.dim() == 2) r.hull = hull_classify(c).entries;
  return r;
}

/// sqrt(p0) * B_max: the worst-symbol burden at a common power p0.
inline double normalized_burden_max(const Constellation& c, double p0) {
  if (!(p0 > 0.0)) throw Error(ErrorCode::NonpositivePower, "p0 must be positive", "/p0");
  return std::sqrt(p0) * burden_max(c);
}

inline double joint_objective_value(double normalized_b_max, double a_min, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in [0, 1]", "/lambda");
  return lambda * normalized_b_max - (1.0 - lambda) * a_min;
}

/// J = lambda * sqrt(p0) * B_max - (1 - lambda) * A_min.
inline double joint_objective(const Constellation& c, double lambda, double p0,
                              const ReportOptions& opt = {}) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in [0, 1]", "/lambda");
  const double nb = normalized_burden_max(c, p0);
  return joint_objective_value(nb, report(c, opt).a_min, lambda);
}

// ---------------------------------------------------------------------------
// Two-stage screen

struct Candidate {
  std::string id;
  Constellation constellation;
};

/// Power used for normalization: each candidate's own average power
/// (monostate), one common value, or one value per candidate.
using PowerSpec = std::variant<std::monostate, double, std::vector<double>>;

struct RejectedCandidate {
  std::string id;
  std::string reason;
};

struct RankedCandidate {
  std::string id;
  double objective = 0.0;
  double p0 = 0.0;
  double normalized_b_max = 0.0;
  ReliabilityReport report;
};

struct ScreenResult {
  double lambda = 0.5;
  std::vector<RejectedCandidate> rejected;
  std::vector<RankedCandidate> ranked;  // ascending objective, stable in input order
  bool unequal_power_warning = false;
};

inline constexpr double kPowerMismatchTolerance = 1e-9;

/// Stage 1 discards every candidate with a collapsed symbol. Stage 2 ranks
/// the survivors by the joint objective.
inline ScreenResult screen(const std::vector<Candidate>& candidates, double lambda,
                           const PowerSpec& p0 = std::monostate{}, const ReportOptions& opt = {}) {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidateList, "no candidates to screen", "/candidates");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in [0, 1]", "/lambda");
  if (const auto* per = std::get_if<std::vector<double>>(&p0); per && per->size() != candidates.size())
    throw Error(ErrorCode::InvalidValue, "need one p0 per candidate", "/p0");

  ScreenResult out;
  out.lambda = lambda;
  double pmin = INFINITY, pmax = 0.0;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto& cand = candidates[k];
    ReliabilityReport rep = report(cand.constellation, opt);
    pmin = std::min(pmin, rep.power);
    pmax = std::max(pmax, rep.power);
    if (std::any_of(rep.collapse.begin(), rep.collapse.end(), [](bool f) { return f; })) {
      out.rejected.push_back({cand.id, "geometric collapse"});
      continue;
    }
    double power = rep.power;
    if (const auto* common = std::get_if<double>(&p0)) power = *common;
    if (const auto* per = std::get_if<std::vector<double>>(&p0)) power = (*per)[k];
    const double nb = cand.constellation.size() >= 2 ? normalized_burden_max(cand.constellation, power) : 0.0;
    out.ranked.push_back({cand.id, joint_objective_value(nb, rep.a_min, lambda), power, nb, std::move(rep)});
  }
  out.unequal_power_warning = pmax > 0.0 && (pmax - pmin) > kPowerMismatchTolerance * pmax;
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const RankedCandidate& a, const RankedCandidate& b) { return a.objective < b.objective; });
  return out;
}

}  // namespace cauchycl

#endif  // CAUCHYCL_DESCRIPTORS_HPP
