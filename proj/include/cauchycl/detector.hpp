#ifndef CAUCHYCL_DETECTOR_HPP
#define CAUCHYCL_DETECTOR_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "cauchycl/constellation.hpp"
#include "cauchycl/error.hpp"
#include "cauchycl/noise.hpp"
#include "cauchycl/rng.hpp"

namespace cauchycl {

/// Nearest-point decision; exact ties go to the lowest index.
inline std::size_t ml_decode(const Constellation& c, std::span<const double> y) {
  c.check_dimension(y.size(), "observation");
  std::size_t best = 0;
  double best_d2 = INFINITY;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double t = y[k] - c[i][k];
      d2 += t * t;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

/// Likelihood-maximizing decision under the Cauchy model. Shares the
/// lowest-index tie rule with ml_decode.
inline std::size_t ml_decode_via_likelihood(const Constellation& c, std::span<const double> y,
                                            const NoiseModel& m) {
  c.check_dimension(y.size(), "observation");
  if (m.dim() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "noise model dimension differs");
  std::size_t best = 0;
  double best_ll = -INFINITY;
  Vector diff(c.dim());
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t k = 0; k < y.size(); ++k) diff[k] = y[k] - c[i][k];
    const double ll = log_density(m, diff);
    if (ll > best_ll) {
      best_ll = ll;
      best = i;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Binomial confidence intervals

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double halfwidth() const { return 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Wilson score interval for `successes` out of `trials`.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // Pin the endpoints at the boundary cases, where rounding leaves residue.
  return {successes == 0 ? 0.0 : std::max(0.0, center - half),
          successes == trials ? 1.0 : std::min(1.0, center + half)};
}

// ---------------------------------------------------------------------------
// Monte Carlo estimation

struct McConfig {
  std::uint64_t n_samples = 500000;
  std::uint64_t batch_size = 100000;
  std::uint64_t seed = 2026;
  std::optional<std::vector<double>> priors;  // overrides the constellation's
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (n_samples < 1) throw Error(ErrorCode::InvalidSampleCount, "n_samples must be >= 1", "/samples");
    if (batch_size < 1) throw Error(ErrorCode::InvalidSampleCount, "batch_size must be >= 1", "/batch");
  }
};

struct McEstimate {
  double gamma = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t batch_size = 0;
  std::uint64_t seed = 0;

  double avg_error = 0.0;
  double avg_correct = 1.0;
  double avg_ci95_halfwidth = 0.0;
  Interval avg_error_ci;

  std::vector<std::uint64_t> per_symbol_trials;
  std::vector<std::uint64_t> per_symbol_correct_count;
  std::vector<double> per_symbol_error;
  std::vector<double> per_symbol_correct;
  std::vector<double> per_symbol_ci95_halfwidth;
  std::vector<Interval> per_symbol_error_ci;

  std::size_t worst_symbol() const {
    return static_cast<std::size_t>(
        std::max_element(per_symbol_error.begin(), per_symbol_error.end()) - per_symbol_error.begin());
  }
  double worst_error() const { return per_symbol_error[worst_symbol()]; }
  double worst_correct() const { return per_symbol_correct[worst_symbol()]; }
  double worst_ci95_halfwidth() const { return per_symbol_ci95_halfwidth[worst_symbol()]; }
};

namespace detail {

struct TrialCounts {
  std::vector<std::uint64_t> trials;
  std::vector<std::uint64_t> correct;
};

inline std::size_t draw_symbol(std::span<const double> cumulative, double u) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
  if (idx >= cumulative.size()) {
    // u beyond a rounded-down total: take the last symbol with mass.
    idx = cumulative.size() - 1;
    while (idx > 0 && cumulative[idx] == cumulative[idx - 1]) --idx;
  }
  return idx;
}

inline void run_batch(const Constellation& c, const NoiseModel& m, std::span<const double> cumulative,
                      RngStream& rng, std::uint64_t trials, TrialCounts& counts) {
  const std::size_t d = c.dim();
  Vector y(d);
  auto normal = [&rng] { return rng.normal(); };
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t sent = draw_symbol(cumulative, rng.uniform());
    sample_into(m, normal, std::span<double>(y));
    for (std::size_t k = 0; k < d; ++k) y[k] += c[sent][k];
    ++counts.trials[sent];
    if (ml_decode(c, y) == sent) ++counts.correct[sent];
  }
}

/// Runs all batches of one estimate. Batch b draws from substream
/// (stream_outer, b); counts are integers, so the merged result does not
/// depend on which worker ran which batch.
inline McEstimate estimate_on_substreams(const Constellation& c, const NoiseModel& m, const McConfig& cfg,
                                         std::uint64_t stream_outer) {
  cfg.validate();
  if (m.dim() != c.dim()) throw Error(ErrorCode::DimensionMismatch, "noise model dimension differs");
  const std::size_t msym = c.size();
  const std::vector<double> priors =
      cfg.priors ? Constellation(c.points(), cfg.priors).priors() : c.priors();
  std::vector<double> cumulative(msym);
  double acc = 0.0;
  for (std::size_t i = 0; i < msym; ++i) cumulative[i] = (acc += priors[i]);

  const std::uint64_t n_batches = (cfg.n_samples + cfg.batch_size - 1) / cfg.batch_size;
  std::vector<TrialCounts> per_batch(n_batches, TrialCounts{std::vector<std::uint64_t>(msym, 0),
                                                            std::vector<std::uint64_t>(msym, 0)});
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < n_batches; b = next++) {
      RngStream rng(cfg.seed, substream_key(stream_outer, b));
      const std::uint64_t trials = std::min(cfg.batch_size, cfg.n_samples - b * cfg.batch_size);
      run_batch(c, m, cumulative, rng, trials, per_batch[b]);
    }
  };
  unsigned n_threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::uint64_t>(n_threads, n_batches));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  McEstimate est;
  est.gamma = m.gamma();
  est.n_samples = cfg.n_samples;
  est.batch_size = cfg.batch_size;
  est.seed = cfg.seed;
  est.per_symbol_trials.assign(msym, 0);
  est.per_symbol_correct_count.assign(msym, 0);
  for (const auto& bc : per_batch)
    for (std::size_t i = 0; i < msym; ++i) {
      est.per_symbol_trials[i] += bc.trials[i];
      est.per_symbol_correct_count[i] += bc.correct[i];
    }

  std::uint64_t total_correct = 0;
  for (std::size_t i = 0; i < msym; ++i) {
    const std::uint64_t n = est.per_symbol_trials[i];
    const std::uint64_t ok = est.per_symbol_correct_count[i];
    total_correct += ok;
    const double err = n ? static_cast<double>(n - ok) / static_cast<double>(n) : 0.0;
    const Interval ci = wilson_interval(n - ok, n);
    est.per_symbol_error.push_back(err);
    est.per_symbol_correct.push_back(1.0 - err);
    est.per_symbol_error_ci.push_back(ci);
    est.per_symbol_ci95_halfwidth.push_back(ci.halfwidth());
  }
  est.avg_error = static_cast<double>(cfg.n_samples - total_correct) / static_cast<double>(cfg.n_samples);
  est.avg_correct = 1.0 - est.avg_error;
  est.avg_error_ci = wilson_interval(cfg.n_samples - total_correct, cfg.n_samples);
  est.avg_ci95_halfwidth = est.avg_error_ci.halfwidth();
  return est;
}

}  // namespace detail

/// Seeded Monte Carlo estimate of symbol error / correct-decision rates.
/// A pure function of (constellation, model, cfg minus thread count).
inline McEstimate estimate(const Constellation& c, const NoiseModel& m, const McConfig& cfg = {}) {
  return detail::estimate_on_substreams(c, m, cfg, 0);
}

struct SweepPoint {
  double gamma;
  McEstimate estimate;
};

/// One independent estimate per gamma; grid entry k uses substreams (k, b).
inline std::vector<SweepPoint> sweep(const Constellation& c, std::span<const double> gammas,
                                     const McConfig& cfg = {}) {
  if (gammas.empty()) throw Error(ErrorCode::EmptyGrid, "gamma grid is empty", "/gammas");
  std::vector<SweepPoint> out;
  out.reserve(gammas.size());
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (!(gammas[k] > 0.0))
      throw Error(ErrorCode::NonpositiveInput, "gamma must be positive", "/gammas/" + std::to_string(k));
    const NoiseModel m(gammas[k], c.dim());
    out.push_back({gammas[k], detail::estimate_on_substreams(c, m, cfg, k)});
  }
  return out;
}

}  // namespace cauchycl

#endif  // CAUCHYCL_DETECTOR_HPP
