#ifndef CAUCHYCL_GEOMETRY_HPP
#define CAUCHYCL_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "cauchycl/constellation.hpp"
#include "cauchycl/error.hpp"
#include "cauchycl/rng.hpp"

namespace cauchycl {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Arcs shorter than this are measure zero and reported as rays.
inline constexpr double kArcTolerance = 1e-12;

/// Maps any finite angle into [0, 2pi).
inline double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// Distances

struct DistanceEntry {
  std::size_t i;
  std::size_t j;
  double distance;
};

/// All M(M-1)/2 pairwise distances, ordered (0,1), (0,2), ..., (M-2,M-1).
using DistanceSpectrum = std::vector<DistanceEntry>;

inline DistanceSpectrum distance_spectrum(const Constellation& c) {
  DistanceSpectrum out;
  const std::size_t m = c.size();
  out.reserve(m * (m - 1) / 2);
  const double tol = c.duplicate_threshold();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dij = distance(c[i], c[j]);
      if (dij < tol)
        throw Error(ErrorCode::DuplicatePoint,
                    "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      out.push_back({i, j, dij});
    }
  return out;
}

inline double min_distance(const Constellation& c) {
  if (c.size() < 2) throw Error(ErrorCode::NotEnoughPoints, "min_distance needs M >= 2");
  double best = INFINITY;
  for (const auto& e : distance_spectrum(c)) best = std::min(best, e.distance);
  return best;
}

inline double diameter(const Constellation& c) {
  double best = 0.0;
  for (const auto& e : distance_spectrum(c)) best = std::max(best, e.distance);
  return best;
}

/// Prior-weighted mean squared norm.
inline double average_power(const Constellation& c) {
  double p = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) p += c.prior(i) * dot(c[i], c[i]);
  return p;
}

/// Unit vector from point i towards point j.
inline Vector pairwise_direction(const Constellation& c, std::size_t i, std::size_t j) {
  c.check_index(i);
  c.check_index(j);
  const double dij = distance(c[i], c[j]);
  if (i == j || dij < c.duplicate_threshold())
    throw Error(ErrorCode::DuplicatePoint, "direction between coincident points is undefined");
  Vector u(c.dim());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = (c[j][k] - c[i][k]) / dij;
  return u;
}

// ---------------------------------------------------------------------------
// Recession cones

/// Membership of direction `u` in the recession cone of point i, i.e.
/// u.(x_j - x_i) <= 0 for every competitor j. Boundary counts as inside.
inline bool cone_contains(const Constellation& c, std::size_t i, std::span<const double> u) {
  c.check_index(i);
  c.check_dimension(u.size(), "direction");
  const auto& xi = c[i];
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j == i) continue;
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * (c[j][k] - xi[k]);
    if (s > 0.0) return false;
  }
  return true;
}

enum class PatchKind { empty, degenerate_ray, arc, full_circle };

constexpr const char* to_string(PatchKind k) noexcept {
  switch (k) {
    case PatchKind::empty: return "empty";
    case PatchKind::degenerate_ray: return "degenerate_ray";
    case PatchKind::arc: return "arc";
    case PatchKind::full_circle: return "full_circle";
  }
  return "empty";
}

/// Recession cone of a planar point intersected with the unit circle,
/// stored as a counter-clockwise arc [start_angle, start_angle + arc_length].
struct AngularPatch2D {
  PatchKind kind = PatchKind::empty;
  double start_angle = 0.0;
  double arc_length = 0.0;

  double fraction() const {
    switch (kind) {
      case PatchKind::full_circle: return 1.0;
      case PatchKind::arc: return arc_length / kTwoPi;
      default: return 0.0;
    }
  }

  /// Angular distance from direction theta to the patch; 0 inside it.
  /// An empty patch is infinitely far from everything.
  double angular_distance(double theta) const {
    if (kind == PatchKind::full_circle) return 0.0;
    if (kind == PatchKind::empty) return INFINITY;
    const double off = wrap_angle(theta - start_angle);
    if (off <= arc_length) return 0.0;
    return std::min(off - arc_length, kTwoPi - off);
  }
};

namespace detail {

struct Arc {
  double start;
  double length;
};

// Intersection of two closed arcs; at most two pieces when both are <= pi.
inline void intersect_arcs(const Arc& a, const Arc& b, std::vector<Arc>& out) {
  const double off = wrap_angle(b.start - a.start);
  for (double lo_b : {off, off - kTwoPi}) {
    const double lo = std::max(0.0, lo_b);
    const double hi = std::min(a.length, lo_b + b.length);
    if (hi - lo >= -kArcTolerance) out.push_back({wrap_angle(a.start + lo), std::max(0.0, hi - lo)});
  }
}

inline bool same_angle(double x, double y) {
  const double d = std::abs(x - y);
  return std::min(d, kTwoPi - d) <= 1e-10;
}

}  // namespace detail

/// Exact recession-cone patch of point i for a planar constellation. Each
/// competitor j contributes the closed half-circle {theta : cos(theta -
/// phi_j) <= 0}; the patch is their intersection.
inline AngularPatch2D angular_patch_2d(const Constellation& c, std::size_t i) {
  c.check_index(i);
  if (c.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "angular patches need d = 2");
  if (c.size() == 1) return {PatchKind::full_circle, 0.0, kTwoPi};

  std::vector<detail::Arc> pieces;
  std::vector<detail::Arc> next;
  bool first = true;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j == i) continue;
    const double phi = std::atan2(c[j][1] - c[i][1], c[j][0] - c[i][0]);
    const detail::Arc half{wrap_angle(phi + 0.5 * std::numbers::pi), std::numbers::pi};
    if (first) {
      pieces.push_back(half);
      first = false;
      continue;
    }
    next.clear();
    for (const auto& a : pieces) detail::intersect_arcs(a, half, next);
    pieces.clear();
    for (const auto& p : next) {
      const bool dup = std::any_of(pieces.begin(), pieces.end(), [&](const detail::Arc& q) {
        return detail::same_angle(p.start, q.start) && std::abs(p.length - q.length) <= 1e-10;
      });
      if (!dup) pieces.push_back(p);
    }
    if (pieces.empty()) break;
  }

  if (pieces.empty()) return {PatchKind::empty, 0.0, 0.0};
  const auto widest = std::max_element(pieces.begin(), pieces.end(),
                                       [](const auto& a, const auto& b) { return a.length < b.length; });
  if (widest->length < kArcTolerance)
    return {PatchKind::degenerate_ray, wrap_angle(widest->start + 0.5 * widest->length), 0.0};
  return {PatchKind::arc, widest->start, widest->length};
}

// ---------------------------------------------------------------------------
// Angular fractions

struct Exact2D {};

/// Direction-sampling estimator, usable in any dimension.
struct SphereMc {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

using AngularMethod = std::variant<Exact2D, SphereMc>;

struct AngularFraction {
  double value = 0.0;
  double std_error = 0.0;  // binomial standard error; 0 for the exact route
  std::size_t samples = 0;  // 0 for the exact route
  std::size_t hits = 0;
  bool estimated = false;
};

/// Uniform direction on the unit sphere in R^d.
inline Vector random_direction(std::size_t d, RngStream& rng) {
  Vector u(d);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& x : u) {
      x = rng.normal();
      n2 += x * x;
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& x : u) x *= inv;
  return u;
}

inline AngularFraction angular_fraction(const Constellation& c, std::size_t i,
                                        const AngularMethod& method = Exact2D{}) {
  c.check_index(i);
  if (std::holds_alternative<Exact2D>(method)) {
    if (c.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "exact angular fraction needs d = 2");
    return {angular_patch_2d(c, i).fraction(), 0.0, 0, 0, false};
  }
  const auto& mc = std::get<SphereMc>(method);
  if (mc.samples < 1) throw Error(ErrorCode::InvalidSampleCount, "sphere_mc needs at least one sample");
  RngStream rng(mc.seed, i);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < mc.samples; ++s) {
    const Vector u = random_direction(c.dim(), rng);
    if (cone_contains(c, i, u)) ++hits;
  }
  const double n = static_cast<double>(mc.samples);
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), mc.samples, hits, true};
}

// ---------------------------------------------------------------------------
// Convex hull classification

enum class HullTag { vertex, edge_interior, interior };

constexpr const char* to_string(HullTag t) noexcept {
  switch (t) {
    case HullTag::vertex: return "vertex";
    case HullTag::edge_interior: return "edge_interior";
    case HullTag::interior: return "interior";
  }
  return "interior";
}

struct HullEntry {
  HullTag tag = HullTag::interior;
  double exterior_angle = 0.0;  // radians, vertices only
};

struct HullClass {
  std::vector<HullEntry> entries;
  bool degenerate = false;  // zero-area hull (M <= 2 or collinear)
  std::vector<std::size_t> vertices;  // counter-clockwise
};

/// Tags each planar point as hull vertex (with exterior angle), interior
/// to a hull edge, or strictly interior. Collinear sets: the two extreme
/// points are vertices with exterior angle pi, everything else interior.
/// A single point is a vertex with exterior angle 2pi.
inline HullClass hull_classify(const Constellation& c) {
  if (c.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "hull classification needs d = 2");
  const std::size_t m = c.size();
  HullClass out;
  out.entries.assign(m, HullEntry{});
  if (m == 1) {
    out.entries[0] = {HullTag::vertex, kTwoPi};
    out.vertices = {0};
    out.degenerate = true;
    return out;
  }

  std::vector<std::size_t> order(m);
  for (std::size_t k = 0; k < m; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return c[a][0] < c[b][0] || (c[a][0] == c[b][0] && c[a][1] < c[b][1]);
  });

  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (c[a][0] - c[o][0]) * (c[b][1] - c[o][1]) - (c[a][1] - c[o][1]) * (c[b][0] - c[o][0]);
  };
  // Strict left turn, relative to the edge lengths involved.
  auto left_turn = [&](std::size_t o, std::size_t a, std::size_t b) {
    const double scale = distance(c[o], c[a]) * distance(c[o], c[b]);
    return cross(o, a, b) > 1e-12 * scale;
  };

  std::vector<std::size_t> hull(2 * m);
  std::size_t k = 0;
  for (std::size_t p : order) {
    while (k >= 2 && !left_turn(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t t = m - 1, lower = k + 1; t-- > 0;) {
    const std::size_t p = order[t];
    while (k >= lower && !left_turn(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);

  if (hull.size() < 3) {
    out.degenerate = true;
    out.vertices = {order.front(), order.back()};
    out.entries[order.front()] = {HullTag::vertex, std::numbers::pi};
    out.entries[order.back()] = {HullTag::vertex, std::numbers::pi};
    return out;
  }

  out.vertices = hull;
  const std::size_t h = hull.size();
  for (std::size_t v = 0; v < h; ++v) {
    const auto& prev = c[hull[(v + h - 1) % h]];
    const auto& cur = c[hull[v]];
    const auto& nxt = c[hull[(v + 1) % h]];
    const double ix = cur[0] - prev[0], iy = cur[1] - prev[1];
    const double ox = nxt[0] - cur[0], oy = nxt[1] - cur[1];
    out.entries[hull[v]] = {HullTag::vertex, std::atan2(ix * oy - iy * ox, ix * ox + iy * oy)};
  }

  const double tol = 1e-9 * (1.0 + c.max_norm());
  for (std::size_t p = 0; p < m; ++p) {
    if (out.entries[p].tag == HullTag::vertex) continue;
    for (std::size_t v = 0; v < h; ++v) {
      const auto& a = c[hull[v]];
      const auto& b = c[hull[(v + 1) % h]];
      const double ex = b[0] - a[0], ey = b[1] - a[1];
      const double len = std::hypot(ex, ey);
      const double px = c[p][0] - a[0], py = c[p][1] - a[1];
      const double offset = std::abs(ex * py - ey * px) / len;
      const double along = (ex * px + ey * py) / len;
      if (offset <= tol && along >= -tol && along <= len + tol) {
        out.entries[p].tag = HullTag::edge_interior;
        break;
      }
    }
  }
  return out;
}

}  // namespace cauchycl

#endif  // CAUCHYCL_GEOMETRY_HPP
