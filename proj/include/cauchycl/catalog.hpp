#ifndef CAUCHYCL_CATALOG_HPP
#define CAUCHYCL_CATALOG_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "cauchycl/constellation.hpp"
#include "cauchycl/error.hpp"

namespace cauchycl {

struct CatalogEntry {
  std::string name;
  Constellation constellation;
  std::string provenance;
};

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"asym4", "qam4", "pentagon5", "cross5", "rect4", "kite4"};
  return names;
}

inline bool catalog_has(std::string_view name) {
  for (const auto& n : catalog_names())
    if (n == name) return true;
  return false;
}

inline CatalogEntry catalog_get(std::string_view name) {
  using std::sqrt;
  auto make = [&](std::vector<Point> pts, std::vector<std::string> labels, std::string prov) {
    return CatalogEntry{std::string(name), Constellation(std::move(pts), std::nullopt, std::move(labels), std::string(name)),
                        std::move(prov)};
  };
  if (name == "asym4")
    return make({{0, 0}, {1, 0}, {0, 1}, {0, -1}}, {"P1", "P2", "P3", "P4"},
                "asymmetric four-point worked example with an interior symbol");
  if (name == "qam4")
    return make({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, {"Q1", "Q2", "Q3", "Q4"}, "standard 4QAM");
  if (name == "pentagon5") {
    std::vector<Point> pts;
    for (int k = 0; k < 5; ++k) {
      const double t = 2.0 * std::numbers::pi * k / 5.0;
      pts.push_back({std::cos(t), std::sin(t)});
    }
    return make(std::move(pts), {"V0", "V1", "V2", "V3", "V4"}, "regular pentagon on the unit circle, power 1");
  }
  if (name == "cross5") {
    const double r = sqrt(5.0 / 4.0);
    return make({{0, 0}, {r, 0}, {-r, 0}, {0, r}, {0, -r}}, {"C", "E", "W", "N", "S"},
                "cross with a center symbol, power 1");
  }
  if (name == "rect4") {
    const double h = sqrt(3.0 / 8.0);
    return make({{0.5, h}, {-0.5, h}, {-0.5, -h}, {0.5, -h}}, {"R1", "R2", "R3", "R4"},
                "rectangle with d_min 1 and power 5/8");
  }
  if (name == "kite4")
    return make({{0, 1}, {0.5, 0}, {0, -1}, {-0.5, 0}}, {"K1", "K2", "K3", "K4"},
                "kite with d_min 1 and power 5/8");
  throw Error(ErrorCode::UnknownName, "no catalog constellation named '" + std::string(name) + "'");
}

}  // namespace cauchycl

#endif  // CAUCHYCL_CATALOG_HPP
