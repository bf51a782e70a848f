#ifndef CAUCHYCL_IO_HPP
#define CAUCHYCL_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cauchycl/bounds.hpp"
#include "cauchycl/constellation.hpp"
#include "cauchycl/descriptors.hpp"
#include "cauchycl/detector.hpp"
#include "cauchycl/error.hpp"
#include "cauchycl/geometry.hpp"

namespace cauchycl {

using json = nlohmann::ordered_json;

/// Decimal text with 17 significant digits; round-trips every double.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline void dump_json_into(const json& j, std::string& out, int indent, int level) {
  const auto newline = [&](int lvl) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_json_into(it.value(), out, indent, level + 1);
      }
      newline(level);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        dump_json_into(v, out, indent, level + 1);
      }
      newline(level);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Serializes with every floating value at 17 significant digits.
inline std::string dump_json(const json& j, int indent = 2) {
  std::string out;
  detail::dump_json_into(j, out, indent, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Constellation file schema: {name, dim, points, priors?, labels?}

inline json to_json(const Constellation& c) {
  json j = json::object();
  j["name"] = c.name();
  j["dim"] = c.dim();
  j["points"] = c.points();
  if (c.explicit_priors()) j["priors"] = *c.explicit_priors();
  if (c.labels()) j["labels"] = *c.labels();
  return j;
}

/// Builds a constellation from the file schema. `base` prefixes the field
/// paths reported in errors (e.g. "/candidates/1").
inline Constellation constellation_from_json(const json& j, const std::string& base = "") {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "constellation must be an object", base.empty() ? "/" : base);
  if (!j.contains("points")) throw Error(ErrorCode::ParseError, "missing field 'points'", base + "/points");
  const json& pts = j.at("points");
  if (!pts.is_array()) throw Error(ErrorCode::ParseError, "'points' must be an array", base + "/points");
  std::vector<Point> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string path = base + "/points/" + std::to_string(i);
    if (!pts[i].is_array()) throw Error(ErrorCode::ParseError, "point must be an array of numbers", path);
    Point p;
    for (std::size_t k = 0; k < pts[i].size(); ++k) {
      if (!pts[i][k].is_number())
        throw Error(ErrorCode::ParseError, "coordinate must be a number", path + "/" + std::to_string(k));
      p.push_back(pts[i][k].get<double>());
    }
    points.push_back(std::move(p));
  }
  if (j.contains("dim")) {
    if (!j["dim"].is_number_unsigned()) throw Error(ErrorCode::ParseError, "'dim' must be a positive integer", base + "/dim");
    const auto d = j["dim"].get<std::size_t>();
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].size() != d)
        throw Error(ErrorCode::DimensionMismatch,
                    "point " + std::to_string(i) + " has dimension " + std::to_string(points[i].size()) +
                        ", file declares " + std::to_string(d),
                    base + "/points/" + std::to_string(i));
  }
  std::optional<std::vector<double>> priors;
  if (j.contains("priors") && !j["priors"].is_null()) {
    if (!j["priors"].is_array()) throw Error(ErrorCode::ParseError, "'priors' must be an array", base + "/priors");
    priors.emplace();
    for (std::size_t i = 0; i < j["priors"].size(); ++i) {
      if (!j["priors"][i].is_number())
        throw Error(ErrorCode::ParseError, "prior must be a number", base + "/priors/" + std::to_string(i));
      priors->push_back(j["priors"][i].get<double>());
    }
  }
  std::optional<std::vector<std::string>> labels;
  if (j.contains("labels") && !j["labels"].is_null()) {
    if (!j["labels"].is_array()) throw Error(ErrorCode::ParseError, "'labels' must be an array", base + "/labels");
    labels.emplace();
    for (std::size_t i = 0; i < j["labels"].size(); ++i) {
      if (!j["labels"][i].is_string())
        throw Error(ErrorCode::ParseError, "label must be a string", base + "/labels/" + std::to_string(i));
      labels->push_back(j["labels"][i].get<std::string>());
    }
  }
  std::string name;
  if (j.contains("name") && j["name"].is_string()) name = j["name"].get<std::string>();
  try {
    return Constellation(std::move(points), std::move(priors), std::move(labels), std::move(name));
  } catch (const Error& e) {
    throw Error(e.code(), e.message(), base + e.field());
  }
}

/// Parses JSON text, turning syntax errors into ParseError with a line number.
inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto ? upto - 1 : 0), '\n');
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + e.what());
  }
}

inline Constellation parse_constellation(const std::string& text) {
  return constellation_from_json(parse_json_text(text));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

inline Constellation load_constellation(const std::string& path) {
  try {
    return parse_constellation(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) throw;
    throw Error(e.code(), path + ": " + e.message(), e.field());
  }
}

inline void save_constellation(const std::string& path, const Constellation& c) {
  write_text_file(path, dump_json(to_json(c)) + "\n");
}

// ---------------------------------------------------------------------------
// Result payloads

inline json to_json(const AngularPatch2D& p) {
  return json{{"kind", to_string(p.kind)},
              {"start_angle", p.start_angle},
              {"arc_length", p.arc_length},
              {"fraction", p.fraction()}};
}

inline json to_json(const ReliabilityReport& r) {
  json j = json::object();
  j["m"] = r.m;
  j["dim"] = r.dim;
  j["angles_estimated"] = r.angles_estimated;
  j["A"] = r.angular;
  if (r.angles_estimated) j["A_std_error"] = r.angular_std_error;
  j["a_min"] = r.a_min;
  j["collapse"] = r.collapse;
  j["large_noise_pc"] = r.large_noise_correct;
  j["large_noise_pe"] = r.large_noise_error;
  j["large_noise_avg_pc"] = r.large_noise_avg_correct;
  j["large_noise_avg_pe"] = r.large_noise_avg_error;
  j["B"] = r.burden;
  j["b_max"] = r.b_max;
  j["normalized_b_max"] = r.normalized_b_max;
  if (!r.hull.empty()) {
    json hull = json::array();
    for (const auto& h : r.hull) {
      json e{{"tag", to_string(h.tag)}};
      if (h.tag == HullTag::vertex) e["exterior_angle"] = h.exterior_angle;
      hull.push_back(std::move(e));
    }
    j["hull"] = std::move(hull);
  }
  j["power"] = r.power;
  j["d_min"] = r.d_min;
  return j;
}

inline json to_json(const BoundReport& r) {
  json j = json::object();
  j["gamma"] = r.gamma;
  j["per_symbol_exact_bound"] = r.per_symbol_exact_bound;
  j["per_symbol_exact_bound_clamped"] = r.per_symbol_exact_bound_clamped;
  j["avg_exact_bound"] = r.avg_exact_bound;
  j["avg_exact_bound_clamped"] = r.avg_exact_bound_clamped;
  json per = json::array();
  for (const auto& a : r.per_symbol_asymptotic) per.push_back({{"coefficient", a.coefficient}, {"value", a.value}});
  j["per_symbol_asymptotic"] = std::move(per);
  j["avg_asymptotic"] = {{"coefficient", r.avg_asymptotic.coefficient}, {"value", r.avg_asymptotic.value}};
  return j;
}

inline json to_json(const McEstimate& e) {
  json j = json::object();
  j["gamma"] = e.gamma;
  j["n_samples"] = e.n_samples;
  j["batch_size"] = e.batch_size;
  j["seed"] = e.seed;
  j["avg_error"] = e.avg_error;
  j["avg_correct"] = e.avg_correct;
  j["avg_ci95_halfwidth"] = e.avg_ci95_halfwidth;
  j["per_symbol_trials"] = e.per_symbol_trials;
  j["per_symbol_error"] = e.per_symbol_error;
  j["per_symbol_correct"] = e.per_symbol_correct;
  j["per_symbol_ci95_halfwidth"] = e.per_symbol_ci95_halfwidth;
  return j;
}

inline json to_json(const ScreenResult& s) {
  json j = json::object();
  j["lambda"] = s.lambda;
  json rej = json::array();
  for (const auto& r : s.rejected) rej.push_back({{"id", r.id}, {"reason", r.reason}});
  j["rejected"] = std::move(rej);
  json ranked = json::array();
  for (const auto& r : s.ranked)
    ranked.push_back({{"id", r.id},
                      {"objective", r.objective},
                      {"p0", r.p0},
                      {"normalized_b_max", r.normalized_b_max},
                      {"report", to_json(r.report)}});
  j["ranked"] = std::move(ranked);
  j["unequal_power_warning"] = s.unequal_power_warning;
  return j;
}

}  // namespace cauchycl

#endif  // CAUCHYCL_IO_HPP
