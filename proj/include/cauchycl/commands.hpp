#ifndef CAUCHYCL_COMMANDS_HPP
#define CAUCHYCL_COMMANDS_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cauchycl/bounds.hpp"
#include "cauchycl/catalog.hpp"
#include "cauchycl/descriptors.hpp"
#include "cauchycl/detector.hpp"
#include "cauchycl/error.hpp"
#include "cauchycl/io.hpp"

namespace cauchycl::cli {

enum class OutputFormat { table, csv, json };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::table;
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw Error(ErrorCode::InvalidValue, "unknown output format '" + s + "' (expected table, csv or json)", "/format");
}

/// Catalog name first, otherwise a path to a constellation file.
inline Constellation resolve_constellation(const std::string& ref) {
  if (catalog_has(ref)) return catalog_get(ref).constellation;
  return load_constellation(ref);
}

/// Comma-separated gamma grid; values must be positive and strictly increasing.
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "grid entry '" + item + "' is not a number", "/grid");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw Error(ErrorCode::ParseError, "grid entry '" + item + "' is not a number", "/grid");
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::NonpositiveInput, "grid values must be positive", "/grid/" + std::to_string(grid.size()));
    if (!grid.empty() && !(v > grid.back()))
      throw Error(ErrorCode::InvalidValue, "grid must be strictly increasing", "/grid/" + std::to_string(grid.size()));
    grid.push_back(v);
  }
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "gamma grid is empty", "/grid");
  return grid;
}

// ---------------------------------------------------------------------------
// Configuration: command-line flag > CCL_* environment variable > config file

class SettingResolver {
 public:
  using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

  static std::optional<std::string> process_env(const std::string& name) {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  }

  explicit SettingResolver(json config = json::object(), EnvLookup env = process_env)
      : config_(std::move(config)), env_(std::move(env)) {}

  static SettingResolver from_file(const std::optional<std::string>& path, EnvLookup env = process_env) {
    std::optional<std::string> p = path;
    if (!p) p = env("CCL_CONFIG");
    if (!p) return SettingResolver(json::object(), std::move(env));
    json cfg = parse_json_text(read_text_file(*p));
    if (!cfg.is_object()) throw Error(ErrorCode::ParseError, *p + ": config file must be a JSON object");
    return SettingResolver(std::move(cfg), std::move(env));
  }

  /// `key` is the long flag name without dashes, e.g. "seed" or "mc_cap".
  std::optional<std::string> get(const std::string& key, const std::optional<std::string>& flag) const {
    if (flag) return flag;
    std::string env_name = "CCL_";
    for (char ch : key) env_name += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (auto v = env_(env_name)) return v;
    if (config_.contains(key)) {
      const json& v = config_[key];
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_float()) return format_number(v.get<double>());
      return v.dump();
    }
    return std::nullopt;
  }

  std::string get_or(const std::string& key, const std::optional<std::string>& flag, std::string fallback) const {
    auto v = get(key, flag);
    return v ? *v : std::move(fallback);
  }

 private:
  json config_;
  EnvLookup env_;
};

inline std::uint64_t parse_count(const std::string& s, const std::string& field) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "'" + s + "' is not a nonnegative integer", "/" + field);
  }
  if (used != s.size()) throw Error(ErrorCode::ParseError, "'" + s + "' is not a nonnegative integer", "/" + field);
  return v;
}

inline double parse_real(const std::string& s, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "'" + s + "' is not a number", "/" + field);
  }
  if (used != s.size()) throw Error(ErrorCode::ParseError, "'" + s + "' is not a number", "/" + field);
  return v;
}

// ---------------------------------------------------------------------------
// Plain-text rendering

class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (width.size() <= k) width.push_back(0);
        width[k] = std::max(width[k], r[k].size());
      }
    std::string out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::size_t k = 0; k < rows_[i].size(); ++k) {
        if (k) out += "  ";
        out += rows_[i][k];
        if (k + 1 < rows_[i].size()) out.append(width[k] - rows_[i][k].size(), ' ');
      }
      out += '\n';
      if (i == 0) {
        std::size_t total = 0;
        for (std::size_t k = 0; k < width.size(); ++k) total += width[k] + (k ? 2 : 0);
        out.append(total, '-');
        out += '\n';
      }
    }
    return out;
  }

  std::string csv() const {
    std::string out;
    for (const auto& r : rows_) {
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (k) out += ',';
        out += r[k];
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Full precision for csv/json, six digits for human-facing tables.
inline std::string num(double x, OutputFormat fmt) {
  return fmt == OutputFormat::table ? short_number(x) : format_number(x);
}

// ---------------------------------------------------------------------------
// analyze

inline std::string render_analyze(const Constellation& c, OutputFormat fmt) {
  const ReliabilityReport r = report(c);
  if (fmt == OutputFormat::json) return dump_json(to_json(r)) + "\n";
  Table t({"index", "label", "A", "collapse", "B", "large_noise_pc", "large_noise_pe", "hull", "exterior_angle"});
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::string hull = "-", ext = "-";
    if (!r.hull.empty()) {
      hull = to_string(r.hull[i].tag);
      if (r.hull[i].tag == HullTag::vertex) ext = num(r.hull[i].exterior_angle, fmt);
    }
    t.add({std::to_string(i), c.label(i), num(r.angular[i], fmt), r.collapse[i] ? "yes" : "no",
           r.burden.empty() ? "-" : num(r.burden[i], fmt), num(r.large_noise_correct[i], fmt),
           num(r.large_noise_error[i], fmt), hull, ext});
  }
  if (fmt == OutputFormat::csv) return t.csv();
  std::string out = t.str();
  out += "\na_min = " + num(r.a_min, fmt) + "   b_max = " + num(r.b_max, fmt) +
         "   normalized b_max = " + num(r.normalized_b_max, fmt) + "\n";
  out += "power = " + num(r.power, fmt) + "   d_min = " + num(r.d_min, fmt) +
         "   large-noise average P_c = " + num(r.large_noise_avg_correct, fmt) + "\n";
  if (r.angles_estimated) out += "(angular fractions estimated by direction sampling)\n";
  return out;
}

// ---------------------------------------------------------------------------
// bound

inline std::string render_bound(const Constellation& c, const std::vector<double>& grid, OutputFormat fmt) {
  std::vector<BoundReport> reps;
  for (double g : grid) reps.push_back(bound_report(c, g));
  if (fmt == OutputFormat::json) {
    json arr = json::array();
    for (const auto& r : reps) arr.push_back(to_json(r));
    return dump_json(arr) + "\n";
  }
  std::vector<std::string> header{"gamma", "union_bound", "asymptotic"};
  for (std::size_t i = 0; i < c.size(); ++i) {
    header.push_back("union_bound_" + c.label(i));
    header.push_back("asymptotic_" + c.label(i));
  }
  Table t(std::move(header));
  for (const auto& r : reps) {
    std::vector<std::string> row{num(r.gamma, fmt), num(r.avg_exact_bound, fmt), num(r.avg_asymptotic.value, fmt)};
    for (std::size_t i = 0; i < c.size(); ++i) {
      row.push_back(num(r.per_symbol_exact_bound[i], fmt));
      row.push_back(num(r.per_symbol_asymptotic[i].value, fmt));
    }
    t.add(std::move(row));
  }
  return fmt == OutputFormat::csv ? t.csv() : t.str();
}

// ---------------------------------------------------------------------------
// mc

inline std::string render_mc(const Constellation& c, const std::vector<double>& grid, const McConfig& cfg,
                             OutputFormat fmt) {
  const auto pts = sweep(c, grid, cfg);
  if (fmt == OutputFormat::json) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(to_json(p.estimate));
    return dump_json(arr) + "\n";
  }
  std::vector<std::string> header{"gamma", "avg_error", "avg_correct", "ci95"};
  for (std::size_t i = 0; i < c.size(); ++i) {
    header.push_back("error_" + c.label(i));
    header.push_back("ci95_" + c.label(i));
  }
  Table t(std::move(header));
  for (const auto& p : pts) {
    const auto& e = p.estimate;
    std::vector<std::string> row{num(p.gamma, fmt), num(e.avg_error, fmt), num(e.avg_correct, fmt),
                                 num(e.avg_ci95_halfwidth, fmt)};
    for (std::size_t i = 0; i < c.size(); ++i) {
      row.push_back(num(e.per_symbol_error[i], fmt));
      row.push_back(num(e.per_symbol_ci95_halfwidth[i], fmt));
    }
    t.add(std::move(row));
  }
  std::string out = fmt == OutputFormat::csv ? t.csv() : t.str();
  if (fmt == OutputFormat::table)
    out += "\nsamples per gamma = " + std::to_string(cfg.n_samples) + ", batch = " + std::to_string(cfg.batch_size) +
           ", seed = " + std::to_string(cfg.seed) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// screen

inline std::string render_screen(const std::vector<Candidate>& cands, double lambda, const PowerSpec& p0,
                                 OutputFormat fmt) {
  const ScreenResult s = screen(cands, lambda, p0);
  if (fmt == OutputFormat::json) return dump_json(to_json(s)) + "\n";
  Table t({"rank", "id", "status", "J", "a_min", "normalized_b_max", "p0", "reason"});
  std::size_t rank = 1;
  for (const auto& r : s.ranked)
    t.add({std::to_string(rank++), r.id, "ranked", num(r.objective, fmt), num(r.report.a_min, fmt),
           num(r.normalized_b_max, fmt), num(r.p0, fmt), "-"});
  for (const auto& r : s.rejected) t.add({"-", r.id, "rejected", "-", "-", "-", "-", r.reason});
  std::string out = fmt == OutputFormat::csv ? t.csv() : t.str();
  if (fmt == OutputFormat::table && s.unequal_power_warning)
    out += "\nwarning: candidates have unequal average power; compare with a common --p0\n";
  return out;
}

// ---------------------------------------------------------------------------
// reproduce

inline const std::vector<double>& small_noise_grid() {
  static const std::vector<double> g{0.01, 0.012, 0.015, 0.02, 0.03, 0.04, 0.06, 0.08, 0.12};
  return g;
}
inline const std::vector<double>& large_noise_grid() {
  static const std::vector<double> g{0.2, 0.3, 0.5, 0.7, 1, 1.5, 2, 3, 5, 8, 12, 20, 30};
  return g;
}
inline const std::vector<double>& hull_grid() {
  static const std::vector<double> g{0.3, 0.5, 0.7, 1, 1.5, 2, 3, 5, 8, 12, 20, 30};
  return g;
}
inline const std::vector<double>& burden_grid() { return small_noise_grid(); }

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> n{"small-noise", "large-noise", "hull", "burden"};
  return n;
}

struct ReproduceOptions {
  std::string experiment = "all";
  std::string out_dir = ".";
  McConfig mc;
};

namespace detail {

inline std::string write_csv(const std::string& dir, const std::string& name, const Table& t) {
  const std::string path = (std::filesystem::path(dir) / name).string();
  write_text_file(path, t.csv());
  return path;
}

inline std::string f(double x) { return format_number(x); }

inline std::vector<std::string> reproduce_small_noise(const ReproduceOptions& o) {
  const Constellation c = catalog_get("asym4").constellation;
  const auto& grid = small_noise_grid();
  const auto pts = sweep(c, grid, o.mc);
  Table avg({"gamma", "mc_avg_err", "ci", "union_bound", "asymptotic"});
  std::vector<std::string> h{"gamma"};
  for (std::size_t i = 0; i < c.size(); ++i)
    for (const char* col : {"mc_err_", "ci_", "union_bound_", "asymptotic_"}) h.push_back(col + c.label(i));
  Table per(std::move(h));
  for (const auto& p : pts) {
    const auto b = bound_report(c, p.gamma);
    avg.add({f(p.gamma), f(p.estimate.avg_error), f(p.estimate.avg_ci95_halfwidth), f(b.avg_exact_bound),
             f(b.avg_asymptotic.value)});
    std::vector<std::string> row{f(p.gamma)};
    for (std::size_t i = 0; i < c.size(); ++i) {
      row.push_back(f(p.estimate.per_symbol_error[i]));
      row.push_back(f(p.estimate.per_symbol_ci95_halfwidth[i]));
      row.push_back(f(b.per_symbol_exact_bound[i]));
      row.push_back(f(b.per_symbol_asymptotic[i].value));
    }
    per.add(std::move(row));
  }
  return {write_csv(o.out_dir, "fig1a_small_noise_average.csv", avg),
          write_csv(o.out_dir, "fig1b_small_noise_per_symbol.csv", per)};
}

inline std::vector<std::string> reproduce_large_noise(const ReproduceOptions& o) {
  const Constellation c = catalog_get("asym4").constellation;
  const ReliabilityReport rep = report(c);
  const auto pts = sweep(c, large_noise_grid(), o.mc);
  Table avg({"gamma", "mc_avg_correct", "ci", "limit"});
  std::vector<std::string> h{"gamma"};
  for (std::size_t i = 0; i < c.size(); ++i)
    for (const char* col : {"mc_correct_", "ci_", "limit_"}) h.push_back(col + c.label(i));
  Table per(std::move(h));
  for (const auto& p : pts) {
    avg.add({f(p.gamma), f(p.estimate.avg_correct), f(p.estimate.avg_ci95_halfwidth), f(rep.large_noise_avg_correct)});
    std::vector<std::string> row{f(p.gamma)};
    for (std::size_t i = 0; i < c.size(); ++i) {
      row.push_back(f(p.estimate.per_symbol_correct[i]));
      row.push_back(f(p.estimate.per_symbol_ci95_halfwidth[i]));
      row.push_back(f(rep.large_noise_correct[i]));
    }
    per.add(std::move(row));
  }
  return {write_csv(o.out_dir, "fig1c_large_noise_average.csv", avg),
          write_csv(o.out_dir, "fig1d_large_noise_per_symbol.csv", per)};
}

inline std::vector<std::string> reproduce_hull(const ReproduceOptions& o) {
  const Constellation pent = catalog_get("pentagon5").constellation;
  const Constellation cross = catalog_get("cross5").constellation;
  const auto rp = report(pent), rc = report(cross);
  const auto sp = sweep(pent, hull_grid(), o.mc);
  const auto sc = sweep(cross, hull_grid(), o.mc);
  Table avg({"gamma", "pentagon_avg_correct", "pentagon_ci", "cross_avg_correct", "cross_ci", "limit"});
  Table worst({"gamma", "pentagon_worst_correct", "pentagon_ci", "cross_worst_correct", "cross_ci",
               "pentagon_a_min", "cross_a_min"});
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const auto& ep = sp[k].estimate;
    const auto& ec = sc[k].estimate;
    avg.add({f(sp[k].gamma), f(ep.avg_correct), f(ep.avg_ci95_halfwidth), f(ec.avg_correct),
             f(ec.avg_ci95_halfwidth), f(rp.large_noise_avg_correct)});
    worst.add({f(sp[k].gamma), f(ep.worst_correct()), f(ep.worst_ci95_halfwidth()), f(ec.worst_correct()),
               f(ec.worst_ci95_halfwidth()), f(rp.a_min), f(rc.a_min)});
  }
  return {write_csv(o.out_dir, "fig2_hull_average.csv", avg),
          write_csv(o.out_dir, "fig2_hull_worst_symbol.csv", worst)};
}

inline std::vector<std::string> reproduce_burden(const ReproduceOptions& o) {
  const Constellation rect = catalog_get("rect4").constellation;
  const Constellation kite = catalog_get("kite4").constellation;
  const double br = burden_max(rect), bk = burden_max(kite);
  const auto sr = sweep(rect, burden_grid(), o.mc);
  const auto sk = sweep(kite, burden_grid(), o.mc);
  Table avg({"gamma", "rect_avg_err", "rect_ci", "kite_avg_err", "kite_ci"});
  Table worst({"gamma", "rect_worst_err", "rect_ci", "kite_worst_err", "kite_ci", "rect_surrogate", "kite_surrogate"});
  for (std::size_t k = 0; k < sr.size(); ++k) {
    const auto& er = sr[k].estimate;
    const auto& ek = sk[k].estimate;
    const double g = sr[k].gamma;
    avg.add({f(g), f(er.avg_error), f(er.avg_ci95_halfwidth), f(ek.avg_error), f(ek.avg_ci95_halfwidth)});
    worst.add({f(g), f(er.worst_error()), f(er.worst_ci95_halfwidth()), f(ek.worst_error()),
               f(ek.worst_ci95_halfwidth()), f(2.0 * g / std::numbers::pi * br), f(2.0 * g / std::numbers::pi * bk)});
  }
  return {write_csv(o.out_dir, "fig3_burden_average.csv", avg),
          write_csv(o.out_dir, "fig3_burden_worst_symbol.csv", worst)};
}

}  // namespace detail

/// Runs one named experiment (or "all") and returns the CSV paths written.
inline std::vector<std::string> reproduce(const ReproduceOptions& o) {
  std::filesystem::create_directories(o.out_dir);
  std::vector<std::string> written;
  auto append = [&](std::vector<std::string> v) { written.insert(written.end(), v.begin(), v.end()); };
  const bool all = o.experiment == "all";
  bool known = all;
  if (all || o.experiment == "small-noise") append(detail::reproduce_small_noise(o)), known = true;
  if (all || o.experiment == "large-noise") append(detail::reproduce_large_noise(o)), known = true;
  if (all || o.experiment == "hull") append(detail::reproduce_hull(o)), known = true;
  if (all || o.experiment == "burden") append(detail::reproduce_burden(o)), known = true;
  if (!known)
    throw Error(ErrorCode::UnknownName,
                "unknown experiment '" + o.experiment + "' (expected small-noise, large-noise, hull, burden or all)",
                "/experiment");
  return written;
}

}  // namespace cauchycl::cli

#endif  // CAUCHYCL_COMMANDS_HPP
