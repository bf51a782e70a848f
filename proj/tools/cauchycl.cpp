// Command-line front end: analyze, bound, mc, screen, reproduce, serve.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cauchycl/commands.hpp"
#include "cauchycl/service.hpp"

namespace {

using namespace cauchycl;
using namespace cauchycl::cli;

using Opt = std::optional<std::string>;

struct Flags {
  Opt config;
  std::vector<std::string> refs;
  Opt format, out, gamma, grid, samples, batch, seed, threads, lambda, p0, experiment, bind;
};

void emit(const SettingResolver& s, const Flags& f, const std::string& text) {
  if (auto path = s.get("out", f.out)) {
    write_text_file(*path, text);
    return;
  }
  std::cout << text;
}

std::vector<double> resolve_grid(const SettingResolver& s, const Flags& f) {
  if (f.gamma && f.grid) throw Error(ErrorCode::InvalidValue, "give either --gamma or --grid, not both", "/grid");
  if (f.gamma) return parse_grid(*f.gamma);
  if (f.grid) return parse_grid(*f.grid);
  if (auto v = s.get("gamma", std::nullopt)) return parse_grid(*v);
  if (auto v = s.get("grid", std::nullopt)) return parse_grid(*v);
  throw Error(ErrorCode::EmptyGrid, "no noise scale given; use --gamma or --grid", "/grid");
}

McConfig resolve_mc(const SettingResolver& s, const Flags& f) {
  McConfig mc;
  if (auto v = s.get("samples", f.samples)) mc.n_samples = parse_count(*v, "samples");
  if (auto v = s.get("batch", f.batch)) mc.batch_size = parse_count(*v, "batch");
  if (auto v = s.get("seed", f.seed)) mc.seed = parse_count(*v, "seed");
  if (auto v = s.get("threads", f.threads)) mc.threads = static_cast<unsigned>(parse_count(*v, "threads"));
  mc.validate();
  return mc;
}

OutputFormat resolve_format(const SettingResolver& s, const Flags& f) {
  return parse_format(s.get_or("format", f.format, "table"));
}

int run_serve(const SettingResolver& s, const Flags& f) {
  const std::string bind = s.get_or("bind", f.bind, "127.0.0.1:8080");
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidValue, "--bind expects host:port", "/bind");
  const std::string host = bind.substr(0, colon);
  const int port = static_cast<int>(parse_count(bind.substr(colon + 1), "bind"));
  service::ServiceConfig cfg;
  if (auto v = s.get("mc_cap", std::nullopt)) cfg.mc_sample_cap = parse_count(*v, "mc_cap");
  if (auto v = s.get("threads", f.threads)) cfg.mc_threads = static_cast<unsigned>(parse_count(*v, "threads"));
  httplib::Server server;
  service::install_routes(server, cfg);
  std::cerr << "listening on " << host << ":" << port << " (mc sample cap " << cfg.mc_sample_cap << ")\n";
  if (!server.listen(host, port)) throw Error(ErrorCode::IoError, "cannot bind " + bind);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reliability analysis of signal constellations under isotropic Cauchy noise"};
  app.require_subcommand(1);
  app.fallthrough();  // --config is accepted after the subcommand too
  Flags f;
  app.add_option("--config", f.config, "JSON config file (also CCL_CONFIG)");

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "table, csv or json");
    sub->add_option("--out", f.out, "write output to this file instead of stdout");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--gamma", f.gamma, "single noise scale");
    sub->add_option("--grid", f.grid, "comma-separated, strictly increasing noise scales");
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--samples", f.samples, "Monte Carlo trials per noise scale (default 500000)");
    sub->add_option("--batch", f.batch, "trials per substream batch (default 100000)");
    sub->add_option("--seed", f.seed, "64-bit seed (default 2026)");
    sub->add_option("--threads", f.threads, "worker threads, 0 = all cores");
  };

  auto* analyze = app.add_subcommand("analyze", "angular and burden descriptors of one constellation");
  analyze->add_option("constellation", f.refs, "catalog name or constellation file")->required()->expected(1);
  add_format(analyze);

  auto* bound = app.add_subcommand("bound", "union bounds and small-noise asymptotics over a gamma grid");
  bound->add_option("constellation", f.refs, "catalog name or constellation file")->required()->expected(1);
  add_grid(bound);
  add_format(bound);

  auto* mc = app.add_subcommand("mc", "Monte Carlo symbol error estimates over a gamma grid");
  mc->add_option("constellation", f.refs, "catalog name or constellation file")->required()->expected(1);
  add_grid(mc);
  add_mc(mc);
  add_format(mc);

  auto* scr = app.add_subcommand("screen", "two-stage collapse/burden screen of candidate designs");
  scr->add_option("candidates", f.refs, "catalog names or constellation files")->required();
  scr->add_option("--lambda", f.lambda, "burden weight in [0,1] (default 0.5)");
  scr->add_option("--p0", f.p0, "common power budget (default: each candidate's own power)");
  add_format(scr);

  auto* rep = app.add_subcommand("reproduce", "regenerate the figure data as CSV files");
  rep->add_option("--experiment", f.experiment, "small-noise, large-noise, hull, burden or all");
  rep->add_option("--out", f.out, "output directory (default .)");
  add_mc(rep);

  auto* serve = app.add_subcommand("serve", "JSON-over-HTTP analysis service");
  serve->add_option("--bind", f.bind, "host:port (default 127.0.0.1:8080)");
  serve->add_option("--threads", f.threads, "Monte Carlo worker threads per request");

  CLI11_PARSE(app, argc, argv);

  try {
    const SettingResolver s = SettingResolver::from_file(f.config);
    if (analyze->parsed()) {
      emit(s, f, render_analyze(resolve_constellation(f.refs.at(0)), resolve_format(s, f)));
    } else if (bound->parsed()) {
      emit(s, f, render_bound(resolve_constellation(f.refs.at(0)), resolve_grid(s, f), resolve_format(s, f)));
    } else if (mc->parsed()) {
      emit(s, f,
           render_mc(resolve_constellation(f.refs.at(0)), resolve_grid(s, f), resolve_mc(s, f), resolve_format(s, f)));
    } else if (scr->parsed()) {
      std::vector<Candidate> cands;
      for (const auto& r : f.refs) {
        Constellation c = resolve_constellation(r);
        cands.push_back({r, std::move(c)});
      }
      const double lambda = parse_real(s.get_or("lambda", f.lambda, "0.5"), "lambda");
      PowerSpec p0 = std::monostate{};
      if (auto v = s.get("p0", f.p0)) p0 = parse_real(*v, "p0");
      emit(s, f, render_screen(cands, lambda, p0, resolve_format(s, f)));
    } else if (rep->parsed()) {
      ReproduceOptions o;
      o.experiment = s.get_or("experiment", f.experiment, "all");
      o.out_dir = s.get_or("out", f.out, ".");
      o.mc = resolve_mc(s, f);
      for (const auto& path : reproduce(o)) std::cout << path << "\n";
    } else if (serve->parsed()) {
      return run_serve(s, f);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (!e.field().empty()) std::cerr << " (at " << e.field() << ")";
    std::cerr << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
