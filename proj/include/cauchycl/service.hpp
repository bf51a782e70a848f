#ifndef CAUCHYCL_SERVICE_HPP
#define CAUCHYCL_SERVICE_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <httplib.h>

#include "cauchycl/catalog.hpp"
#include "cauchycl/descriptors.hpp"
#include "cauchycl/detector.hpp"
#include "cauchycl/error.hpp"
#include "cauchycl/geometry.hpp"
#include "cauchycl/io.hpp"

namespace cauchycl::service {

struct ServiceConfig {
  std::uint64_t mc_sample_cap = 1000000;
  unsigned mc_threads = 1;
};

struct Reply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

inline Reply error_reply(int status, const Error& e, const std::string& reason = {}) {
  json j = json::object();
  j["error"] = std::string(to_string(e.code()));
  j["message"] = e.message();
  j["field"] = e.field();
  if (!reason.empty()) j["reason"] = reason;
  return {status, dump_json(j) + "\n"};
}

inline int status_for(const Error& e) { return e.code() == ErrorCode::IoError ? 500 : 400; }

/// Runs a handler body, mapping library errors to JSON error replies.
template <typename F>
Reply guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return error_reply(status_for(e), e);
  } catch (const json::exception& e) {
    return error_reply(400, Error(ErrorCode::ParseError, e.what()));
  }
}

/// A constellation given either inline (file schema) or as a catalog name.
inline Constellation constellation_from_payload(const json& j, const std::string& base) {
  if (j.is_string()) return catalog_get(j.get<std::string>()).constellation;
  return constellation_from_json(j, base);
}

inline Reply handle_health() { return {200, "ok", "text/plain"}; }

inline Reply handle_analyze(const std::string& body) {
  return guarded([&] {
    const Constellation c = constellation_from_payload(parse_json_text(body), "");
    return Reply{200, dump_json(to_json(report(c))) + "\n"};
  });
}

inline Reply handle_cones(const std::string& body) {
  return guarded([&] {
    const Constellation c = constellation_from_payload(parse_json_text(body), "");
    if (c.dim() != 2)
      return error_reply(422, Error(ErrorCode::DimensionMismatch, "cone endpoints need d = 2", "/points"));
    json out = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(to_json(angular_patch_2d(c, i)));
    return Reply{200, dump_json(out) + "\n"};
  });
}

inline Reply handle_mc(const std::string& body, const ServiceConfig& cfg) {
  return guarded([&] {
    const json j = parse_json_text(body);
    if (!j.is_object() || !j.contains("constellation"))
      throw Error(ErrorCode::ParseError, "missing field 'constellation'", "/constellation");
    const Constellation c = constellation_from_payload(j["constellation"], "/constellation");
    if (!j.contains("gamma") || !j["gamma"].is_number())
      throw Error(ErrorCode::ParseError, "missing numeric field 'gamma'", "/gamma");
    McConfig mc;
    mc.threads = cfg.mc_threads;
    if (j.contains("samples")) {
      if (!j["samples"].is_number_integer() || j["samples"].get<std::int64_t>() < 1)
        throw Error(ErrorCode::InvalidSampleCount, "'samples' must be a positive integer", "/samples");
      mc.n_samples = j["samples"].get<std::uint64_t>();
    }
    if (j.contains("batch")) {
      if (!j["batch"].is_number_integer() || j["batch"].get<std::int64_t>() < 1)
        throw Error(ErrorCode::InvalidSampleCount, "'batch' must be a positive integer", "/batch");
      mc.batch_size = j["batch"].get<std::uint64_t>();
    }
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) throw Error(ErrorCode::ParseError, "'seed' must be a nonnegative integer", "/seed");
      mc.seed = j["seed"].get<std::uint64_t>();
    }
    if (mc.n_samples > cfg.mc_sample_cap)
      return error_reply(400,
                         Error(ErrorCode::SampleCap,
                               "requested " + std::to_string(mc.n_samples) + " samples, cap is " +
                                   std::to_string(cfg.mc_sample_cap),
                               "/samples"),
                         "sample cap");
    const NoiseModel m(j["gamma"].get<double>(), c.dim());
    return Reply{200, dump_json(to_json(estimate(c, m, mc))) + "\n"};
  });
}

inline Reply handle_screen(const std::string& body) {
  return guarded([&] {
    const json j = parse_json_text(body);
    if (!j.is_object() || !j.contains("candidates") || !j["candidates"].is_array())
      throw Error(ErrorCode::ParseError, "missing array field 'candidates'", "/candidates");
    std::vector<Candidate> cands;
    const json& arr = j["candidates"];
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string base = "/candidates/" + std::to_string(k);
      const json& item = arr[k];
      if (item.is_object() && item.contains("constellation")) {
        const Constellation c = constellation_from_payload(item["constellation"], base + "/constellation");
        std::string id = item.value("id", c.name().empty() ? "candidate-" + std::to_string(k) : c.name());
        cands.push_back({std::move(id), c});
      } else {
        const Constellation c = constellation_from_payload(item, base);
        cands.push_back({c.name().empty() ? "candidate-" + std::to_string(k) : c.name(), c});
      }
    }
    double lambda = 0.5;
    if (j.contains("lambda")) {
      if (!j["lambda"].is_number()) throw Error(ErrorCode::ParseError, "'lambda' must be a number", "/lambda");
      lambda = j["lambda"].get<double>();
    }
    PowerSpec p0 = std::monostate{};
    if (j.contains("p0") && !j["p0"].is_null()) {
      if (j["p0"].is_number()) {
        p0 = j["p0"].get<double>();
      } else if (j["p0"].is_array()) {
        std::vector<double> per;
        for (std::size_t k = 0; k < j["p0"].size(); ++k) {
          if (!j["p0"][k].is_number())
            throw Error(ErrorCode::ParseError, "p0 entries must be numbers", "/p0/" + std::to_string(k));
          per.push_back(j["p0"][k].get<double>());
        }
        p0 = std::move(per);
      } else {
        throw Error(ErrorCode::ParseError, "'p0' must be a number or an array", "/p0");
      }
    }
    return Reply{200, dump_json(to_json(screen(cands, lambda, p0))) + "\n"};
  });
}

/// Registers every endpoint on `server`.
inline void install_routes(httplib::Server& server, const ServiceConfig& cfg) {
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get("/health", [send](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });
  server.Post("/analyze",
              [send](const httplib::Request& req, httplib::Response& res) { send(res, handle_analyze(req.body)); });
  server.Post("/cones",
              [send](const httplib::Request& req, httplib::Response& res) { send(res, handle_cones(req.body)); });
  server.Post("/mc", [send, cfg](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_mc(req.body, cfg));
  });
  server.Post("/screen",
              [send](const httplib::Request& req, httplib::Response& res) { send(res, handle_screen(req.body)); });
  // The designer front end is served from another origin during development.
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
}

}  // namespace cauchycl::service

#endif  // CAUCHYCL_SERVICE_HPP
