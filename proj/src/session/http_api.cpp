#include "isbst/session/http_api.hpp"

#include <httplib.h>

#include <random>

#include "isbst/core/errors.hpp"
#include "isbst/core/rng.hpp"
#include "isbst/session/replay.hpp"
#include "isbst/sut/kmeans.hpp"

namespace isbst::session {
namespace {

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  reply(res, status, Json{{"error", message}});
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json j = Json::parse(req.body, nullptr, false);
  if (j.is_discarded()) throw DecodeError("body", "malformed JSON");
  return j;
}

// Maps domain exceptions onto HTTP statuses.
template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const NotFoundError& e) {
      reply_error(res, 404, e.what());
    } catch (const BusyError& e) {
      reply_error(res, 409, e.what());
    } catch (const ValidationError& e) {
      reply_error(res, 400, e.what());
    } catch (const DecodeError& e) {
      reply_error(res, 400, e.what());
    } catch (const ReplayError& e) {
      reply_error(res, 422, e.what());
    } catch (const Json::exception& e) {
      reply_error(res, 400, e.what());
    } catch (const std::exception& e) {
      reply_error(res, 500, e.what());
    }
  };
}

Json detail(const Candidate& c, std::uint64_t seed) {
  const auto clustering = sut::run_kmeans(c.input, search::sut_seed(seed));
  return Json{{"candidate", to_json(c)}, {"assignments", clustering.assignments}};
}

TestInput manual_input(const Json& body) {
  try {
    return test_input_from_json(body);
  } catch (const DecodeError& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace

void register_routes(httplib::Server& server, SessionManager& sessions) {
  server.Post("/sessions", guarded([&](const httplib::Request& req, httplib::Response& res) {
    std::random_device device;
    const std::uint64_t fallback_seed = (static_cast<std::uint64_t>(device()) << 32) | device();
    const auto config = config_from_json(parse_body(req), fallback_seed);
    const std::string id = sessions.create_session(config);
    const auto session = sessions.get(id);
    reply(res, 201, Json{{"session_id", id}, {"config", to_json(config)},
                         {"overview", to_json(*session->overview(), session->busy())}});
  }));

  server.Get(R"(/sessions/([A-Za-z0-9_-]+)/overview)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const auto session = sessions.get(req.matches[1]);
    const bool busy = session->busy();
    reply(res, 200, to_json(*session->overview(), busy));
  }));

  server.Post(R"(/sessions/([A-Za-z0-9_-]+)/weights)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const auto session = sessions.get(req.matches[1]);
    Json body = parse_body(req);
    if (body.contains("weights")) body = body["weights"];
    WeightVector weights;
    try {
      weights = weights_from_json(body);
    } catch (const DecodeError& e) {
      throw ValidationError(e.what());
    }
    const std::uint64_t seq = session->submit_weights(weights);
    reply(res, 202, Json{{"sequence", seq}, {"weights", to_json(weights)}});
  }));

  server.Get(R"(/sessions/([A-Za-z0-9_-]+)/candidates/([A-Za-z0-9_-]+))",
             guarded([&](const httplib::Request& req, httplib::Response& res) {
               const auto session = sessions.get(req.matches[1]);
               const auto candidate = session->find_candidate(req.matches[2]);
               if (!candidate) throw NotFoundError("unknown candidate " + std::string(req.matches[2]));
               reply(res, 200, detail(*candidate, session->config().seed));
             }));

  server.Post(R"(/sessions/([A-Za-z0-9_-]+)/export/([A-Za-z0-9_-]+))",
              guarded([&](const httplib::Request& req, httplib::Response& res) {
                const auto session = sessions.get(req.matches[1]);
                reply(res, 201, to_json(session->export_candidate(req.matches[2])));
              }));

  server.Post(R"(/sessions/([A-Za-z0-9_-]+)/evaluate)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const auto session = sessions.get(req.matches[1]);
    const Candidate c = session->evaluate_manual(manual_input(parse_body(req)));
    reply(res, 200, detail(c, session->config().seed));
  }));

  server.Post("/evaluate", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    const TestInput input = manual_input(body);
    if (body.contains("session")) {
      const auto session = sessions.get(body["session"].get<std::string>());
      reply(res, 200, detail(session->evaluate_manual(input), session->config().seed));
      return;
    }
    const std::uint64_t seed = body.value("seed", std::uint64_t{0});
    reply(res, 200, detail(evaluate_manual(input, seed), seed));
  }));

  server.Get("/random-input", guarded([&](const httplib::Request& req, httplib::Response& res) {
    std::uint64_t seed = 0;
    if (req.has_param("seed")) {
      seed = std::stoull(req.get_param_value("seed"));
    } else {
      std::random_device device;
      seed = (static_cast<std::uint64_t>(device()) << 32) | device();
    }
    int k = req.has_param("k") ? std::stoi(req.get_param_value("k")) : 3;
    if (k < kMinClusters || k > kMaxClusters) throw ValidationError("k: must be in [2, 10]");
    Rng rng(seed);
    TestInput input;
    input.k = k;
    for (std::size_t i = 0; i < kNumPoints; ++i) {
      const double x = rng.uniform(kCoordinateMin, kCoordinateMax);
      const double y = rng.uniform(kCoordinateMin, kCoordinateMax);
      input.points.push_back(Point{x, y});
    }
    reply(res, 200, to_json(input));
  }));

  server.Get(R"(/sessions/([A-Za-z0-9_-]+)/log)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    reply(res, 200, to_json(sessions.get(req.matches[1])->log()));
  }));

  server.Post("/replay/null", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const SessionLog log = session_log_from_json(parse_body(req));
    reply(res, 200, to_json(replay_null_strategy(log)));
  }));
}

void serve(SessionManager& sessions, const std::string& host, int port,
           const std::optional<std::filesystem::path>& static_dir) {
  httplib::Server server;
  register_routes(server, sessions);
  if (static_dir && !server.set_mount_point("/", static_dir->string())) {
    throw std::runtime_error("cannot serve static files from " + static_dir->string());
  }
  if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace isbst::session
