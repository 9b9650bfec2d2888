#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "isbst/core/errors.hpp"
#include "isbst/session/http_api.hpp"
#include "isbst/session/replay.hpp"
#include "isbst/session/session.hpp"

namespace fs = std::filesystem;
using namespace isbst;

namespace {

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

Json candidates_json(const std::vector<Candidate>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(to_json(c));
  return arr;
}

WeightVector parse_weights(const std::string& text) {
  PerObjective<double> w{};
  std::stringstream in(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(in, item, ',')) {
    if (i == kNumObjectives) throw ValidationError("weights: expected six comma-separated values");
    w[i++] = std::stod(item);
  }
  if (i != kNumObjectives) throw ValidationError("weights: expected six comma-separated values");
  return WeightVector(w);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive search-based testing workbench for a k-means SUT"};
  app.require_subcommand(1);

  auto* serve = app.add_subcommand("serve", "Run the HTTP session server");
  int port = 8080;
  std::string host = "0.0.0.0";
  std::string log_root;
  std::string static_dir;
  serve->add_option("--port", port, "Listen port")->capture_default_str();
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--log-root", log_root, "Write one log directory per session under this path");
  serve->add_option("--static", static_dir, "Serve a browser client from this directory");

  auto* replay = app.add_subcommand("replay", "Replay a session log");
  std::string null_log;
  std::string verify_log;
  std::string out_dir = "replay-out";
  auto* null_opt = replay->add_option("--null", null_log, "Replay with the null strategy (equal weights)");
  auto* verify_opt = replay->add_option("--verify", verify_log, "Replay recorded weights and compare snapshots");
  null_opt->excludes(verify_opt);
  replay->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* run = app.add_subcommand("run", "Run a scripted session headlessly and write its log");
  search::SearchConfig config;
  std::size_t events = 10;
  std::string weights_text = "1,1,1,1,1,1";
  std::string run_log = "session-log";
  run->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  run->add_option("--population", config.population_size, "Population size NP")->capture_default_str();
  run->add_option("--generations", config.generations_per_epoch, "Generations per interaction event")->capture_default_str();
  run->add_option("--scale-factor", config.scale_factor, "DE scale factor F")->capture_default_str();
  run->add_option("--crossover-rate", config.crossover_rate, "DE crossover rate")->capture_default_str();
  run->add_option("--events", events, "Number of interaction events")->capture_default_str();
  run->add_option("--weights", weights_text,
                  "Weights for num_clusters,num_iterations,mean_silhouette,silhouette_range,mean_weight,weights_range")
      ->capture_default_str();
  run->add_option("--log-dir", run_log, "Directory for the session log")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (serve->parsed()) {
      session::SessionManager manager(log_root.empty() ? std::nullopt : std::optional<fs::path>(log_root));
      std::cerr << "listening on " << host << ':' << port << '\n';
      session::serve(manager, host, port, static_dir.empty() ? std::nullopt : std::optional<fs::path>(static_dir));
      return 0;
    }

    if (replay->parsed()) {
      if (null_log.empty() && verify_log.empty()) {
        std::cerr << "replay: one of --null or --verify is required\n";
        return 2;
      }
      if (!verify_log.empty()) {
        const auto log = session::read_session_log(verify_log);
        const auto result = session::replay_logged(log);
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < log.snapshots.size(); ++i) {
          const bool same = session::identical(log.snapshots[i], result.snapshots[i]);
          std::cout << "epoch " << i << ": " << (same ? "identical" : "DIFFERS") << '\n';
          mismatches += same ? 0 : 1;
        }
        return mismatches == 0 ? 0 : 1;
      }
      const auto log = session::read_session_log(null_log);
      const auto result = session::replay_null_strategy(log);
      fs::create_directories(out_dir);
      write_json(fs::path(out_dir) / "final_population.json", candidates_json(result.final_population()));
      write_json(fs::path(out_dir) / "top50.json", candidates_json(result.top50()));
      write_json(fs::path(out_dir) / "initial_population.json", candidates_json(result.snapshots.front().candidates));
      write_json(fs::path(out_dir) / "summary.json",
                 Json{{"session_id", log.session_id},
                      {"events", result.events},
                      {"evaluations", result.evaluations},
                      {"logged_evaluations", log.evaluations()},
                      {"generation", result.snapshots.back().generation}});
      std::cout << "null replay: " << result.events << " events, " << result.evaluations
                << " evaluations (logged " << log.evaluations() << ")\n";
      return 0;
    }

    if (run->parsed()) {
      const WeightVector weights = parse_weights(weights_text);
      config.validate();
      session::Session s("run-" + std::to_string(config.seed), config, fs::path(run_log));
      for (std::size_t e = 0; e < events; ++e) {
        s.submit_weights(weights);
        s.wait_idle();
      }
      const auto log = s.log();
      write_json(fs::path(run_log) / "final_population.json", candidates_json(log.snapshots.back().candidates));
      write_json(fs::path(run_log) / "initial_population.json", candidates_json(log.snapshots.front().candidates));
      std::cout << "wrote " << run_log << ": " << log.events.size() << " events, " << log.evaluations()
                << " evaluations\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
