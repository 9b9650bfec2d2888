#include "isbst/session/session_log.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "isbst/core/errors.hpp"

namespace isbst::session {
namespace {

namespace fs = std::filesystem;

template <typename F>
auto as_replay_error(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ReplayError&) {
    throw;
  } catch (const std::exception& e) {
    throw ReplayError(std::string(what) + ": " + e.what());
  }
}

std::vector<Candidate> candidates_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw DecodeError(field, "expected an array");
  std::vector<Candidate> out;
  out.reserve(j.size());
  for (const Json& c : j) out.push_back(candidate_from_json(c));
  return out;
}

Json candidates_to_json(const std::vector<Candidate>& cs) {
  Json arr = Json::array();
  for (const Candidate& c : cs) arr.push_back(to_json(c));
  return arr;
}

InteractionEvent event_from_json(const Json& j) {
  InteractionEvent e;
  e.sequence = j.at("sequence").get<std::uint64_t>();
  e.timestamp = j.value("timestamp", "");
  e.weights = weights_from_json(j.at("weights"));
  e.generation = j.at("generation").get<std::int64_t>();
  return e;
}

std::string snapshot_file_name(std::uint64_t epoch) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "epoch-%04llu.json", static_cast<unsigned long long>(epoch));
  return buf;
}

}  // namespace

bool identical(const PopulationSnapshot& a, const PopulationSnapshot& b) {
  return a.epoch == b.epoch && a.generation == b.generation && a.evaluations == b.evaluations &&
         a.extremes == b.extremes && a.candidates == b.candidates && a.top50 == b.top50;
}

const std::vector<Candidate>& SessionLog::final_top50() const {
  static const std::vector<Candidate> kEmpty;
  return snapshots.empty() ? kEmpty : snapshots.back().top50;
}

std::string utc_timestamp() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const std::time_t t = system_clock::to_time_t(now);
  const auto micros = duration_cast<microseconds>(now.time_since_epoch()).count() % 1000000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[80];
  std::snprintf(out, sizeof out, "%s.%06lldZ", buf, static_cast<long long>(micros));
  return out;
}

Json to_json(const search::SearchConfig& c) {
  return Json{{"population_size", c.population_size},
              {"generations_per_epoch", c.generations_per_epoch},
              {"scale_factor", c.scale_factor},
              {"crossover_rate", c.crossover_rate},
              {"seed", c.seed},
              {"bounds", Json{{"coordinates", {kCoordinateMin, kCoordinateMax}},
                              {"k", {kMinClusters, kMaxClusters}}}}};
}

search::SearchConfig config_from_json(const Json& j, std::uint64_t default_seed) {
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  search::SearchConfig c;
  c.seed = default_seed;
  std::vector<std::string> problems;
  auto read_count = [&](const char* key, std::size_t& out) {
    if (!j.contains(key)) return;
    const Json& v = j[key];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      problems.push_back(std::string(key) + ": expected a non-negative integer");
      return;
    }
    out = v.get<std::size_t>();
  };
  auto read_real = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) {
      problems.push_back(std::string(key) + ": expected a number");
      return;
    }
    out = j[key].get<double>();
  };
  read_count("population_size", c.population_size);
  read_count("generations_per_epoch", c.generations_per_epoch);
  read_real("scale_factor", c.scale_factor);
  read_real("crossover_rate", c.crossover_rate);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      problems.emplace_back("seed: expected a non-negative integer");
    } else {
      c.seed = j["seed"].get<std::uint64_t>();
    }
  }
  if (j.contains("bounds")) {
    const Json expected = to_json(search::SearchConfig{})["bounds"];
    if (j["bounds"] != expected) problems.emplace_back("bounds: only coordinates [0, 100] and k [2, 10] are supported");
  }
  for (auto& p : c.problems()) problems.push_back(std::move(p));
  if (!problems.empty()) {
    std::string msg = "invalid config: ";
    for (std::size_t i = 0; i < problems.size(); ++i) msg += (i ? "; " : "") + problems[i];
    throw ValidationError(msg);
  }
  return c;
}

Json to_json(const InteractionEvent& e) {
  return Json{{"sequence", e.sequence},
              {"timestamp", e.timestamp},
              {"weights", to_json(e.weights)},
              {"generation", e.generation}};
}

Json to_json(const PopulationSnapshot& s) {
  return Json{{"epoch", s.epoch},
              {"generation", s.generation},
              {"evaluations", s.evaluations},
              {"extremes", to_json(s.extremes)},
              {"candidates", candidates_to_json(s.candidates)},
              {"top50", candidates_to_json(s.top50)}};
}

PopulationSnapshot snapshot_from_json(const Json& j) {
  PopulationSnapshot s;
  s.epoch = j.at("epoch").get<std::uint64_t>();
  s.generation = j.at("generation").get<std::int64_t>();
  s.evaluations = j.at("evaluations").get<std::uint64_t>();
  s.extremes = extremes_from_json(j.at("extremes"));
  s.candidates = candidates_from_json(j.at("candidates"), "candidates");
  s.top50 = candidates_from_json(j.at("top50"), "top50");
  return s;
}

Json to_json(const ExportRecord& r) {
  return Json{{"candidate", to_json(r.candidate)},
              {"session_id", r.session_id},
              {"event_sequence", r.event_sequence},
              {"timestamp", r.timestamp}};
}

ExportRecord export_record_from_json(const Json& j) {
  ExportRecord r;
  r.candidate = candidate_from_json(j.at("candidate"));
  r.session_id = j.at("session_id").get<std::string>();
  r.event_sequence = j.at("event_sequence").get<std::uint64_t>();
  r.timestamp = j.value("timestamp", "");
  return r;
}

Json to_json(const SessionLog& log) {
  Json events = Json::array();
  for (const auto& e : log.events) events.push_back(to_json(e));
  Json snapshots = Json::array();
  for (const auto& s : log.snapshots) snapshots.push_back(to_json(s));
  Json exports = Json::array();
  for (const auto& r : log.exports) exports.push_back(to_json(r));
  return Json{{"session_id", log.session_id},
              {"seed", log.config.seed},
              {"config", to_json(log.config)},
              {"events", std::move(events)},
              {"snapshots", std::move(snapshots)},
              {"exports", std::move(exports)},
              {"final_top50", candidates_to_json(log.final_top50())},
              {"evaluations", log.evaluations()}};
}

SessionLog session_log_from_json(const Json& j) {
  return as_replay_error("session log", [&] {
    if (!j.is_object()) throw ReplayError("session log: expected a JSON object");
    SessionLog log;
    log.session_id = j.at("session_id").get<std::string>();
    const std::uint64_t seed = j.at("seed").get<std::uint64_t>();
    log.config = config_from_json(j.at("config"), seed);
    if (log.config.seed != seed) throw ReplayError("session log: seed disagrees with config");
    for (const Json& e : j.at("events")) log.events.push_back(event_from_json(e));
    for (const Json& s : j.at("snapshots")) log.snapshots.push_back(snapshot_from_json(s));
    if (j.contains("exports")) {
      for (const Json& r : j.at("exports")) log.exports.push_back(export_record_from_json(r));
    }
    check_consistency(log);
    return log;
  });
}

void check_consistency(const SessionLog& log) {
  const auto& cfg = log.config;
  const auto problems = cfg.problems();
  if (!problems.empty()) throw ReplayError("session log: invalid config: " + problems.front());
  if (log.snapshots.empty()) throw ReplayError("session log: no initial population snapshot");
  if (log.snapshots.size() != log.events.size() + 1) {
    throw ReplayError("session log: " + std::to_string(log.events.size()) + " interaction events but " +
                      std::to_string(log.snapshots.size()) + " snapshots (incomplete epoch?)");
  }
  const auto np = static_cast<std::uint64_t>(cfg.population_size);
  const auto g = static_cast<std::int64_t>(cfg.generations_per_epoch);
  for (std::size_t i = 0; i < log.snapshots.size(); ++i) {
    const auto& s = log.snapshots[i];
    const auto expected_evals = np * (1 + static_cast<std::uint64_t>(i) * cfg.generations_per_epoch);
    if (s.epoch != i || s.generation != static_cast<std::int64_t>(i) * g || s.evaluations != expected_evals ||
        s.candidates.size() != cfg.population_size) {
      throw ReplayError("session log: snapshot " + std::to_string(i) + " is inconsistent with the config");
    }
  }
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    const auto& e = log.events[i];
    if (i > 0 && e.sequence <= log.events[i - 1].sequence) {
      throw ReplayError("session log: interaction sequence numbers are not increasing");
    }
    if (e.generation != static_cast<std::int64_t>(i) * g) {
      throw ReplayError("session log: interaction " + std::to_string(e.sequence) + " applied at an unexpected generation");
    }
  }
}

SessionLogWriter::SessionLogWriter(fs::path directory) : directory_(std::move(directory)) {
  fs::create_directories(directory_ / "snapshots");
  events_.open(directory_ / "events.jsonl", std::ios::app);
  if (!events_) throw std::runtime_error("cannot open " + (directory_ / "events.jsonl").string());
}

void SessionLogWriter::append(const Json& event) {
  events_ << event.dump() << '\n';
  events_.flush();
}

void SessionLogWriter::session_created(const std::string& session_id, const search::SearchConfig& config) {
  append(Json{{"type", "session_created"},
              {"session_id", session_id},
              {"seed", config.seed},
              {"config", to_json(config)},
              {"prng", std::string(Rng::kName)},
              {"timestamp", utc_timestamp()}});
}

void SessionLogWriter::interaction(const InteractionEvent& event) {
  Json j = to_json(event);
  j["type"] = "interaction";
  append(j);
}

void SessionLogWriter::snapshot(const PopulationSnapshot& snapshot) {
  const std::string name = snapshot_file_name(snapshot.epoch);
  {
    std::ofstream out(directory_ / "snapshots" / name);
    out << to_json(snapshot).dump();
    if (!out) throw std::runtime_error("cannot write snapshot " + name);
  }
  append(Json{{"type", "snapshot"},
              {"epoch", snapshot.epoch},
              {"generation", snapshot.generation},
              {"evaluations", snapshot.evaluations},
              {"file", "snapshots/" + name}});
}

void SessionLogWriter::exported(const ExportRecord& record) {
  Json j = to_json(record);
  j["type"] = "export";
  append(j);
}

SessionLog read_session_log(const fs::path& path) {
  if (!fs::exists(path)) throw ReplayError("session log not found: " + path.string());
  if (!fs::is_directory(path)) {
    std::ifstream in(path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ReplayError("session log: malformed JSON in " + path.string());
    return session_log_from_json(j);
  }

  std::ifstream in(path / "events.jsonl");
  if (!in) throw ReplayError("session log: missing events.jsonl in " + path.string());
  SessionLog log;
  bool created = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "events.jsonl line " + std::to_string(line_no);
    as_replay_error(where.c_str(), [&] {
      Json e = Json::parse(line);
      const std::string type = e.at("type").get<std::string>();
      if (type == "session_created") {
        log.session_id = e.at("session_id").get<std::string>();
        log.config = config_from_json(e.at("config"), e.at("seed").get<std::uint64_t>());
        created = true;
      } else if (type == "interaction") {
        log.events.push_back(event_from_json(e));
      } else if (type == "snapshot") {
        std::ifstream snap(path / e.at("file").get<std::string>());
        if (!snap) throw ReplayError("missing snapshot file " + e.at("file").get<std::string>());
        log.snapshots.push_back(snapshot_from_json(Json::parse(snap)));
      } else if (type == "export") {
        log.exports.push_back(export_record_from_json(e));
      } else {
        throw ReplayError("unknown event type '" + type + "'");
      }
      return 0;
    });
  }
  if (!created) throw ReplayError("session log: no session_created event");
  check_consistency(log);
  return log;
}

}  // namespace isbst::session

namespace isbst::session {

PopulationSnapshot take_snapshot(const search::SearchState& state, std::uint64_t epoch,
                                 const WeightVector& ranking_weights) {
  PopulationSnapshot s;
  s.epoch = epoch;
  s.generation = state.generation;
  s.evaluations = state.evaluations;
  s.extremes = state.extremes;
  s.candidates = state.candidates();
  s.top50 = search::top_by_fitness(state, ranking_weights, 50);
  return s;
}

}  // namespace isbst::session
