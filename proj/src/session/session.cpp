#include "isbst/session/session.hpp"

#include <cstdio>
#include <cstring>
#include <random>

#include "isbst/sut/kmeans.hpp"

namespace isbst::session {
namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string manual_id(const TestInput& input, std::uint64_t seed) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const Point& p : input.points) {
    h = fnv1a(h, &p.x, sizeof p.x);
    h = fnv1a(h, &p.y, sizeof p.y);
  }
  h = fnv1a(h, &input.k, sizeof input.k);
  h = fnv1a(h, &seed, sizeof seed);
  char buf[24];
  std::snprintf(buf, sizeof buf, "m%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string random_session_id() {
  static constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
  std::random_device device;
  std::string id(22, 'A');
  for (char& c : id) c = kAlphabet[device() % 64];
  return id;
}

Json behaviors_to_json(const std::vector<Candidate>& cs) {
  Json arr = Json::array();
  for (const Candidate& c : cs) arr.push_back(Json{{"id", c.id}, {"behavior", to_json(c.behavior)}});
  return arr;
}

}  // namespace

Json to_json(const PopulationOverview& o, bool busy) {
  return Json{{"session_id", o.session_id},
              {"epoch", o.epoch},
              {"generation", o.generation},
              {"previous_generation", o.previous_generation},
              {"evaluations", o.evaluations},
              {"events", o.events},
              {"busy", busy},
              {"weights", to_json(o.weights)},
              {"extremes", to_json(o.extremes)},
              {"current", behaviors_to_json(o.current)},
              {"previous", behaviors_to_json(o.previous)}};
}

Candidate evaluate_manual(const TestInput& input, std::uint64_t session_seed) {
  validate(input);
  Candidate c = sut::evaluate_test_input(input, search::sut_seed(session_seed));
  c.id = manual_id(input, session_seed);
  c.generation = 0;
  return c;
}

Session::Session(std::string id, const search::SearchConfig& config,
                 std::optional<std::filesystem::path> log_directory)
    : id_(std::move(id)), config_(config), state_(search::init_population(config)) {
  log_.session_id = id_;
  log_.config = config_;
  log_.snapshots.push_back(take_snapshot(state_, 0, WeightVector::uniform(1.0)));
  if (log_directory) {
    writer_.emplace(*log_directory);
    writer_->session_created(id_, config_);
    writer_->snapshot(log_.snapshots.back());
  }

  auto ov = std::make_shared<PopulationOverview>();
  ov->session_id = id_;
  ov->evaluations = state_.evaluations;
  ov->weights = WeightVector::uniform(1.0);
  ov->extremes = state_.extremes;
  ov->current = state_.candidates();
  ov->previous = ov->current;
  overview_ = std::move(ov);

  worker_ = std::jthread([this](std::stop_token stop) { worker_loop(stop); });
}

Session::~Session() {
  worker_.request_stop();
  cv_.notify_all();
}

std::shared_ptr<const PopulationOverview> Session::overview() const {
  std::lock_guard lock(mutex_);
  return overview_;
}

bool Session::busy() const {
  std::lock_guard lock(mutex_);
  return busy_;
}

std::uint64_t Session::submit_weights(const WeightVector& weights) {
  validate_weights(weights.values());
  std::lock_guard lock(mutex_);
  if (busy_) throw BusyError("an epoch is already running for session " + id_);
  InteractionEvent event;
  event.sequence = next_sequence_++;
  event.timestamp = utc_timestamp();
  event.weights = weights;
  event.generation = overview_->generation;
  log_.events.push_back(event);
  if (writer_) writer_->interaction(event);
  busy_ = true;
  queue_.push_back(EpochCommand{event});
  cv_.notify_all();
  return event.sequence;
}

void Session::wait_idle() const {
  std::unique_lock lock(mutex_);
  cv_.wait(lock, [this] { return !busy_; });
}

void Session::worker_loop(std::stop_token stop) {
  for (;;) {
    EpochCommand cmd;
    {
      std::unique_lock lock(mutex_);
      if (!cv_.wait(lock, stop, [this] { return !queue_.empty(); })) return;
      cmd = std::move(queue_.front());
      queue_.pop_front();
    }

    search::run_epoch(state_, cmd.event.weights, config_.generations_per_epoch);

    const std::uint64_t epoch = cmd.event.sequence;
    PopulationSnapshot snap = take_snapshot(state_, epoch, cmd.event.weights);
    auto ov = std::make_shared<PopulationOverview>();
    ov->session_id = id_;
    ov->epoch = epoch;
    ov->generation = state_.generation;
    ov->previous_generation = state_.previous_generation_index;
    ov->evaluations = state_.evaluations;
    ov->events = epoch;
    ov->weights = cmd.event.weights;
    ov->extremes = state_.extremes;
    ov->current = snap.candidates;
    ov->previous = state_.previous_generation;

    std::lock_guard lock(mutex_);
    if (writer_) writer_->snapshot(snap);
    log_.snapshots.push_back(std::move(snap));
    overview_ = std::move(ov);
    busy_ = false;
    cv_.notify_all();
  }
}

std::optional<Candidate> Session::find_candidate(const std::string& candidate_id) const {
  std::lock_guard lock(mutex_);
  for (const Candidate& c : overview_->current) {
    if (c.id == candidate_id) return c;
  }
  if (const auto it = manual_.find(candidate_id); it != manual_.end()) return it->second;
  return std::nullopt;
}

ExportRecord Session::export_candidate(const std::string& candidate_id) {
  auto candidate = find_candidate(candidate_id);
  if (!candidate) throw NotFoundError("candidate " + candidate_id + " not in session " + id_);
  std::lock_guard lock(mutex_);
  ExportRecord record;
  record.candidate = std::move(*candidate);
  record.session_id = id_;
  record.event_sequence = log_.events.empty() ? 0 : log_.events.back().sequence;
  record.timestamp = utc_timestamp();
  log_.exports.push_back(record);
  if (writer_) writer_->exported(record);
  return record;
}

Candidate Session::evaluate_manual(const TestInput& input) {
  Candidate c = session::evaluate_manual(input, config_.seed);
  std::lock_guard lock(mutex_);
  manual_[c.id] = c;
  return c;
}

SessionLog Session::log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

SessionManager::SessionManager(std::optional<std::filesystem::path> log_root) : log_root_(std::move(log_root)) {}

std::string SessionManager::create_session(const search::SearchConfig& config) {
  config.validate();
  std::string id;
  {
    std::lock_guard lock(mutex_);
    do {
      id = random_session_id();
    } while (sessions_.count(id) != 0);
    sessions_.emplace(id, nullptr);
  }
  std::optional<std::filesystem::path> dir;
  if (log_root_) dir = *log_root_ / id;
  std::shared_ptr<Session> session;
  try {
    session = std::make_shared<Session>(id, config, dir);
  } catch (...) {
    std::lock_guard lock(mutex_);
    sessions_.erase(id);
    throw;
  }
  std::lock_guard lock(mutex_);
  sessions_[id] = std::move(session);
  return id;
}

std::shared_ptr<Session> SessionManager::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end() || !it->second) throw NotFoundError("unknown session " + id);
  return it->second;
}

std::vector<std::string> SessionManager::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) {
    if (s) out.push_back(id);
  }
  return out;
}

}  // namespace isbst::session
