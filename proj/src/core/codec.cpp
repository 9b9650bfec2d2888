#include "isbst/core/codec.hpp"

#include <cmath>
#include <string>

#include "isbst/core/errors.hpp"

namespace isbst {
namespace {

const Json& require(const Json& j, const char* field) {
  if (!j.is_object()) throw DecodeError(field, "enclosing value is not an object");
  const auto it = j.find(field);
  if (it == j.end()) throw DecodeError(field, "missing field");
  return *it;
}

double require_number(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number()) throw DecodeError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw DecodeError(field, "non-finite number");
  return d;
}

std::int64_t require_integer(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number_integer()) throw DecodeError(field, "expected an integer");
  return v.get<std::int64_t>();
}

}  // namespace

Json to_json(const TestInput& input) {
  Json points = Json::array();
  for (const Point& p : input.points) points.push_back(Json::array({p.x, p.y}));
  return Json{{"points", std::move(points)}, {"k", input.k}};
}

Json to_json(const Behavior& b) {
  Json j = Json::object();
  for (Objective o : kObjectives) j[std::string(objective_name(o))] = b.value(o);
  return j;
}

Json to_json(const Candidate& c) {
  return Json{{"id", c.id},
              {"generation", c.generation},
              {"input", to_json(c.input)},
              {"behavior", to_json(c.behavior)},
              {"raw_silhouettes", c.raw_silhouettes}};
}

Json to_json(const WeightVector& weights) {
  Json j = Json::object();
  for (Objective o : kObjectives) j[std::string(objective_name(o))] = weights[o];
  return j;
}

Json to_json(const ObjectiveExtremes& extremes) {
  Json j = Json::object();
  for (Objective o : kObjectives) {
    const auto& r = extremes[o];
    if (r.empty()) {
      j[std::string(objective_name(o))] = nullptr;
    } else {
      j[std::string(objective_name(o))] = Json{{"min", r.min}, {"max", r.max}};
    }
  }
  return j;
}

TestInput test_input_from_json(const Json& j) {
  const Json& points = require(j, "points");
  if (!points.is_array()) throw DecodeError("points", "expected an array");
  if (points.size() != kNumPoints) {
    throw DecodeError("points", "expected " + std::to_string(kNumPoints) + " points, got " +
                                    std::to_string(points.size()));
  }
  TestInput input;
  input.points.reserve(points.size());
  for (const Json& p : points) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw DecodeError("points", "each point must be a [x, y] pair of numbers");
    }
    const Point pt{p[0].get<double>(), p[1].get<double>()};
    for (double v : {pt.x, pt.y}) {
      if (!std::isfinite(v) || v < kCoordinateMin || v > kCoordinateMax) {
        throw DecodeError("points", "coordinate outside [0, 100]");
      }
    }
    input.points.push_back(pt);
  }
  const std::int64_t k = require_integer(j, "k");
  if (k < kMinClusters || k > kMaxClusters) throw DecodeError("k", "must be in [2, 10]");
  input.k = static_cast<int>(k);
  return input;
}

Behavior behavior_from_json(const Json& j) {
  PerObjective<double> values{};
  for (Objective o : kObjectives) {
    const std::string name(objective_name(o));
    values[index_of(o)] = require_number(j, name.c_str());
  }
  Behavior b = Behavior::from_values(values);
  if (b.mean_silhouette < -1.0 || b.mean_silhouette > 1.0) {
    throw DecodeError("mean_silhouette", "outside [-1, 1]");
  }
  if (b.silhouette_range < 0.0 || b.silhouette_range > 2.0) {
    throw DecodeError("silhouette_range", "outside [0, 2]");
  }
  if (!(b.mean_weight > 0.0)) throw DecodeError("mean_weight", "must be > 0");
  if (b.weights_range < 0.0) throw DecodeError("weights_range", "must be >= 0");
  if (b.num_iterations < 1.0) throw DecodeError("num_iterations", "must be >= 1");
  return b;
}

Candidate candidate_from_json(const Json& j) {
  Candidate c;
  const Json& id = require(j, "id");
  if (!id.is_string()) throw DecodeError("id", "expected a string");
  c.id = id.get<std::string>();
  c.generation = require_integer(j, "generation");
  if (c.generation < 0) throw DecodeError("generation", "must be >= 0");
  c.input = test_input_from_json(require(j, "input"));
  c.behavior = behavior_from_json(require(j, "behavior"));
  const Json& sil = require(j, "raw_silhouettes");
  if (!sil.is_array() || sil.size() != kNumPoints) {
    throw DecodeError("raw_silhouettes", "expected an array of " + std::to_string(kNumPoints) + " numbers");
  }
  c.raw_silhouettes.reserve(kNumPoints);
  for (const Json& s : sil) {
    if (!s.is_number()) throw DecodeError("raw_silhouettes", "expected a number");
    const double v = s.get<double>();
    if (!(v >= -1.0 && v <= 1.0)) throw DecodeError("raw_silhouettes", "value outside [-1, 1]");
    c.raw_silhouettes.push_back(v);
  }
  return c;
}

WeightVector weights_from_json(const Json& j) {
  PerObjective<double> w{};
  for (Objective o : kObjectives) {
    const std::string name(objective_name(o));
    w[index_of(o)] = require_number(j, name.c_str());
  }
  try {
    return WeightVector(w);
  } catch (const ValidationError& e) {
    throw DecodeError("weights", e.what());
  }
}

ObjectiveExtremes extremes_from_json(const Json& j) {
  ObjectiveExtremes extremes;
  for (Objective o : kObjectives) {
    const std::string name(objective_name(o));
    const Json& r = require(j, name.c_str());
    if (r.is_null()) continue;
    auto& range = extremes[o];
    range.min = require_number(r, "min");
    range.max = require_number(r, "max");
    if (range.min > range.max) throw DecodeError(name, "min exceeds max");
  }
  return extremes;
}

std::string encode_candidate(const Candidate& candidate) { return to_json(candidate).dump(); }

Candidate decode_candidate(std::string_view text) {
  Json j = Json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) throw DecodeError("document", "malformed JSON");
  return candidate_from_json(j);
}

}  // namespace isbst
