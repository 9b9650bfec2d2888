#include "isbst/analysis/behavior_space.hpp"

#include <cmath>
#include <fstream>

#include "isbst/core/errors.hpp"

namespace isbst::analysis {

std::vector<double> BehaviorSample::column(Objective o) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const Behavior& b : rows) out.push_back(b.value(o));
  return out;
}

BehaviorSample sample_from_json(const Json& document, std::string label) {
  const Json* array = &document;
  if (document.is_object()) {
    if (document.contains("final_population")) {
      array = &document["final_population"];
    } else if (document.contains("candidates")) {
      array = &document["candidates"];
    }
  }
  if (!array->is_array()) throw ValidationError(label + ": expected an array of candidates or behaviors");
  BehaviorSample sample{std::move(label), {}};
  try {
    for (const Json& item : *array) {
      sample.rows.push_back(item.contains("behavior") ? candidate_from_json(item).behavior : behavior_from_json(item));
    }
  } catch (const DecodeError& e) {
    throw ValidationError(sample.label + ": " + e.what());
  }
  if (sample.rows.empty()) throw ValidationError(sample.label + ": sample is empty");
  return sample;
}

BehaviorSample load_sample(const std::filesystem::path& path, std::string label) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ValidationError(path.string() + ": malformed JSON");
  if (label.empty()) label = path.stem().string();
  return sample_from_json(j, std::move(label));
}

Standardized standardize(const Matrix& rows) {
  Standardized out{rows, {}};
  if (rows.empty()) return out;
  const std::size_t n = rows.size();
  const std::size_t d = rows.front().size();
  for (std::size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (const auto& r : rows) mean += r[c];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& r : rows) ss += (r[c] - mean) * (r[c] - mean);
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    // Relative cutoff so rounding noise on a constant column is not amplified.
    const bool constant = !(sd > 1e-12 * std::max(1.0, std::abs(mean)));
    if (constant) out.constant_columns.push_back(c);
    for (auto& r : out.rows) r[c] = constant ? 0.0 : (r[c] - mean) / sd;
  }
  return out;
}

PooledBehaviors pool(std::span<const BehaviorSample> samples) {
  PooledBehaviors out;
  for (const auto& s : samples) {
    for (const Behavior& b : s.rows) {
      const auto v = b.values();
      out.rows.emplace_back(v.begin(), v.end());
      out.labels.push_back(s.label);
    }
  }
  return out;
}

}  // namespace isbst::analysis
