#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "isbst/core/fitness.hpp"
#include "isbst/core/model.hpp"

namespace isbst {

using Json = nlohmann::json;

Json to_json(const TestInput& input);
Json to_json(const Behavior& behavior);
Json to_json(const Candidate& candidate);
Json to_json(const WeightVector& weights);
Json to_json(const ObjectiveExtremes& extremes);

// Decoders validate every invariant and throw DecodeError naming the field.
TestInput test_input_from_json(const Json& j);
Behavior behavior_from_json(const Json& j);
Candidate candidate_from_json(const Json& j);
WeightVector weights_from_json(const Json& j);
ObjectiveExtremes extremes_from_json(const Json& j);

std::string encode_candidate(const Candidate& candidate);
Candidate decode_candidate(std::string_view text);

}  // namespace isbst
