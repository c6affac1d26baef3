#pragma once

// JSON encoding of the library's value types. Matrices are written as
// {"dim": n, "data": [row-major entries]}; on input a nested array of rows or
// a flat array of n*n entries is accepted as well.

#include "homoclinic/classify.hpp"
#include "homoclinic/flow.hpp"
#include "homoclinic/majorize.hpp"
#include "homoclinic/matkit.hpp"
#include "homoclinic/models.hpp"

#include <nlohmann/json.hpp>

namespace homoclinic {

using Json = nlohmann::ordered_json;

void to_json(Json& j, const Mat& m);
/// Throws InvalidArgument on malformed shapes or non-finite entries.
void from_json(const Json& j, Mat& m);

void to_json(Json& j, const ModelSpec& spec);
/// Missing fields keep their ModelSpec defaults except l and omega, which are
/// required. The result is validated.
void from_json(const Json& j, ModelSpec& spec);

void to_json(Json& j, const SignatureReport& r);
void to_json(Json& j, const HessianClassification& c);
void to_json(Json& j, const ScatteringResult& r);
void to_json(Json& j, const MajorizationWitness& w);
void to_json(Json& j, const IndefinitenessSummary& s);
void to_json(Json& j, const RealizationReport& r);
void to_json(Json& j, const ReversibilityReport& r);
void to_json(Json& j, const ReversibleSignatureReport& r);

} // namespace homoclinic
