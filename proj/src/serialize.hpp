#pragma once

#include <json.hpp>

#include "conditions.hpp"
#include "experiments.hpp"
#include "witness.hpp"

namespace frcone {

using Json = nlohmann::json;

// Rationals travel as "num/den" strings; doubles keep 17 significant digits, and
// non-finite doubles are written as the strings "inf", "-inf" and "nan".

Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json double_json(double x);
double double_from_json(const Json& j);

void to_json(Json& j, const FRParams& v);
void from_json(const Json& j, FRParams& v);
void to_json(Json& j, const SpaceSpec& v);
void from_json(const Json& j, SpaceSpec& v);
void to_json(Json& j, const Clause& v);
void from_json(const Json& j, Clause& v);
void to_json(Json& j, const TheoremVerdict& v);
void from_json(const Json& j, TheoremVerdict& v);
void to_json(Json& j, const PowerLawPrediction& v);
void from_json(const Json& j, PowerLawPrediction& v);
void to_json(Json& j, const TestFnSpec& v);
void from_json(const Json& j, TestFnSpec& v);
void to_json(Json& j, const SchurWitness& v);
void from_json(const Json& j, SchurWitness& v);
void to_json(Json& j, const Infeasible& v);
void from_json(const Json& j, Infeasible& v);
void to_json(Json& j, const SchurCheck& v);
void from_json(const Json& j, SchurCheck& v);
void to_json(Json& j, const McEstimate& v);
void from_json(const Json& j, McEstimate& v);
void to_json(Json& j, const ComplexEstimate& v);
void from_json(const Json& j, ComplexEstimate& v);
void to_json(Json& j, const SamplingConfig& v);
void from_json(const Json& j, SamplingConfig& v);
void to_json(Json& j, const ScalingReport& v);
void from_json(const Json& j, ScalingReport& v);
void to_json(Json& j, const ScalingPair& v);
void from_json(const Json& j, ScalingPair& v);
void to_json(Json& j, const DualityReport& v);
void from_json(const Json& j, DualityReport& v);
void to_json(Json& j, const TubePoint& v);
TubePoint tube_point_from_json(const Json& j);
void to_json(Json& j, const Lemma21Report& v);
void from_json(const Json& j, Lemma21Report& v);

}  // namespace frcone
