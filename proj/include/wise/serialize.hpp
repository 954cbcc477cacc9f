#pragma once

#include <json.hpp>

#include "wise/bench.hpp"
#include "wise/engine.hpp"
#include "wise/simgen.hpp"
#include "wise/weights.hpp"

namespace wise {

/// {z, e_z, var_z, z_g, p_value, reject, alpha, method, diagnostics{ratio1,
/// ratio2, ratio3, alignment, warnings[]}}; permutation runs also carry
/// "permutations".
nlohmann::json to_json(const TestResult& result);
nlohmann::json to_json(const MahalanobisResult& result);

/// Weight specs serialize as objects, e.g. {"family": "geometric", "rho": 0.5};
/// parsing also accepts the string grammar.
nlohmann::json weight_to_json(const WeightSpec& spec);
WeightSpec weight_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const sim::ModelSpec& spec);
sim::ModelSpec model_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const bench::ExperimentPlan& plan);
/// Missing keys take ExperimentPlan defaults; a missing "model" is derived
/// from "setting". Throws BadPlan on malformed input.
bench::ExperimentPlan plan_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const bench::ExperimentReport& report);
bench::ExperimentReport report_from_json(const nlohmann::json& j);

}  // namespace wise
