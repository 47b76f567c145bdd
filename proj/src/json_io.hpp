#pragma once

#include <json.hpp>

#include "skewmix/params.hpp"

namespace skewmix {

// internal JSON plumbing shared by params / mixture / CLI translation units
nlohmann::json skew_params_to_json_obj(const SkewParams& params);
SkewParams skew_params_from_json_obj(const nlohmann::json& j);

} // namespace skewmix
