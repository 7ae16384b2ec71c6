#pragma once

#include <json.hpp>

#include "mes/motivic.hpp"

namespace mes {

// { "r": int, "terms": [ { "coeff": "p/q", "left": [ {"coeff": "p/q", "comp": "..."} ], "right": "..." } ] }
nlohmann::ordered_json tensor_to_json(const TensorSum& t);
TensorSum tensor_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json raw_cuts_to_json(const std::vector<RawCut>& cuts);
nlohmann::ordered_json certificate_to_json(const Certificate& cert);

}  // namespace mes
