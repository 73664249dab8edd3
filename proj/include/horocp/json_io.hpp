#pragma once

#include <string>

#include <json.hpp>

namespace horocp {

// Sorted keys, doubles with 17 significant digits, non-finite numbers as null.
std::string dump_json(const nlohmann::json& j, int indent = 2);

}  // namespace horocp
