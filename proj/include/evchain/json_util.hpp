#pragma once

#include <cstdint>

#include <json.hpp>

namespace evchain {

// Non-negative integer, whether parsed (unsigned) or built in code (signed).
inline bool is_count(const nlohmann::json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

}  // namespace evchain
