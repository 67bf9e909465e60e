#pragma once

#include <string_view>

namespace fieldtrends {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kSchemaVersion = "1";

}  // namespace fieldtrends
