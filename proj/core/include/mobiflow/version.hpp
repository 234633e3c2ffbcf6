#pragma once

namespace mobiflow {

inline constexpr const char* kVersion = "0.1.0";

} // namespace mobiflow
