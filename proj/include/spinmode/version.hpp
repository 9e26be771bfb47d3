#pragma once

namespace spinmode {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kScenarioSchema = 1;
}  // namespace spinmode
