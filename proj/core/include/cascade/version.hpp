#pragma once

namespace cascade {

inline constexpr const char* artifact_name = "cascade";
inline constexpr const char* artifact_version = "0.1.0";

}  // namespace cascade
