#pragma once

namespace coxeter {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace coxeter
