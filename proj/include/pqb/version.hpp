#pragma once

namespace pqb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pqb
