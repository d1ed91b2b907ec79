#pragma once

namespace sedsim {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kTableau = "cash-karp-4(5)";

}  // namespace sedsim
