#pragma once

namespace sphere7::tol {

inline constexpr double unit = 1e-10;    // unitarity acceptance
inline constexpr double patch = 1e-8;    // "coordinate is zero"
inline constexpr double sphere = 1e-10;  // sphere and tangency constraints
inline constexpr double rep = 1e-10;     // representation identities
inline constexpr double radicand_clamp = 1e-12;

}  // namespace sphere7::tol
