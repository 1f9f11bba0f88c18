#pragma once

#include <numbers>

namespace escatter::constants {

// Hartree atomic units (hbar = m_e = e = 4 pi eps0 = 1) are used internally.
inline constexpr double kHartreeEv = 27.211386245988;  // eV per Hartree
inline constexpr double kBohrNm = 0.052917721;         // nm per Bohr radius

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Multiplier on K = sqrt(E) giving K = sqrt(2 E), the wave number of one
// electron carrying the full collision energy. The reference entropy values
// in the acceptance suite and README are produced with this calibration.
inline constexpr double kReferenceKScale = std::numbers::sqrt2;

}  // namespace escatter::constants
