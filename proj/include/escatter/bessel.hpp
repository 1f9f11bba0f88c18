#pragma once

namespace escatter {

// Exponentially scaled modified Bessel function of the first kind,
// exp(-|x|) I0(x). Power series for |x| <= kScaledI0Switch, large-argument
// asymptotic series above.
double scaled_bessel_i0(double x);

inline constexpr double kScaledI0Switch = 15.0;

}  // namespace escatter
