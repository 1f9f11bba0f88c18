#include "escatter/bessel.hpp"

#include <cmath>
#include <limits>

#include "escatter/constants.hpp"

namespace escatter {

double scaled_bessel_i0(double x)
{
    x = std::abs(x);
    if (std::isnan(x))
        return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(x))
        return 0;

    if (x <= kScaledI0Switch)
    {
        // sum_k (x^2/4)^k / (k!)^2, all terms positive
        double const y = x * x / 4;
        double term = 1;
        double sum = 1;
        for (int k = 1; k < 200; ++k)
        {
            term *= y / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return sum * std::exp(-x);
    }

    // e^-x I0(x) ~ (2 pi x)^-1/2 sum_k ((2k-1)!!)^2 / (k! (8x)^k)
    double term = 1;
    double sum = 1;
    for (int k = 1; k < 100; ++k)
    {
        double const next = term * (2.0 * k - 1) * (2.0 * k - 1) / (8.0 * k * x);
        if (next >= term)
            break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum / std::sqrt(constants::kTwoPi * x);
}

}  // namespace escatter
