#pragma once

#include <cmath>
#include <span>

namespace escatter {

// Neumaier-compensated sum in index order; the result depends only on the
// sequence, never on how it was produced.
inline double compensated_sum(std::span<double const> values)
{
    double sum = 0;
    double c = 0;
    for (double v : values)
    {
        double const t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            c += (sum - t) + v;
        else
            c += (v - t) + sum;
        sum = t;
    }
    return sum + c;
}

}  // namespace escatter
