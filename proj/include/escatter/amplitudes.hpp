#pragma once

#include "escatter/types.hpp"

namespace escatter {

// Coulomb amplitudes on the energy shell, real and unnormalized:
//   f(theta) = 1 / (4 K^2 sin^2(theta/2))   (direct)
//   g(theta) = 1 / (4 K^2 cos^2(theta/2))   (exchange), g(theta) = f(pi - theta)
double direct_amplitude(double theta, double k);
double exchange_amplitude(double theta, double k);

// f - g evaluated as cos(theta) / (K^2 sin^2 theta), free of cancellation
// near theta = pi/2.
double amplitude_difference(double theta, double k);

/// Squared-amplitude term entering a cell weight.
enum class AmplitudeTerm
{
    kDirect,      //!< |f|^2
    kExchange,    //!< |g|^2
    kDifference,  //!< |f - g|^2
};

double squared_amplitude(double theta, double k, AmplitudeTerm term);

// Unnormalized differential probability p(theta) of a channel:
// spinless/filtered |f|^2, parallel |f-g|^2, antiparallel |f|^2 + |g|^2.
// The half-shell channels are defined on (0, pi/2], the others on (0, pi].
double differential_probability(double theta, double k, SpinChannel channel);

}  // namespace escatter
