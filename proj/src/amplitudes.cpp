#include "escatter/amplitudes.hpp"

#include <cmath>
#include <string>

#include "escatter/constants.hpp"
#include "escatter/error.hpp"

namespace escatter {
namespace {

void require_wave_number(double k)
{
    if (!(k > 0) || !std::isfinite(k))
        throw DomainError("wave number must be positive");
}

}  // namespace

double direct_amplitude(double theta, double k)
{
    require_wave_number(k);
    if (!(theta > 0 && theta <= constants::kPi))
    {
        throw DomainError("direct amplitude is singular or undefined at theta = "
                          + std::to_string(theta));
    }
    double const s = std::sin(theta / 2);
    return 1 / (4 * k * k * s * s);
}

double exchange_amplitude(double theta, double k)
{
    require_wave_number(k);
    if (!(theta >= 0 && theta < constants::kPi))
    {
        throw DomainError("exchange amplitude is singular or undefined at theta = "
                          + std::to_string(theta));
    }
    double const c = std::cos(theta / 2);
    return 1 / (4 * k * k * c * c);
}

double amplitude_difference(double theta, double k)
{
    require_wave_number(k);
    if (!(theta > 0 && theta < constants::kPi))
    {
        throw DomainError("amplitude difference is singular at theta = "
                          + std::to_string(theta));
    }
    double const s = std::sin(theta);
    return std::cos(theta) / (k * k * s * s);
}

double squared_amplitude(double theta, double k, AmplitudeTerm term)
{
    double a = 0;
    switch (term)
    {
        case AmplitudeTerm::kDirect: a = direct_amplitude(theta, k); break;
        case AmplitudeTerm::kExchange: a = exchange_amplitude(theta, k); break;
        case AmplitudeTerm::kDifference: a = amplitude_difference(theta, k); break;
    }
    return a * a;
}

double differential_probability(double theta, double k, SpinChannel channel)
{
    double const upper = is_half_shell(channel) ? constants::kPi / 2
                                                : constants::kPi;
    if (!(theta > 0 && theta <= upper))
    {
        throw DomainError("theta = " + std::to_string(theta)
                          + " outside the angular domain of channel "
                          + std::string(to_string(channel)));
    }
    switch (channel)
    {
        case SpinChannel::kSpinless:
        case SpinChannel::kDistinguishableBySpinFilter:
            return squared_amplitude(theta, k, AmplitudeTerm::kDirect);
        case SpinChannel::kParallel:
            return squared_amplitude(theta, k, AmplitudeTerm::kDifference);
        case SpinChannel::kAntiparallel:
            return squared_amplitude(theta, k, AmplitudeTerm::kDirect)
                   + squared_amplitude(theta, k, AmplitudeTerm::kExchange);
    }
    return 0;
}

std::string_view to_string(SpinChannel c)
{
    switch (c)
    {
        case SpinChannel::kSpinless: return "spinless";
        case SpinChannel::kParallel: return "parallel";
        case SpinChannel::kAntiparallel: return "antiparallel";
        case SpinChannel::kDistinguishableBySpinFilter: return "distinguishable";
    }
    return "unknown";
}

SpinChannel parse_spin_channel(std::string_view name)
{
    if (name == "spinless") return SpinChannel::kSpinless;
    if (name == "parallel") return SpinChannel::kParallel;
    if (name == "antiparallel") return SpinChannel::kAntiparallel;
    if (name == "distinguishable") return SpinChannel::kDistinguishableBySpinFilter;
    throw DomainError("unknown spin channel '" + std::string(name) + "'");
}

}  // namespace escatter
