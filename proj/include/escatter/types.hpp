#pragma once

#include <string>
#include <string_view>

namespace escatter {

/// Selects the amplitude combination and the angular domain of a
/// scattering calculation.
enum class SpinChannel
{
    kSpinless,                     //!< distinguishable, |f|^2 on the full shell
    kParallel,                     //!< |f - g|^2 on the half shell
    kAntiparallel,                 //!< |f|^2 and |g|^2 on the half shell
    kDistinguishableBySpinFilter,  //!< |f|^2 on the full shell
};

/// True for the two channels of indistinguishable electrons.
constexpr bool is_half_shell(SpinChannel c)
{
    return c == SpinChannel::kParallel || c == SpinChannel::kAntiparallel;
}

std::string_view to_string(SpinChannel c);

// Accepts spinless | parallel | antiparallel | distinguishable.
SpinChannel parse_spin_channel(std::string_view name);

}  // namespace escatter
