#include "escatter/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "escatter/constants.hpp"
#include "escatter/error.hpp"

namespace escatter {
namespace {

void require_positive(double value, char const* what)
{
    if (!(value > 0) || !std::isfinite(value))
    {
        throw DomainError(std::string(what) + " must be positive and finite, got "
                          + std::to_string(value));
    }
}

}  // namespace

double ev_to_hartree(double energy_ev)
{
    require_positive(energy_ev, "energy [eV]");
    return energy_ev / constants::kHartreeEv;
}

double hartree_to_ev(double energy_ha)
{
    require_positive(energy_ha, "energy [Ha]");
    return energy_ha * constants::kHartreeEv;
}

double nm_to_bohr(double length_nm)
{
    require_positive(length_nm, "length [nm]");
    return length_nm / constants::kBohrNm;
}

double bohr_to_nm(double length_bohr)
{
    require_positive(length_bohr, "length [bohr]");
    return length_bohr * constants::kBohrNm;
}

double wave_number(double energy_ha, double k_scale)
{
    require_positive(energy_ha, "energy [Ha]");
    require_positive(k_scale, "k_scale");
    return k_scale * std::sqrt(energy_ha);
}

double min_scattering_angle(double energy_ha, double b_bar)
{
    require_positive(energy_ha, "energy [Ha]");
    require_positive(b_bar, "impact parameter");
    // arccot(x) = atan(1/x) on (0, inf)
    return 2 * std::atan(1 / (2 * energy_ha * b_bar));
}

ScatterContext
make_context_au(double energy_ha, double extension_bohr, double k_scale)
{
    require_positive(extension_bohr, "packet extension");
    ScatterContext ctx;
    ctx.energy_ha = energy_ha;
    ctx.k_scale = k_scale;
    ctx.k = wave_number(energy_ha, k_scale);
    ctx.extension = extension_bohr;
    ctx.sigma = extension_bohr / 2;
    ctx.sigma_k = 1 / extension_bohr;
    ctx.b_bar = extension_bohr / std::numbers::sqrt2;
    ctx.epsilon = min_scattering_angle(energy_ha, ctx.b_bar);
    ctx.delta_theta = 2 / (ctx.k * extension_bohr);
    if (!(ctx.epsilon > 0 && ctx.epsilon < constants::kPi / 2))
    {
        throw DomainError("minimum scattering angle outside (0, pi/2): "
                          + std::to_string(ctx.epsilon));
    }
    return ctx;
}

ScatterContext
make_context(double energy_ev, double extension_nm, double k_scale)
{
    return make_context_au(ev_to_hartree(energy_ev), nm_to_bohr(extension_nm),
                           k_scale);
}

}  // namespace escatter
