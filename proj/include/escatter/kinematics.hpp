#pragma once

namespace escatter {

double ev_to_hartree(double energy_ev);
double hartree_to_ev(double energy_ha);
double nm_to_bohr(double length_nm);
double bohr_to_nm(double length_bohr);

// Wave number of each electron in the CM system for total CM kinetic
// energy `energy_ha`: K = k_scale * sqrt(E).
double wave_number(double energy_ha, double k_scale = 1.0);

// Impact-parameter cutoff angle 2 arccot(2 E b) for total CM energy E and
// limiting impact parameter b (atomic units). Strictly decreasing in E and b.
double min_scattering_angle(double energy_ha, double b_bar);

//---------------------------------------------------------------------------//
/*!
 * Kinematics of a head-on collision of two Gaussian packets in the CM
 * system. All fields are in Hartree atomic units.
 *
 * Invariants: sigma_k = 1/L, b_bar = L/sqrt(2), delta_theta = 2/(K L),
 * 0 < epsilon < pi/2.
 */
struct ScatterContext
{
    double energy_ha = 0;    //!< total kinetic energy of both electrons
    double k = 0;            //!< wave number of each electron
    double extension = 0;    //!< packet extension L = 2 sigma
    double sigma = 0;        //!< real-space standard deviation
    double sigma_k = 0;      //!< momentum-space standard deviation
    double b_bar = 0;        //!< limiting impact parameter
    double epsilon = 0;      //!< minimum scattering angle [rad]
    double delta_theta = 0;  //!< detector pixel width [rad]
    double k_scale = 1.0;    //!< calibration multiplier applied to K

    //! Smallest momentum transfer K * epsilon
    double q_min() const { return k * epsilon; }
    //! Largest momentum transfer on the energy shell
    double q_max() const { return 2 * k; }
};

// Build from atomic-unit energy and packet extension.
ScatterContext make_context_au(double energy_ha, double extension_bohr,
                               double k_scale = 1.0);

// Build from energy in eV and packet extension in nm.
ScatterContext make_context(double energy_ev, double extension_nm,
                            double k_scale = 1.0);

}  // namespace escatter
