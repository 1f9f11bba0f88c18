#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "escatter/amplitudes.hpp"
#include "escatter/kinematics.hpp"
#include "escatter/types.hpp"

namespace escatter {

enum class GridKind
{
    kRings,         //!< azimuthal rings of width delta_theta
    kSpherePixels,  //!< equal solid-angle pixels, grouped by ring
    kMeridian,      //!< pixels along one meridian
    kEquatorRing,   //!< azimuthal pixels on the half ring at theta = pi/2
};

//---------------------------------------------------------------------------//
/*!
 * A one-dimensional detector discretization.
 *
 * Cells are congruent intervals of width delta_theta; cell i covers
 * [origin + i*dt, origin + (i+1)*dt]. For polar grids the coordinate is the
 * scattering angle and [theta_lo, theta_hi] the angular domain. For the
 * equator ring the coordinate is the azimuth on [0, pi).
 */
struct AngularGrid
{
    GridKind kind = GridKind::kRings;
    double theta_lo = 0;
    double theta_hi = 0;
    std::size_t n_cells = 0;
    double delta_theta = 0;
    double origin = 0;  //!< lower edge of cell 0

    double lower(std::size_t i) const { return origin + i * delta_theta; }
    double upper(std::size_t i) const { return origin + (i + 1) * delta_theta; }
    double center(std::size_t i) const { return origin + (i + 0.5) * delta_theta; }
};

// Angular domain of a channel: [eps, pi - eps], or [eps, pi/2] for the
// indistinguishable half shell.
std::pair<double, double> channel_domain(ScatterContext const& ctx,
                                         SpinChannel channel);

// Rings of width ctx.delta_theta starting at the domain's lower edge; a
// trailing partial ring is dropped.
AngularGrid ring_grid(ScatterContext const& ctx, SpinChannel channel);

// Rings covering the channel domain with exactly n_cells cells.
AngularGrid ring_grid_with_cells(ScatterContext const& ctx, SpinChannel channel,
                                 std::size_t n_cells);

// Meridian pixels covering [eps, pi - eps] with n_cells cells.
AngularGrid meridian_grid(ScatterContext const& ctx, std::size_t n_cells);

// Rings of width ctx.delta_theta inside [pi/2 - theta_r, pi/2], anchored
// at pi/2.
AngularGrid postselect_grid(ScatterContext const& ctx, double theta_r);

// floor(pi / delta_theta) azimuthal cells on the equator half ring.
AngularGrid equator_grid(double delta_theta);

// M = floor(4 pi cos(eps) / dtheta^2).
std::uint64_t sphere_pixel_count(double epsilon, double delta_theta);
std::uint64_t sphere_pixel_count(ScatterContext const& ctx);

// Sphere pixels on the ring at theta: 2 pi sin(theta) / dtheta.
double ring_weight(double theta, double delta_theta);

// 2 pi * integral of density(theta) sin(theta) over cell i.
double cell_integral(AngularGrid const& grid, std::size_t i,
                     std::function<double(double)> const& density);

// Unnormalized detection probability of cell i in a channel.
double cell_probability(AngularGrid const& grid, std::size_t i,
                        ScatterContext const& ctx, SpinChannel channel);

// Cell weights of one squared-amplitude term over all cells. Equator-ring
// cells are exactly uniform (unit weight).
std::vector<double> term_weights(AngularGrid const& grid, ScatterContext const& ctx,
                                 AmplitudeTerm term, unsigned threads = 1);

// Unnormalized probabilities of every cell for a channel.
std::vector<double> cell_probabilities(AngularGrid const& grid,
                                       ScatterContext const& ctx,
                                       SpinChannel channel, unsigned threads = 1);

}  // namespace escatter
