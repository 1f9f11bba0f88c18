#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "escatter/geometry.hpp"
#include "escatter/kinematics.hpp"
#include "escatter/types.hpp"

namespace escatter {

//---------------------------------------------------------------------------//
/*!
 * Normalized detection probabilities over the cells of a grid.
 */
struct ProbabilityVector
{
    std::vector<double> p;
    AngularGrid grid;

    // Normalize nonnegative weights; throws if they sum to zero.
    static ProbabilityVector from_weights(std::vector<double> weights,
                                          AngularGrid grid);
};

// Shannon entropy in bits, -sum p log2 p with 0 log 0 = 0. The input must be
// normalized to within 1e-9.
double shannon_bits(std::span<double const> p);
double shannon_discrete(ProbabilityVector const& pv);

// Shannon entropy of weights after normalizing them.
double shannon_of_weights(std::span<double const> weights);

// One bit for the antisymmetrized half-shell channels, zero otherwise.
double pauli_bits(SpinChannel channel);

// Cell weights of each squared-amplitude term of a channel:
// {|f|^2} (spinless, filtered), {|f-g|^2} (parallel), {|f|^2, |g|^2}
// (antiparallel).
std::vector<std::vector<double>>
channel_term_weights(AngularGrid const& grid, ScatterContext const& ctx,
                     SpinChannel channel, unsigned threads = 1);

// Entropy of the diagonal reduced density matrix of a channel on a grid:
// H(all term weights, jointly normalized) + pauli_bits(channel).
double shannon_ring_discrete(ScatterContext const& ctx, SpinChannel channel,
                             AngularGrid const& grid, unsigned threads = 1);
double shannon_ring_discrete(ScatterContext const& ctx, SpinChannel channel,
                             unsigned threads = 1);

using Density = std::function<double(double)>;

// Continuous-limit entropy of n congruent rings covering [lo, hi]:
//   -sum_c int P_c log2(L P_c) dtheta + log2 n,   L = hi - lo,
// where P_c = 2 pi density_c(theta) sin(theta) is jointly normalized.
double jaynes_ring_entropy(std::span<Density const> densities, double lo,
                           double hi, std::uint64_t n_cells);

// Continuous-limit entropy of m equal solid-angle pixels on the zone
// lo <= theta <= hi with solid angle Omega0 = 2 pi (cos lo - cos hi):
//   -2 pi sum_c int p_c sin(theta) log2(Omega0 p_c) dtheta + log2 m.
double jaynes_sphere_entropy(std::span<Density const> densities, double lo,
                             double hi, std::uint64_t n_pixels);

// Ring entropy of a channel in the continuous limit, on ring_grid(ctx,
// channel) or on a given grid. Includes pauli_bits(channel).
double shannon_ring_jaynes(ScatterContext const& ctx, SpinChannel channel);
double shannon_ring_jaynes(ScatterContext const& ctx, SpinChannel channel,
                           AngularGrid const& grid);

// Sphere-pixel entropy of a channel in the continuous limit.
double shannon_sphere_jaynes(ScatterContext const& ctx, SpinChannel channel);

// Sphere-pixel entropy evaluated as the discrete pixel sum grouped by ring:
// every ring i holds m_i = ring_weight(theta_i) pixels of equal probability,
// so S = -sum_i P_i log2(P_i / m_i). Valid for any pixel count, including
// distributions concentrated within a few pixels.
double shannon_sphere_discrete(ScatterContext const& ctx, SpinChannel channel,
                               unsigned threads = 1);

// Ring-grouped pixel sum for given ring weights (one vector per term).
double sphere_entropy_from_rings(AngularGrid const& grid,
                                 std::span<std::vector<double> const> term_weights);

//---------------------------------------------------------------------------//
// Energy sweeps
//---------------------------------------------------------------------------//

struct SweepRow
{
    double energy_ev = 0;
    std::uint64_t n_cells = 0;  //!< rings, pixels or equator cells
    double entropy = 0;         //!< discrete entropy [bits]
    double modified = 0;        //!< entropy minus the Pauli bit
    double jaynes = 0;          //!< continuous-limit entropy [bits]
    std::string status = "ok";  //!< ok | domain_error | numerical_error
    std::string message;
};

// One row per energy, assembled in input order. Rows that fail carry the
// error in `status` and `message`; the sweep continues.
std::vector<SweepRow> sweep_energies(std::span<double const> energies_ev,
                                     double extension_nm, SpinChannel channel,
                                     GridKind geometry, double k_scale = 1.0,
                                     unsigned threads = 1);

// Above this many rings the discrete ring sum is replaced by its
// continuous limit in sweeps.
inline constexpr std::uint64_t kMaxDiscreteRings = 20'000'000;

}  // namespace escatter
