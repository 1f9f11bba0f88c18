#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "escatter/geometry.hpp"
#include "escatter/kinematics.hpp"
#include "escatter/types.hpp"

namespace escatter {

struct SpinEntropyResult
{
    double entropy = 0;   //!< S [bits]
    double modified = 0;  //!< S - 1 for the half-shell channels
    SpinChannel channel = SpinChannel::kSpinless;
    AngularGrid grid;
    bool zero_weight = false;  //!< channel had no weight; entropies reported as 0
};

// Parallel spins on a half-shell grid. The reduced density matrix holds
// each |c_k|^2 twice, c_k = (f_k - g_k) / sqrt(2 sum |f - g|^2), so
// S = 1 + H(w) with w the normalized |f - g|^2 cell weights.
SpinEntropyResult entropy_parallel(ScatterContext const& ctx, AngularGrid const& grid,
                                   unsigned threads = 1);

// Antiparallel spins on a half-shell grid:
// S = -sum_k (2 |f~_k|^2 log2 |f~_k|^2 + 2 |g~_k|^2 log2 |g~_k|^2) with
// f~ = f / sqrt(2 sum (|f|^2 + |g|^2)) and likewise g~.
SpinEntropyResult entropy_antiparallel(ScatterContext const& ctx,
                                       AngularGrid const& grid, unsigned threads = 1);

// Electrons made distinguishable by spin filters: the direct amplitude over
// the full shell, -sum |f~|^2 log2 |f~|^2.
double entropy_distinguishable(ScatterContext const& ctx, AngularGrid const& grid,
                               unsigned threads = 1);

struct EquatorEntropies
{
    std::size_t n_selected = 0;
    std::size_t n_ring = 0;
    double parallel_modified = 0;      //!< log2 N
    double antiparallel_modified = 0;  //!< 1 + log2 N
};

// N of the floor(pi / delta_theta) equator cells selected at theta = pi/2;
// n_selected = 0 selects the whole half ring.
EquatorEntropies equator_entropies(double delta_theta, std::size_t n_selected = 0);

struct PostselectRow
{
    double theta_r = 0;
    std::size_t n_cells = 0;
    double spinless = 0;               //!< renormalized over the range
    double parallel_modified = 0;
    double antiparallel_modified = 0;
    double delta = 0;                  //!< antiparallel minus parallel
    bool parallel_zero_weight = false;
    std::string status = "ok";
    std::string message;
};

// Entropies over the cells in [pi/2 - theta_r, pi/2] for each theta_r,
// with per-channel renormalization. Rows are in input order.
std::vector<PostselectRow> postselect_range_sweep(ScatterContext const& ctx,
                                                  std::span<double const> theta_r,
                                                  unsigned threads = 1);

}  // namespace escatter
