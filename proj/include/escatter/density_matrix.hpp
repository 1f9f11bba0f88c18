#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "escatter/geometry.hpp"
#include "escatter/kinematics.hpp"

namespace escatter {

//---------------------------------------------------------------------------//
/*!
 * Discretized reduced one-electron density matrix on a meridian.
 *
 * Sample i sits at the center theta_i of a meridian cell, with momentum
 * transfer q_i = 2 K sin(theta_i / 2) and quadrature weight w_i for the
 * polar measure q dq (proportional to sin(theta_i) times the cell width).
 * The matrix holds sqrt(w_i w_j) rho(q_i, q_j), so that its eigenvalues are
 * those of the integral operator with kernel rho.
 */
struct DensityMatrix
{
    AngularGrid grid;
    std::vector<double> theta;
    std::vector<double> q;
    std::vector<double> weight;
    Eigen::MatrixXd rho;
    bool trace_normalized = false;

    std::size_t size() const { return theta.size(); }
};

// Coulomb-convolved Gaussian kernel rho(q, q') on the meridian (arbitrary
// overall scale). The q'' integral runs over [K eps, 2K].
double kernel_element(double q, double q_prime, ScatterContext const& ctx);

inline constexpr std::size_t kDefaultGridCap = 4096;

// Build and trace-normalize the matrix on n_grid meridian cells covering
// [eps, pi - eps].
DensityMatrix build_meridian_matrix(ScatterContext const& ctx, std::size_t n_grid,
                                    std::size_t grid_cap = kDefaultGridCap,
                                    unsigned threads = 1);

// Throws NumericalError unless the matrix is symmetric to 1e-12 max|rho|
// and, when trace-normalized, has unit trace.
void check_density_matrix(DensityMatrix const& dm);

// All eigenvalues of a symmetric matrix, descending, without clamping.
std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd const& m);

// Spectrum of a trace-normalized density matrix, descending. Eigenvalues in
// [-1e-10, 0) are clamped to zero; more negative ones are kept so that
// von_neumann_entropy can reject them.
std::vector<double> eigen_spectrum(DensityMatrix const& dm);

// -sum lambda log2 lambda; throws if an eigenvalue is below -1e-10 or the
// spectrum does not sum to one.
double von_neumann_entropy(std::span<double const> spectrum);

// Median over rows of the number of entries whose coherence
// |rho_ij| / sqrt(rho_ii rho_jj) exceeds rel.
std::size_t band_width(DensityMatrix const& dm, double rel = 1e-6);

struct VnComparison
{
    double energy_ev = 0;
    std::size_t n_grid = 0;
    double von_neumann = 0;    //!< S_N of the meridian matrix
    double diagonal = 0;       //!< Shannon entropy of diag(rho)
    double ring_matched = 0;   //!< ring Shannon entropy on the same cells
    double ring_detector = 0;  //!< ring Shannon entropy at width 2/(K L)
};

VnComparison vn_compare(ScatterContext const& ctx, std::size_t n_grid,
                        std::size_t grid_cap = kDefaultGridCap,
                        unsigned threads = 1);

// Write theta, q, weight, the spectrum and rho as CSV.
void write_density_csv(DensityMatrix const& dm, std::span<double const> spectrum,
                       std::filesystem::path const& path);

}  // namespace escatter
