#include "escatter/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "escatter/bessel.hpp"
#include "escatter/constants.hpp"
#include "escatter/entropy.hpp"
#include "escatter/error.hpp"
#include "escatter/parallel.hpp"
#include "escatter/quadrature.hpp"
#include "escatter/summation.hpp"

namespace escatter {
namespace {

// exp(-745) underflows to zero in double precision
constexpr double kUnderflowExponent = 745;
// Half-width of the q'' window in units of sigma_k (Gaussian factor e^-128)
constexpr double kWindowSigmas = 16;

}  // namespace

double kernel_element(double q, double q_prime, ScatterContext const& ctx)
{
    double const q_min = ctx.q_min();
    double const q_max = ctx.q_max();
    if (q < q_min * (1 - 1e-12) || q_prime < q_min * (1 - 1e-12))
        throw DomainError("momentum transfer below K * eps");

    double const var = ctx.sigma_k * ctx.sigma_k;
    double const gap = (q - q_prime) * (q - q_prime) / (8 * var);
    if (gap > kUnderflowExponent)
        return 0;

    // The exponents -(q^2 + q'^2)/4s^2 - q''^2/2s^2 + x of the Gaussians and
    // of I0(x) = e^x I0~(x), x = (q + q') q''/2s^2, combine to
    // -(q - q')^2/8s^2 - (q'' - m)^2/2s^2 with m = (q + q')/2.
    double const mid = (q + q_prime) / 2;
    double const lo = std::max(q_min, mid - kWindowSigmas * ctx.sigma_k);
    double const hi = std::min(q_max, mid + kWindowSigmas * ctx.sigma_k);
    if (lo >= hi)
        return 0;

    double const sum = q + q_prime;
    auto integrand = [&](double x) {
        double const d = x - mid;
        double const f = 1 / (x * x);  // |f(q'')| = 1 / q''^2
        return x * scaled_bessel_i0(sum * x / (2 * var))
               * std::exp(-d * d / (2 * var)) * f * f;
    };
    auto const gl = quad::integrate_doubling(integrand, lo, hi, 1e-9, 16, 1024);
    double integral = gl.value;
    if (!gl.converged)
        integral = quad::integrate_adaptive(integrand, lo, hi, 1e-10);

    double const value = constants::kTwoPi * std::exp(-gap) * integral;
    if (!std::isfinite(value))
    {
        std::ostringstream msg;
        msg << "non-finite density-matrix element at q = " << q << ", q' = "
            << q_prime << " (exponent " << -gap << ", Bessel argument "
            << sum * hi / (2 * var) << ")";
        throw NumericalError(msg.str());
    }
    return value;
}

DensityMatrix build_meridian_matrix(ScatterContext const& ctx, std::size_t n_grid,
                                    std::size_t grid_cap, unsigned threads)
{
    if (n_grid < 2)
        throw DomainError("the meridian grid needs at least two points");
    if (n_grid > grid_cap)
    {
        throw DomainError("meridian grid of " + std::to_string(n_grid)
                          + " points exceeds the cap of " + std::to_string(grid_cap)
                          + "; subsample the grid or raise the cap");
    }

    DensityMatrix dm;
    dm.grid = meridian_grid(ctx, n_grid);
    dm.theta.resize(n_grid);
    dm.q.resize(n_grid);
    dm.weight.resize(n_grid);
    for (std::size_t i = 0; i < n_grid; ++i)
    {
        dm.theta[i] = dm.grid.center(i);
        dm.q[i] = 2 * ctx.k * std::sin(dm.theta[i] / 2);
        dm.weight[i] = std::sin(dm.theta[i]) * dm.grid.delta_theta;
    }

    dm.rho = Eigen::MatrixXd::Zero(n_grid, n_grid);
    double const var = ctx.sigma_k * ctx.sigma_k;
    // Rows fill the upper triangle; q increases along the grid, so each row
    // stops once the off-diagonal Gaussian underflows.
    parallel_for(n_grid, threads, [&](std::size_t i) {
        for (std::size_t j = i; j < n_grid; ++j)
        {
            double const dq = dm.q[j] - dm.q[i];
            if (dq * dq / (8 * var) > kUnderflowExponent)
                break;
            dm.rho(i, j) = std::sqrt(dm.weight[i] * dm.weight[j])
                           * kernel_element(dm.q[i], dm.q[j], ctx);
        }
    });
    for (std::size_t i = 0; i < n_grid; ++i)
    {
        for (std::size_t j = i + 1; j < n_grid; ++j)
            dm.rho(j, i) = dm.rho(i, j);
    }

    std::vector<double> diag(n_grid);
    for (std::size_t i = 0; i < n_grid; ++i)
        diag[i] = dm.rho(i, i);
    double const trace = compensated_sum(diag);
    if (!(trace > 0) || !std::isfinite(trace))
        throw NumericalError("density matrix has no weight");
    dm.rho /= trace;
    dm.trace_normalized = true;
    check_density_matrix(dm);
    return dm;
}

void check_density_matrix(DensityMatrix const& dm)
{
    auto const& m = dm.rho;
    if (m.rows() != m.cols())
        throw NumericalError("density matrix is not square");
    double const scale = m.cwiseAbs().maxCoeff();
    if (!std::isfinite(scale))
        throw NumericalError("density matrix has non-finite entries");
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
        {
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale)
                throw NumericalError("density matrix is not symmetric");
        }
    }
    if (dm.trace_normalized && std::abs(m.trace() - 1) > 1e-9)
        throw NumericalError("density matrix trace differs from one");
}

std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd const& m)
{
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DomainError("eigenvalues need a nonempty square matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("symmetric eigensolver did not converge");
    auto const& values = solver.eigenvalues();
    std::vector<double> out(values.data(), values.data() + values.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::vector<double> eigen_spectrum(DensityMatrix const& dm)
{
    check_density_matrix(dm);
    auto spectrum = symmetric_eigenvalues(dm.rho);
    for (double& v : spectrum)
    {
        if (v < 0 && v >= -1e-10)
            v = 0;
    }
    if (std::abs(compensated_sum(spectrum) - 1) > 1e-9)
        throw NumericalError("eigenvalues do not sum to one");
    return spectrum;
}

double von_neumann_entropy(std::span<double const> spectrum)
{
    std::vector<double> terms(spectrum.size(), 0.0);
    for (std::size_t i = 0; i < spectrum.size(); ++i)
    {
        double const v = spectrum[i];
        if (v < -1e-10)
        {
            throw NumericalError("negative eigenvalue " + std::to_string(v)
                                 + ": matrix is not positive semidefinite");
        }
        if (v > 0)
            terms[i] = -v * std::log2(v);
    }
    if (std::abs(compensated_sum(spectrum) - 1) > 1e-9)
        throw DomainError("spectrum does not sum to one");
    return compensated_sum(terms);
}

std::size_t band_width(DensityMatrix const& dm, double rel)
{
    auto const n = static_cast<Eigen::Index>(dm.size());
    std::vector<std::size_t> counts(n, 0);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (Eigen::Index j = 0; j < n; ++j)
        {
            double const norm = std::sqrt(dm.rho(i, i) * dm.rho(j, j));
            if (norm > 0 && std::abs(dm.rho(i, j)) > rel * norm)
                ++counts[i];
        }
    }
    std::nth_element(counts.begin(), counts.begin() + n / 2, counts.end());
    return counts[n / 2];
}

VnComparison vn_compare(ScatterContext const& ctx, std::size_t n_grid,
                        std::size_t grid_cap, unsigned threads)
{
    auto const dm = build_meridian_matrix(ctx, n_grid, grid_cap, threads);
    auto const spectrum = eigen_spectrum(dm);

    VnComparison out;
    out.energy_ev = ctx.energy_ha * constants::kHartreeEv;
    out.n_grid = n_grid;
    out.von_neumann = von_neumann_entropy(spectrum);
    std::vector<double> diag(dm.size());
    for (std::size_t i = 0; i < dm.size(); ++i)
        diag[i] = std::max(0.0, dm.rho(i, i));
    out.diagonal = shannon_of_weights(diag);
    out.ring_matched
        = shannon_ring_discrete(ctx, SpinChannel::kSpinless, dm.grid, threads);
    out.ring_detector = shannon_ring_discrete(ctx, SpinChannel::kSpinless, threads);
    return out;
}

void write_density_csv(DensityMatrix const& dm, std::span<double const> spectrum,
                       std::filesystem::path const& path)
{
    std::ofstream out(path);
    if (!out)
        throw DomainError("cannot open " + path.string());
    out.precision(17);
    out << "index,theta,q,weight,eigenvalue";
    for (std::size_t j = 0; j < dm.size(); ++j)
        out << ",rho_" << j;
    out << '\n';
    for (std::size_t i = 0; i < dm.size(); ++i)
    {
        out << i << ',' << dm.theta[i] << ',' << dm.q[i] << ',' << dm.weight[i]
            << ',' << (i < spectrum.size() ? spectrum[i] : 0.0);
        for (std::size_t j = 0; j < dm.size(); ++j)
            out << ',' << dm.rho(i, j);
        out << '\n';
    }
}

}  // namespace escatter
