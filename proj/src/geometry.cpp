#include "escatter/geometry.hpp"

#include <cmath>
#include <string>

#include "escatter/constants.hpp"
#include "escatter/error.hpp"
#include "escatter/parallel.hpp"
#include "escatter/quadrature.hpp"

namespace escatter {
namespace {

using constants::kPi;
using constants::kTwoPi;

// Slack absorbing rounding when a range is an exact multiple of the width
constexpr double kCountSlack = 1e-9;

std::size_t count_cells(double length, double width)
{
    double const n = std::floor(length / width + kCountSlack);
    return n > 0 ? static_cast<std::size_t>(n) : 0;
}

void require_width(double width)
{
    if (!(width > 0) || !std::isfinite(width))
        throw DomainError("cell width must be positive");
}

double integrate_cell(double a, double b, auto const& integrand)
{
    auto const gl = quad::integrate_doubling(integrand, a, b, 1e-10, 8, 256);
    double value = gl.value;
    if (!gl.converged)
        value = quad::integrate_adaptive(integrand, a, b, 1e-10);
    if (!std::isfinite(value))
    {
        throw NumericalError("non-finite cell integral on [" + std::to_string(a)
                             + ", " + std::to_string(b) + "]");
    }
    return value;
}

}  // namespace

std::pair<double, double>
channel_domain(ScatterContext const& ctx, SpinChannel channel)
{
    if (is_half_shell(channel))
        return {ctx.epsilon, kPi / 2};
    return {ctx.epsilon, kPi - ctx.epsilon};
}

AngularGrid ring_grid(ScatterContext const& ctx, SpinChannel channel)
{
    require_width(ctx.delta_theta);
    auto const [lo, hi] = channel_domain(ctx, channel);
    AngularGrid grid;
    grid.kind = GridKind::kRings;
    grid.theta_lo = lo;
    grid.theta_hi = hi;
    grid.delta_theta = ctx.delta_theta;
    grid.origin = lo;
    grid.n_cells = count_cells(hi - lo, ctx.delta_theta);
    if (grid.n_cells < 1)
    {
        throw DomainError("fewer than one detector: delta_theta = "
                          + std::to_string(ctx.delta_theta)
                          + " exceeds the angular domain");
    }
    return grid;
}

AngularGrid ring_grid_with_cells(ScatterContext const& ctx, SpinChannel channel,
                                 std::size_t n_cells)
{
    if (n_cells < 1)
        throw DomainError("a grid needs at least one cell");
    auto const [lo, hi] = channel_domain(ctx, channel);
    AngularGrid grid;
    grid.kind = GridKind::kRings;
    grid.theta_lo = lo;
    grid.theta_hi = hi;
    grid.n_cells = n_cells;
    grid.delta_theta = (hi - lo) / static_cast<double>(n_cells);
    grid.origin = lo;
    return grid;
}

AngularGrid meridian_grid(ScatterContext const& ctx, std::size_t n_cells)
{
    AngularGrid grid
        = ring_grid_with_cells(ctx, SpinChannel::kSpinless, n_cells);
    grid.kind = GridKind::kMeridian;
    return grid;
}

AngularGrid postselect_grid(ScatterContext const& ctx, double theta_r)
{
    require_width(ctx.delta_theta);
    double const max_range = kPi / 2 - ctx.epsilon;
    if (!(theta_r > 0) || theta_r > max_range * (1 + 1e-12))
    {
        throw DomainError("post-selected range theta_r = " + std::to_string(theta_r)
                          + " outside (0, pi/2 - eps]");
    }
    AngularGrid grid;
    grid.kind = GridKind::kRings;
    grid.theta_hi = kPi / 2;
    grid.theta_lo = kPi / 2 - theta_r;
    grid.delta_theta = ctx.delta_theta;
    grid.n_cells = count_cells(theta_r, ctx.delta_theta);
    if (grid.n_cells < 1)
    {
        throw DomainError("post-selected range theta_r = " + std::to_string(theta_r)
                          + " contains no complete detector cell");
    }
    grid.origin = grid.theta_hi - grid.n_cells * grid.delta_theta;
    // The lowest cell may not cross the cutoff angle
    if (grid.origin < ctx.epsilon)
    {
        grid.n_cells -= 1;
        grid.origin += grid.delta_theta;
        if (grid.n_cells < 1)
            throw DomainError("post-selected range contains no detector cell");
    }
    return grid;
}

AngularGrid equator_grid(double delta_theta)
{
    require_width(delta_theta);
    AngularGrid grid;
    grid.kind = GridKind::kEquatorRing;
    grid.theta_lo = 0;
    grid.theta_hi = kPi;
    grid.delta_theta = delta_theta;
    grid.origin = 0;
    grid.n_cells = count_cells(kPi, delta_theta);
    if (grid.n_cells < 1)
        throw DomainError("fewer than one detector on the equator ring");
    return grid;
}

std::uint64_t sphere_pixel_count(double epsilon, double delta_theta)
{
    require_width(delta_theta);
    if (!(epsilon >= 0 && epsilon < kPi / 2))
        throw DomainError("cutoff angle outside [0, pi/2)");
    double const solid_angle = 4 * kPi * std::cos(epsilon);
    return static_cast<std::uint64_t>(
        std::floor(solid_angle / (delta_theta * delta_theta) + kCountSlack));
}

std::uint64_t sphere_pixel_count(ScatterContext const& ctx)
{
    return sphere_pixel_count(ctx.epsilon, ctx.delta_theta);
}

double ring_weight(double theta, double delta_theta)
{
    require_width(delta_theta);
    return kTwoPi * std::sin(theta) / delta_theta;
}

double cell_integral(AngularGrid const& grid, std::size_t i,
                     std::function<double(double)> const& density)
{
    if (i >= grid.n_cells)
        throw DomainError("cell index out of range");
    auto integrand = [&](double t) { return density(t) * std::sin(t); };
    return kTwoPi * integrate_cell(grid.lower(i), grid.upper(i), integrand);
}

double cell_probability(AngularGrid const& grid, std::size_t i,
                        ScatterContext const& ctx, SpinChannel channel)
{
    if (i >= grid.n_cells)
        throw DomainError("cell index out of range");
    if (grid.kind == GridKind::kEquatorRing)
        return 1.0;
    double const k = ctx.k;
    auto integrand = [k, channel](double t) {
        return differential_probability(t, k, channel) * std::sin(t);
    };
    return kTwoPi * integrate_cell(grid.lower(i), grid.upper(i), integrand);
}

std::vector<double> term_weights(AngularGrid const& grid, ScatterContext const& ctx,
                                 AmplitudeTerm term, unsigned threads)
{
    std::vector<double> weights(grid.n_cells, 1.0);
    if (grid.kind == GridKind::kEquatorRing)
        return weights;
    double const k = ctx.k;
    auto integrand = [k, term](double t) {
        return squared_amplitude(t, k, term) * std::sin(t);
    };
    parallel_for(grid.n_cells, threads, [&](std::size_t i) {
        weights[i] = kTwoPi * integrate_cell(grid.lower(i), grid.upper(i), integrand);
    });
    return weights;
}

std::vector<double> cell_probabilities(AngularGrid const& grid,
                                       ScatterContext const& ctx,
                                       SpinChannel channel, unsigned threads)
{
    std::vector<double> p(grid.n_cells, 1.0);
    if (grid.kind == GridKind::kEquatorRing)
        return p;
    parallel_for(grid.n_cells, threads, [&](std::size_t i) {
        p[i] = cell_probability(grid, i, ctx, channel);
    });
    return p;
}

}  // namespace escatter
