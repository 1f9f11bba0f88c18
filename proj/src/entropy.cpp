#include "escatter/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "escatter/amplitudes.hpp"
#include "escatter/constants.hpp"
#include "escatter/error.hpp"
#include "escatter/parallel.hpp"
#include "escatter/quadrature.hpp"
#include "escatter/summation.hpp"

namespace escatter {
namespace {

using constants::kPi;
using constants::kTwoPi;

constexpr double kJaynesRelTol = 1e-8;

std::vector<AmplitudeTerm> channel_terms(SpinChannel channel)
{
    switch (channel)
    {
        case SpinChannel::kParallel: return {AmplitudeTerm::kDifference};
        case SpinChannel::kAntiparallel:
            return {AmplitudeTerm::kDirect, AmplitudeTerm::kExchange};
        default: return {AmplitudeTerm::kDirect};
    }
}

std::vector<Density> channel_densities(ScatterContext const& ctx, SpinChannel channel)
{
    std::vector<Density> densities;
    double const k = ctx.k;
    for (auto term : channel_terms(channel))
    {
        densities.emplace_back(
            [k, term](double t) { return squared_amplitude(t, k, term); });
    }
    return densities;
}

// Break points scaled to the distance from the poles at 0 and pi, so that
// each piece sees a slowly varying integrand.
std::vector<double> breakpoints(double lo, double hi)
{
    std::vector<double> pts{lo, hi};
    if (lo > 0)
    {
        for (double t = 2 * lo; t < hi; t *= 2)
            pts.push_back(t);
    }
    double const upper_gap = kPi - hi;
    if (upper_gap > 0)
    {
        for (double d = 2 * upper_gap; kPi - d > lo; d *= 2)
            pts.push_back(kPi - d);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template<class F>
double integrate_pieces(F const& f, std::vector<double> const& pts)
{
    std::vector<double> parts(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        parts[i] = quad::integrate_adaptive(f, pts[i], pts[i + 1], kJaynesRelTol);
    double const total = compensated_sum(parts);
    if (!std::isfinite(total))
        throw NumericalError("non-finite entropy integral");
    return total;
}

// Z = 2 pi sum_c int density_c sin
double total_weight(std::span<Density const> densities,
                    std::vector<double> const& pts)
{
    double z = 0;
    for (auto const& d : densities)
        z += kTwoPi * integrate_pieces([&](double t) { return d(t) * std::sin(t); }, pts);
    if (!(z > 0))
        throw NumericalError("density has no weight on the domain");
    return z;
}

void require_range(double lo, double hi)
{
    if (!(lo >= 0 && hi <= kPi && lo < hi))
        throw DomainError("invalid angular range");
}

std::string status_from(std::exception const& e)
{
    if (dynamic_cast<DomainError const*>(&e))
        return "domain_error";
    return "numerical_error";
}

}  // namespace

ProbabilityVector ProbabilityVector::from_weights(std::vector<double> weights,
                                                  AngularGrid grid)
{
    for (double w : weights)
    {
        if (!(w >= 0) || !std::isfinite(w))
            throw DomainError("weights must be finite and nonnegative");
    }
    double const total = compensated_sum(weights);
    if (!(total > 0))
        throw DomainError("weights sum to zero");
    for (double& w : weights)
        w /= total;
    return {std::move(weights), grid};
}

double shannon_bits(std::span<double const> p)
{
    double const total = compensated_sum(p);
    if (std::abs(total - 1) > 1e-9)
    {
        throw DomainError("probability vector is not normalized (sum = "
                          + std::to_string(total) + ")");
    }
    std::vector<double> terms(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        if (p[i] < 0)
            throw DomainError("negative probability");
        if (p[i] > 0)
            terms[i] = -p[i] * std::log2(p[i]);
    }
    return compensated_sum(terms);
}

double shannon_discrete(ProbabilityVector const& pv)
{
    return shannon_bits(pv.p);
}

double shannon_of_weights(std::span<double const> weights)
{
    auto pv = ProbabilityVector::from_weights({weights.begin(), weights.end()}, {});
    return shannon_bits(pv.p);
}

double pauli_bits(SpinChannel channel)
{
    return is_half_shell(channel) ? 1.0 : 0.0;
}

std::vector<std::vector<double>>
channel_term_weights(AngularGrid const& grid, ScatterContext const& ctx,
                     SpinChannel channel, unsigned threads)
{
    std::vector<std::vector<double>> weights;
    for (auto term : channel_terms(channel))
        weights.push_back(term_weights(grid, ctx, term, threads));
    return weights;
}

double shannon_ring_discrete(ScatterContext const& ctx, SpinChannel channel,
                             AngularGrid const& grid, unsigned threads)
{
    std::vector<double> all;
    for (auto const& w : channel_term_weights(grid, ctx, channel, threads))
        all.insert(all.end(), w.begin(), w.end());
    return shannon_of_weights(all) + pauli_bits(channel);
}

double shannon_ring_discrete(ScatterContext const& ctx, SpinChannel channel,
                             unsigned threads)
{
    return shannon_ring_discrete(ctx, channel, ring_grid(ctx, channel), threads);
}

double jaynes_ring_entropy(std::span<Density const> densities, double lo,
                           double hi, std::uint64_t n_cells)
{
    require_range(lo, hi);
    if (n_cells < 1)
        throw DomainError("at least one ring is required");
    auto const pts = breakpoints(lo, hi);
    double const z = total_weight(densities, pts);
    double const length = hi - lo;

    double integral = 0;
    for (auto const& d : densities)
    {
        integral += integrate_pieces(
            [&](double t) {
                double const p = kTwoPi * d(t) * std::sin(t) / z;
                return p > 0 ? p * std::log2(length * p) : 0.0;
            },
            pts);
    }
    return -integral + std::log2(static_cast<double>(n_cells));
}

double jaynes_sphere_entropy(std::span<Density const> densities, double lo,
                             double hi, std::uint64_t n_pixels)
{
    require_range(lo, hi);
    if (n_pixels < 1)
        throw DomainError("at least one pixel is required");
    auto const pts = breakpoints(lo, hi);
    double const z = total_weight(densities, pts);
    double const solid_angle = kTwoPi * (std::cos(lo) - std::cos(hi));

    double integral = 0;
    for (auto const& d : densities)
    {
        integral += integrate_pieces(
            [&](double t) {
                double const p = d(t) / z;
                return p > 0 ? p * std::sin(t) * std::log2(solid_angle * p) : 0.0;
            },
            pts);
    }
    return -kTwoPi * integral + std::log2(static_cast<double>(n_pixels));
}

double shannon_ring_jaynes(ScatterContext const& ctx, SpinChannel channel)
{
    return shannon_ring_jaynes(ctx, channel, ring_grid(ctx, channel));
}

double shannon_ring_jaynes(ScatterContext const& ctx, SpinChannel channel,
                           AngularGrid const& grid)
{
    auto const densities = channel_densities(ctx, channel);
    if (grid.kind == GridKind::kEquatorRing)
    {
        // Uniform cells: the integral term vanishes
        return std::log2(static_cast<double>(grid.n_cells * densities.size()))
               + pauli_bits(channel);
    }
    double const lo = grid.origin;
    double const hi = grid.upper(grid.n_cells - 1);
    return jaynes_ring_entropy(densities, lo, hi, grid.n_cells) + pauli_bits(channel);
}

double shannon_sphere_jaynes(ScatterContext const& ctx, SpinChannel channel)
{
    auto const [lo, hi] = channel_domain(ctx, channel);
    double const solid_angle = kTwoPi * (std::cos(lo) - std::cos(hi));
    auto const n_pixels = static_cast<std::uint64_t>(
        std::floor(solid_angle / (ctx.delta_theta * ctx.delta_theta) + 1e-9));
    if (n_pixels < 1)
        throw DomainError("fewer than one sphere pixel");
    auto const densities = channel_densities(ctx, channel);
    return jaynes_sphere_entropy(densities, lo, hi, n_pixels) + pauli_bits(channel);
}

double sphere_entropy_from_rings(AngularGrid const& grid,
                                 std::span<std::vector<double> const> term_weights)
{
    std::vector<double> all;
    for (auto const& w : term_weights)
    {
        if (w.size() != grid.n_cells)
            throw DomainError("ring weights do not match the grid");
        all.insert(all.end(), w.begin(), w.end());
    }
    auto const pv = ProbabilityVector::from_weights(std::move(all), grid);

    // -sum P log2 (P / m) = H(P) + sum P log2 m
    std::vector<double> pixel_terms(grid.n_cells * term_weights.size());
    for (std::size_t c = 0; c < term_weights.size(); ++c)
    {
        for (std::size_t i = 0; i < grid.n_cells; ++i)
        {
            double const m = ring_weight(grid.center(i), grid.delta_theta);
            double const p = pv.p[c * grid.n_cells + i];
            pixel_terms[c * grid.n_cells + i] = p * std::log2(m);
        }
    }
    return shannon_bits(pv.p) + compensated_sum(pixel_terms);
}

double shannon_sphere_discrete(ScatterContext const& ctx, SpinChannel channel,
                               unsigned threads)
{
    auto const grid = ring_grid(ctx, channel);
    auto const weights = channel_term_weights(grid, ctx, channel, threads);
    return sphere_entropy_from_rings(grid, weights) + pauli_bits(channel);
}

std::vector<SweepRow> sweep_energies(std::span<double const> energies_ev,
                                     double extension_nm, SpinChannel channel,
                                     GridKind geometry, double k_scale,
                                     unsigned threads)
{
    std::vector<SweepRow> rows(energies_ev.size());
    parallel_for(rows.size(), threads, [&](std::size_t r) {
        SweepRow& row = rows[r];
        row.energy_ev = energies_ev[r];
        try
        {
            auto const ctx = make_context(energies_ev[r], extension_nm, k_scale);
            switch (geometry)
            {
                case GridKind::kRings:
                case GridKind::kMeridian: {
                    auto const grid = ring_grid(ctx, channel);
                    row.n_cells = grid.n_cells;
                    row.jaynes = shannon_ring_jaynes(ctx, channel, grid);
                    row.entropy = grid.n_cells <= kMaxDiscreteRings
                                      ? shannon_ring_discrete(ctx, channel, grid)
                                      : row.jaynes;
                    break;
                }
                case GridKind::kSpherePixels: {
                    auto const [lo, hi] = channel_domain(ctx, channel);
                    double const solid_angle = kTwoPi * (std::cos(lo) - std::cos(hi));
                    row.n_cells = static_cast<std::uint64_t>(std::floor(
                        solid_angle / (ctx.delta_theta * ctx.delta_theta) + 1e-9));
                    row.jaynes = shannon_sphere_jaynes(ctx, channel);
                    row.entropy = shannon_sphere_discrete(ctx, channel);
                    break;
                }
                case GridKind::kEquatorRing: {
                    auto const grid = equator_grid(ctx.delta_theta);
                    row.n_cells = grid.n_cells;
                    row.entropy = shannon_ring_discrete(ctx, channel, grid);
                    row.jaynes = shannon_ring_jaynes(ctx, channel, grid);
                    break;
                }
            }
            row.modified = row.entropy - pauli_bits(channel);
        }
        catch (std::exception const& e)
        {
            row.status = status_from(e);
            row.message = e.what();
        }
    });
    return rows;
}

}  // namespace escatter
