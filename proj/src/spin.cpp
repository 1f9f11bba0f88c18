#include "escatter/spin.hpp"

#include <cmath>
#include <string>

#include "escatter/constants.hpp"
#include "escatter/entropy.hpp"
#include "escatter/error.hpp"
#include "escatter/parallel.hpp"
#include "escatter/summation.hpp"

namespace escatter {
namespace {

using constants::kPi;

void require_half_shell(ScatterContext const& ctx, AngularGrid const& grid)
{
    if (grid.kind == GridKind::kEquatorRing)
        return;
    if (grid.n_cells < 1 || grid.origin < ctx.epsilon * (1 - 1e-9)
        || grid.upper(grid.n_cells - 1) > kPi / 2 + 1e-12)
    {
        throw DomainError("grid is not inside the half shell [eps, pi/2]");
    }
}

std::vector<double> slice(std::vector<double> const& v, std::size_t first)
{
    return {v.begin() + static_cast<std::ptrdiff_t>(first), v.end()};
}

double sum_of(std::vector<double> const& v)
{
    return compensated_sum(v);
}

}  // namespace

SpinEntropyResult entropy_parallel(ScatterContext const& ctx, AngularGrid const& grid,
                                   unsigned threads)
{
    require_half_shell(ctx, grid);
    auto const w = term_weights(grid, ctx, AmplitudeTerm::kDifference, threads);
    if (!(sum_of(w) > 0))
        throw DomainError("zero-weight channel: |f - g|^2 vanishes on every cell");

    SpinEntropyResult result;
    result.channel = SpinChannel::kParallel;
    result.grid = grid;
    result.entropy = 1 + shannon_of_weights(w);
    result.modified = result.entropy - 1;
    return result;
}

SpinEntropyResult entropy_antiparallel(ScatterContext const& ctx,
                                       AngularGrid const& grid, unsigned threads)
{
    require_half_shell(ctx, grid);
    auto const wf = term_weights(grid, ctx, AmplitudeTerm::kDirect, threads);
    auto const wg = term_weights(grid, ctx, AmplitudeTerm::kExchange, threads);
    double const norm = 2 * (sum_of(wf) + sum_of(wg));
    if (!(norm > 0))
        throw DomainError("zero-weight channel: no antiparallel weight on the grid");

    std::vector<double> terms;
    terms.reserve(2 * grid.n_cells);
    for (auto const* w : {&wf, &wg})
    {
        for (double v : *w)
        {
            double const a = v / norm;  // |f~_k|^2 or |g~_k|^2
            terms.push_back(a > 0 ? -2 * a * std::log2(a) : 0.0);
        }
    }
    SpinEntropyResult result;
    result.channel = SpinChannel::kAntiparallel;
    result.grid = grid;
    result.entropy = compensated_sum(terms);
    result.modified = result.entropy - 1;
    return result;
}

double entropy_distinguishable(ScatterContext const& ctx, AngularGrid const& grid,
                               unsigned threads)
{
    if (grid.kind != GridKind::kEquatorRing
        && (grid.origin < ctx.epsilon * (1 - 1e-9)
            || grid.upper(grid.n_cells - 1) > (kPi - ctx.epsilon) * (1 + 1e-12)))
    {
        throw DomainError("grid is not inside the full shell [eps, pi - eps]");
    }
    auto const w = term_weights(grid, ctx, AmplitudeTerm::kDirect, threads);
    return shannon_of_weights(w);
}

EquatorEntropies equator_entropies(double delta_theta, std::size_t n_selected)
{
    AngularGrid grid = equator_grid(delta_theta);
    EquatorEntropies out;
    out.n_ring = grid.n_cells;
    if (n_selected > grid.n_cells)
    {
        throw DomainError("cannot select " + std::to_string(n_selected)
                          + " of " + std::to_string(grid.n_cells) + " equator cells");
    }
    if (n_selected > 0)
        grid.n_cells = n_selected;
    out.n_selected = grid.n_cells;

    ScatterContext const unused;
    out.parallel_modified = entropy_parallel(unused, grid).modified;
    out.antiparallel_modified = entropy_antiparallel(unused, grid).modified;
    return out;
}

std::vector<PostselectRow> postselect_range_sweep(ScatterContext const& ctx,
                                                  std::span<double const> theta_r,
                                                  unsigned threads)
{
    // Cells of every range are the top cells of the widest range
    auto const full = postselect_grid(ctx, kPi / 2 - ctx.epsilon);
    auto const wf = term_weights(full, ctx, AmplitudeTerm::kDirect, threads);
    auto const wg = term_weights(full, ctx, AmplitudeTerm::kExchange, threads);
    auto const wd = term_weights(full, ctx, AmplitudeTerm::kDifference, threads);

    std::vector<PostselectRow> rows(theta_r.size());
    parallel_for(rows.size(), threads, [&](std::size_t r) {
        PostselectRow& row = rows[r];
        row.theta_r = theta_r[r];
        try
        {
            std::size_t const n = std::min(postselect_grid(ctx, theta_r[r]).n_cells,
                                           full.n_cells);
            std::size_t const first = full.n_cells - n;
            row.n_cells = n;

            auto const f = slice(wf, first);
            auto const g = slice(wg, first);
            auto const d = slice(wd, first);
            row.spinless = shannon_of_weights(f);
            if (sum_of(d) > 0)
            {
                row.parallel_modified = shannon_of_weights(d);
            }
            else
            {
                row.parallel_modified = 0;
                row.parallel_zero_weight = true;
            }
            std::vector<double> fg = f;
            fg.insert(fg.end(), g.begin(), g.end());
            row.antiparallel_modified = shannon_of_weights(fg);
            row.delta = row.antiparallel_modified - row.parallel_modified;
        }
        catch (DomainError const& e)
        {
            row.status = "domain_error";
            row.message = e.what();
        }
        catch (std::exception const& e)
        {
            row.status = "numerical_error";
            row.message = e.what();
        }
    });
    return rows;
}

}  // namespace escatter
