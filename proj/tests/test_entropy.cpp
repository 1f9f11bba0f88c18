#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "escatter/amplitudes.hpp"
#include "escatter/entropy.hpp"
#include "escatter/error.hpp"
#include "escatter/geometry.hpp"
#include "escatter/kinematics.hpp"

using namespace escatter;
using std::numbers::pi;

namespace {

ScatterContext synthetic_context(double epsilon, double delta_theta)
{
    ScatterContext ctx;
    ctx.energy_ha = 1;
    ctx.k = 1;
    ctx.extension = 1;
    ctx.epsilon = epsilon;
    ctx.delta_theta = delta_theta;
    return ctx;
}

// Direct -sum p log2 p written out without the library helpers.
double plain_entropy(std::vector<double> w)
{
    double total = 0;
    for (double x : w)
        total += x;
    double s = 0;
    for (double x : w)
    {
        if (x > 0)
            s -= x / total * std::log2(x / total);
    }
    return s;
}

}  // namespace

TEST_CASE("Shannon entropy of small distributions")
{
    CHECK(shannon_bits(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(shannon_bits(std::vector<double>{1, 0, 0, 0}) == 0.0);
    CHECK(shannon_bits(std::vector<double>(8, 0.125)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(shannon_bits(std::vector<double>{0.5, 0.6}), DomainError);
    CHECK_THROWS_AS(shannon_bits(std::vector<double>{1.5, -0.5}), DomainError);
    CHECK(shannon_of_weights(std::vector<double>{3, 3, 3, 3}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(shannon_of_weights(std::vector<double>{0, 0}), DomainError);

    auto const pv = ProbabilityVector::from_weights({1, 2, 3, 4}, AngularGrid{});
    double sum = 0;
    for (double p : pv.p)
        sum += p;
    CHECK(std::abs(sum - 1) <= 1e-12);
    CHECK(shannon_discrete(pv) == doctest::Approx(plain_entropy({1, 2, 3, 4})).epsilon(1e-14));
}

TEST_CASE("Pauli bit")
{
    CHECK(pauli_bits(SpinChannel::kSpinless) == 0);
    CHECK(pauli_bits(SpinChannel::kDistinguishableBySpinFilter) == 0);
    CHECK(pauli_bits(SpinChannel::kParallel) == 1);
    CHECK(pauli_bits(SpinChannel::kAntiparallel) == 1);
}

TEST_CASE("Jaynes forms reduce to log2 of the cell count for uniform densities")
{
    // P(theta) = 2 pi d(theta) sin(theta) is flat for d = 1 / sin
    std::vector<Density> ring{[](double t) { return 1 / std::sin(t); }};
    CHECK(jaynes_ring_entropy(ring, 0.3, 2.5, 1000)
          == doctest::Approx(std::log2(1000.0)).epsilon(1e-9));

    std::vector<Density> sphere{[](double) { return 1.0; }};
    CHECK(jaynes_sphere_entropy(sphere, 0.1, pi - 0.1, 123456)
          == doctest::Approx(std::log2(123456.0)).epsilon(1e-9));

    CHECK_THROWS_AS(jaynes_ring_entropy(ring, 1.0, 0.5, 10), DomainError);
    CHECK_THROWS_AS(jaynes_ring_entropy(ring, 0.3, 2.5, 0), DomainError);
}

TEST_CASE("ring-grouped sphere sum against explicit pixel enumeration")
{
    auto const ctx = synthetic_context(0.05, 0.02);
    auto const grid = ring_grid(ctx, SpinChannel::kSpinless);

    // Uniform on the sphere: every pixel equally likely
    std::vector<double> w(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i)
        w[i] = std::cos(grid.lower(i)) - std::cos(grid.upper(i));
    std::vector<std::vector<double>> terms{w};
    double const grouped = sphere_entropy_from_rings(grid, terms);

    // Enumerate round(m_i) pixels per ring, each holding P_i / n_i
    double total_w = 0;
    for (double x : w)
        total_w += x;
    double enumerated = 0;
    double pixels = 0;
    for (std::size_t i = 0; i < grid.n_cells; ++i)
    {
        double const n = std::max(1.0, std::round(ring_weight(grid.center(i), grid.delta_theta)));
        double const p = w[i] / total_w / n;
        for (int j = 0; j < static_cast<int>(n); ++j)
            enumerated -= p * std::log2(p);
        pixels += n;
    }
    CHECK(std::abs(grouped - enumerated) < 2e-3);
    CHECK(std::abs(grouped - std::log2(pixels)) < 2e-3);
    CHECK(std::abs(grouped - std::log2(static_cast<double>(sphere_pixel_count(ctx)))) < 2e-3);
}

TEST_CASE("Jaynes ring entropy tracks the discrete sum")
{
    for (auto ch : {SpinChannel::kSpinless, SpinChannel::kParallel, SpinChannel::kAntiparallel})
    {
        auto const ctx = make_context(1, 100);
        auto const grid = ring_grid_with_cells(ctx, ch, 10000);
        double const discrete = shannon_ring_discrete(ctx, ch, grid, 2);
        double const jaynes = shannon_ring_jaynes(ctx, ch, grid);
        CAPTURE(to_string(ch));
        CHECK(std::abs(discrete - jaynes) <= 0.05);
    }
}

TEST_CASE("discrete ring entropy matches a plain sum over cell weights")
{
    auto const ctx = make_context(10, 100);
    auto const grid = ring_grid(ctx, SpinChannel::kAntiparallel);
    auto const f2 = term_weights(grid, ctx, AmplitudeTerm::kDirect, 1);
    auto const g2 = term_weights(grid, ctx, AmplitudeTerm::kExchange, 1);
    std::vector<double> both(f2);
    both.insert(both.end(), g2.begin(), g2.end());
    CHECK(shannon_ring_discrete(ctx, SpinChannel::kAntiparallel, grid, 1)
          == doctest::Approx(1 + plain_entropy(both)).epsilon(1e-12));
}

TEST_CASE("halving the cell width adds one bit")
{
    auto const ctx = make_context(1, 100);
    auto const coarse = ring_grid_with_cells(ctx, SpinChannel::kSpinless, 10000);
    auto const fine = ring_grid_with_cells(ctx, SpinChannel::kSpinless, 20000);
    double const shift = shannon_ring_discrete(ctx, SpinChannel::kSpinless, fine, 2)
                         - shannon_ring_discrete(ctx, SpinChannel::kSpinless, coarse, 2);
    CHECK(shift == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("entropy bounds")
{
    for (double e : {1.0, 30.0, 1000.0})
    {
        auto const ctx = make_context(e, 100);
        for (auto ch : {SpinChannel::kSpinless, SpinChannel::kParallel,
                        SpinChannel::kAntiparallel})
        {
            auto const grid = ring_grid(ctx, ch);
            double const s = shannon_ring_discrete(ctx, ch, grid, 2);
            double const terms = ch == SpinChannel::kAntiparallel ? 2 : 1;
            CHECK(s >= pauli_bits(ch));
            CHECK(s <= pauli_bits(ch) + std::log2(terms * grid.n_cells) + 1e-12);
        }
    }
}

TEST_CASE("entropy decreases with energy for every channel")
{
    std::vector<double> energies;
    for (int i = 0; i <= 8; ++i)
        energies.push_back(std::pow(10.0, i * 0.5));  // 1 eV .. 10 keV
    for (auto ch : {SpinChannel::kSpinless, SpinChannel::kParallel,
                    SpinChannel::kAntiparallel})
    {
        auto const rows = sweep_energies(energies, 100, ch, GridKind::kRings, 1.0, 2);
        for (std::size_t i = 1; i < rows.size(); ++i)
        {
            REQUIRE(rows[i].status == "ok");
            CHECK(rows[i].entropy < rows[i - 1].entropy);
        }
    }
}

TEST_CASE("sweeps agree with single-point calls and isolate failures")
{
    std::vector<double> energies{1, 10, 100};
    auto const rows = sweep_energies(energies, 50, SpinChannel::kSpinless, GridKind::kRings,
                                     1.0, 3);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        auto const ctx = make_context(energies[i], 50);
        CHECK(rows[i].energy_ev == energies[i]);
        CHECK(rows[i].entropy == shannon_ring_discrete(ctx, SpinChannel::kSpinless, 1));
        CHECK(rows[i].n_cells == ring_grid(ctx, SpinChannel::kSpinless).n_cells);
    }
    CHECK(rows[0].entropy > rows[1].entropy);
    CHECK(rows[1].entropy > rows[2].entropy);

    std::vector<double> mixed{5, 1e-9, 50};
    auto const bad = sweep_energies(mixed, 100, SpinChannel::kSpinless, GridKind::kRings);
    CHECK(bad[0].status == "ok");
    CHECK(bad[1].status == "domain_error");
    CHECK_FALSE(bad[1].message.empty());
    CHECK(bad[2].status == "ok");
}

TEST_CASE("sphere and equator sweeps")
{
    std::vector<double> energies{1};
    auto const sphere = sweep_energies(energies, 50, SpinChannel::kSpinless,
                                       GridKind::kSpherePixels);
    auto const ctx = make_context(1, 50);
    CHECK(sphere[0].entropy == shannon_sphere_discrete(ctx, SpinChannel::kSpinless));
    CHECK(sphere[0].jaynes == doctest::Approx(shannon_sphere_jaynes(ctx, SpinChannel::kSpinless)));
    CHECK(sphere[0].n_cells == sphere_pixel_count(ctx));
    CHECK(std::abs(sphere[0].entropy - sphere[0].jaynes) < 0.05);

    auto const eq = sweep_energies(energies, 50, SpinChannel::kParallel, GridKind::kEquatorRing);
    auto const n = equator_grid(ctx.delta_theta).n_cells;
    CHECK(eq[0].entropy == doctest::Approx(1 + std::log2(static_cast<double>(n))).epsilon(1e-12));
    CHECK(eq[0].modified == doctest::Approx(eq[0].entropy - 1).epsilon(1e-15));
}
