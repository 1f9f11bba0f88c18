#include "escatter/quadrature.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <vector>

#include "escatter/constants.hpp"
#include "escatter/error.hpp"

namespace escatter::quad {
namespace {

constexpr int kNumRules = std::bit_width(static_cast<unsigned>(kMaxOrder));

struct StoredRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Newton iteration on P_n from the Tricomi initial guesses.
StoredRule compute_rule(int n)
{
    StoredRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(constants::kPi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1)
                p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            double const dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // Recompute the derivative at the converged node
        double p0 = 1;
        double p1 = x;
        for (int k = 2; k <= n; ++k)
        {
            double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (n == 1) ? 1 : n * (x * p1 - p0) / (x * x - 1);
        double const w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0;
    return rule;
}

}  // namespace

GaussLegendreRule gauss_legendre(int order)
{
    if (order < 1 || order > kMaxOrder || !std::has_single_bit(static_cast<unsigned>(order)))
        throw DomainError("Gauss-Legendre order must be a power of two <= 4096");

    static std::array<StoredRule, kNumRules> rules;
    static std::array<std::once_flag, kNumRules> flags;
    int const slot = std::bit_width(static_cast<unsigned>(order)) - 1;
    std::call_once(flags[slot], [&] { rules[slot] = compute_rule(order); });
    return {rules[slot].nodes, rules[slot].weights};
}

}  // namespace escatter::quad
