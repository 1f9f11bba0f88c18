#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace escatter::quad {

//---------------------------------------------------------------------------//
/*!
 * Gauss-Legendre rule on [-1, 1].
 *
 * Orders are powers of two between 1 and kMaxOrder; rules are computed once
 * on first use and shared between threads.
 */
struct GaussLegendreRule
{
    std::span<double const> nodes;
    std::span<double const> weights;
};

inline constexpr int kMaxOrder = 4096;

GaussLegendreRule gauss_legendre(int order);

template<class F>
double integrate_fixed(F&& f, double a, double b, int order)
{
    auto const rule = gauss_legendre(order);
    double const half = (b - a) / 2;
    double const mid = (a + b) / 2;
    double sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

struct QuadratureResult
{
    double value = 0;
    int order = 0;
    bool converged = false;
};

// Gauss-Legendre starting at `min_order`, doubling until two successive
// estimates agree to `rel_tol` or `max_order` is reached.
template<class F>
QuadratureResult integrate_doubling(F&& f, double a, double b, double rel_tol,
                                    int min_order = 8, int max_order = 256)
{
    QuadratureResult result;
    double prev = integrate_fixed(f, a, b, min_order);
    for (int order = 2 * min_order; order <= max_order; order *= 2)
    {
        double const next = integrate_fixed(f, a, b, order);
        result.value = next;
        result.order = order;
        if (std::abs(next - prev) <= rel_tol * std::abs(next))
        {
            result.converged = true;
            return result;
        }
        prev = next;
    }
    result.value = prev;
    return result;
}

// Adaptive bisection with a 15-point Gauss-Kronrod error estimate. Bisection
// stops at a relative tolerance `rel_tol` (of the L1 norm), when intervals
// shrink below `min_width`, or after kMaxAdaptiveDepth levels.
inline constexpr unsigned kMaxAdaptiveDepth = 16;

template<class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol,
                          double min_width = 1e-12)
{
    if (b <= a)
        return 0;
    unsigned depth = 1;
    for (double w = b - a; w > min_width && depth < kMaxAdaptiveDepth; w /= 2)
        ++depth;
    double error = 0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, depth, rel_tol, &error);
}

}  // namespace escatter::quad
