#pragma once
// Independent reference computations used as test oracles. Nothing here
// calls into the library's solvers or quadrature.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// (sum v_j^p)^(1/p): the closed-form Orlicz sum of the p power sum.
inline double power_sum_root(std::span<const double> v, double p)
{
    long double s = 0.0L;
    for (double x : v) s += std::pow(static_cast<long double>(x), static_cast<long double>(p));
    return static_cast<double>(std::pow(s, 1.0L / static_cast<long double>(p)));
}

/// Root of an increasing g on [lo, hi] by regula falsi with the Illinois
/// modification, in long double.
inline double illinois(const std::function<long double(long double)>& g, long double lo, long double hi)
{
    long double glo = g(lo), ghi = g(hi);
    int side = 0;
    for (int it = 0; it < 500; ++it) {
        const long double x = (lo * ghi - hi * glo) / (ghi - glo);
        const long double gx = g(x);
        if (gx == 0.0L || hi - lo <= 1e-18L * std::abs(x)) return static_cast<double>(x);
        if ((gx > 0) == (ghi > 0)) {
            hi = x;
            ghi = gx;
            if (side == -1) glo /= 2;
            side = -1;
        } else {
            lo = x;
            glo = gx;
            if (side == 1) ghi /= 2;
            side = 1;
        }
    }
    return static_cast<double>((lo + hi) / 2);
}

/// Orlicz sum lambda with phi(v / lambda) = 1, for phi decreasing in
/// lambda direction determined by `increasing` (class Phi: phi(v/lambda)
/// decreases in lambda).
inline double orlicz_sum(const std::function<long double(std::span<const long double>)>& phi,
                         std::span<const double> v, bool increasing)
{
    std::vector<long double> buf(v.size());
    auto g = [&](long double log_lambda) {
        const long double lam = std::exp(log_lambda);
        for (std::size_t j = 0; j < v.size(); ++j) buf[j] = v[j] / lam;
        const long double val = phi(buf) - 1.0L;
        return increasing ? -val : val;
    };
    long double lo = -50.0L, hi = 50.0L;
    return static_cast<double>(std::exp(static_cast<long double>(illinois(g, lo, hi))));
}

/// Composite midpoint rule.
inline double midpoint(const std::function<double(double)>& f, double a, double b, std::size_t n)
{
    const long double h = (static_cast<long double>(b) - a) / n;
    long double s = 0.0L;
    for (std::size_t i = 0; i < n; ++i) s += f(static_cast<double>(a + (i + 0.5L) * h));
    return static_cast<double>(s * h);
}

/// Composite Simpson rule (n even).
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n)
{
    const long double h = (static_cast<long double>(b) - a) / n;
    long double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(static_cast<double>(a + i * h));
    return static_cast<double>(s * h / 3.0L);
}

/// Kahan-compensated dot product of values and weights.
inline double weighted_sum(std::span<const double> v, std::span<const double> w)
{
    long double s = 0.0L;
    for (std::size_t i = 0; i < v.size(); ++i) s += static_cast<long double>(v[i]) * w[i];
    return static_cast<double>(s);
}

/// sup_x (x y - psi(x)) over the given nodes.
inline double legendre_1d(std::span<const double> x, std::span<const double> psi, double y)
{
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < x.size(); ++k) best = std::max(best, x[k] * y - psi[k]);
    return best;
}

}  // namespace oracle
