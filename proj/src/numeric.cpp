#include "orlicz/numeric.hpp"

#include "orlicz/error.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>

namespace orlicz {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::DomainViolation:  return "domain-violation";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::NoSolution:       return "no-solution";
    case ErrorKind::DegenerateInput:  return "degenerate-input";
    case ErrorKind::Io:               return "io-error";
    }
    return "unknown";
}

namespace {

double pairwise_sum_impl(const double* v, std::size_t n)
{
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values)
{
    return pairwise_sum_impl(values.data(), values.size());
}

RootResult bisect(const std::function<double(double)>& g, double lo, double hi, int max_iter)
{
    double glo = g(lo);
    double ghi = g(hi);
    RootResult r;
    if (glo == 0.0) return {lo, 0.0, 0};
    if (ghi == 0.0) return {hi, 0.0, 0};
    if ((glo > 0.0) == (ghi > 0.0))
        fail(ErrorKind::NumericalFailure, "bisection bracket does not straddle a root",
             std::min(std::abs(glo), std::abs(ghi)));

    int it = 0;
    for (; it < max_iter; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
        const double gm = g(mid);
        if (gm == 0.0) return {mid, 0.0, it + 1};
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    r.iterations = it;
    if (std::abs(glo) <= std::abs(ghi)) {
        r.x = lo;
        r.residual = glo;
    } else {
        r.x = hi;
        r.residual = ghi;
    }
    return r;
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> linspace(double a, double b, std::size_t n)
{
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = a;
        return out;
    }
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = a + h * static_cast<double>(i);
    // Symmetric grids must be exactly symmetric; mirror the upper half.
    if (a == -b) {
        for (std::size_t i = 0; i < n / 2; ++i) out[n - 1 - i] = -out[i];
        if (n % 2 == 1) out[n / 2] = 0.0;
    }
    return out;
}

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / static_cast<double>(k);
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

}  // namespace orlicz
