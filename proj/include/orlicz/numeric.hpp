#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace orlicz {

/// Pairwise (cascade) summation in a fixed order, so reductions are
/// reproducible regardless of how the summands were produced.
double pairwise_sum(std::span<const double> values);

/// Relative distance |a - b| / max(|a|, |b|, floor).
inline double rel_diff(double a, double b, double floor = 1e-300)
{
    const double scale = std::max({std::abs(a), std::abs(b), floor});
    return std::abs(a - b) / scale;
}

/// Result of a monotone scalar root solve.
struct RootResult {
    double x = 0.0;
    double residual = 0.0;  ///< g(x) at the returned point
    int iterations = 0;
};

/// Bisection on a bracket [lo, hi] with g(lo) and g(hi) of opposite sign
/// (or zero). Iterates until the bracket collapses to adjacent doubles or
/// max_iter is reached, then returns the endpoint with the smaller |g|.
RootResult bisect(const std::function<double(double)>& g, double lo, double hi, int max_iter = 200);

/// Prints a double with 17 significant digits ("%.17g").
std::string format_double(double v);

/// Uniformly spaced values from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace orlicz
