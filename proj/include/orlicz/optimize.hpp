#pragma once

#include <functional>
#include <vector>

namespace orlicz::optimize {

struct ScalarMin {
    double x = 0.0;
    double fx = 0.0;
    int evaluations = 0;
};

/// Golden-section search for a minimum of f on [a, b]. Stops when the
/// bracket is shorter than tol or after max_iter steps.
ScalarMin golden_section(const std::function<double(double)>& f, double a, double b, double tol = 1e-10,
                         int max_iter = 200);

/// Evaluates f on n equally spaced points of [a, b], then refines the best
/// cell with golden-section search.
ScalarMin scan_then_golden(const std::function<double(double)>& f, double a, double b, int n, double tol = 1e-10);

struct SimplexMin {
    std::vector<double> x;
    double fx = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    double initial_step = 0.25;
    double ftol = 1e-14;        ///< relative spread of simplex values
    double xtol = 1e-10;        ///< simplex diameter
    int max_evaluations = 4000;
    int restarts = 2;           ///< fresh simplices around the best point
};

/// Nelder-Mead with standard coefficients (1, 2, 0.5, 0.5). Non-finite
/// values are treated as +inf. The returned point is never worse than x0.
SimplexMin nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                       const NelderMeadOptions& opts = {});

}  // namespace orlicz::optimize
