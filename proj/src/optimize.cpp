#include "orlicz/optimize.hpp"

#include "orlicz/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace orlicz::optimize {

namespace {

double sanitize(double v)
{
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

ScalarMin golden_section(const std::function<double(double)>& f, double a, double b, double tol, int max_iter)
{
    require(a < b, ErrorKind::InvalidParameter, "golden section needs a < b");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    ScalarMin res;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = sanitize(f(c)), fd = sanitize(f(d));
    res.evaluations = 2;
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = sanitize(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = sanitize(f(d));
        }
        ++res.evaluations;
    }
    if (fc <= fd) {
        res.x = c;
        res.fx = fc;
    } else {
        res.x = d;
        res.fx = fd;
    }
    return res;
}

ScalarMin scan_then_golden(const std::function<double(double)>& f, double a, double b, int n, double tol)
{
    require(n >= 3 && a < b, ErrorKind::InvalidParameter, "scan needs n >= 3 and a < b");
    const double h = (b - a) / (n - 1);
    int best = 0;
    double fbest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        const double v = sanitize(f(a + h * k));
        if (v < fbest) {
            fbest = v;
            best = k;
        }
    }
    const double lo = a + h * std::max(best - 1, 0);
    const double hi = a + h * std::min(best + 1, n - 1);
    ScalarMin res = golden_section(f, lo, hi, tol);
    res.evaluations += n;
    if (!(res.fx <= fbest)) {
        res.x = a + h * best;
        res.fx = fbest;
    }
    return res;
}

SimplexMin nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                       const NelderMeadOptions& opts)
{
    const std::size_t n = x0.size();
    require(n >= 1, ErrorKind::InvalidParameter, "Nelder-Mead needs at least one parameter");
    SimplexMin best;
    best.x = x0;
    best.fx = sanitize(f(x0));
    best.evaluations = 1;

    auto eval = [&](const std::vector<double>& x) {
        ++best.evaluations;
        return sanitize(f(x));
    };

    for (int round = 0; round <= opts.restarts; ++round) {
        std::vector<std::vector<double>> simplex(n + 1, best.x);
        std::vector<double> fv(n + 1, best.fx);
        for (std::size_t i = 0; i < n; ++i) {
            simplex[i + 1][i] += opts.initial_step;
            fv[i + 1] = eval(simplex[i + 1]);
        }
        std::vector<std::size_t> order(n + 1);
        bool converged = false;
        while (best.evaluations < opts.max_evaluations) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
            const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];

            double diam = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t d = 0; d < n; ++d) diam = std::max(diam, std::abs(simplex[i][d] - simplex[lo][d]));
            const double spread = std::abs(fv[hi] - fv[lo]);
            if (std::isfinite(fv[hi]) &&
                spread <= opts.ftol * std::max(std::abs(fv[lo]), 1e-300) && diam <= opts.xtol * 1e4) {
                converged = true;
                break;
            }
            if (diam <= opts.xtol) {
                converged = true;
                break;
            }

            std::vector<double> centroid(n, 0.0);
            for (std::size_t i = 0; i <= n; ++i)
                if (i != hi)
                    for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / static_cast<double>(n);
            auto along = [&](double t) {
                std::vector<double> p(n);
                for (std::size_t d = 0; d < n; ++d) p[d] = centroid[d] + t * (simplex[hi][d] - centroid[d]);
                return p;
            };

            std::vector<double> xr = along(-1.0);
            const double fr = eval(xr);
            if (fr < fv[lo]) {
                std::vector<double> xe = along(-2.0);
                const double fe = eval(xe);
                if (fe < fr) {
                    simplex[hi] = std::move(xe);
                    fv[hi] = fe;
                } else {
                    simplex[hi] = std::move(xr);
                    fv[hi] = fr;
                }
            } else if (fr < fv[second]) {
                simplex[hi] = std::move(xr);
                fv[hi] = fr;
            } else {
                const bool outside = fr < fv[hi];
                std::vector<double> xc = along(outside ? -0.5 : 0.5);
                const double fc = eval(xc);
                if (fc < (outside ? fr : fv[hi])) {
                    simplex[hi] = std::move(xc);
                    fv[hi] = fc;
                } else {
                    for (std::size_t i = 0; i <= n; ++i) {
                        if (i == lo) continue;
                        for (std::size_t d = 0; d < n; ++d)
                            simplex[i][d] = simplex[lo][d] + 0.5 * (simplex[i][d] - simplex[lo][d]);
                        fv[i] = eval(simplex[i]);
                    }
                }
            }
        }
        const std::size_t lo =
            static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
        const bool improved = fv[lo] < best.fx;
        if (improved) {
            best.x = simplex[lo];
            best.fx = fv[lo];
        }
        best.converged = converged;
        if (!improved && round > 0) break;
    }
    return best;
}

}  // namespace orlicz::optimize
