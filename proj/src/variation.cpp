#include "orlicz/variation.hpp"

#include "orlicz/divergence.hpp"
#include "orlicz/error.hpp"
#include "orlicz/kernels.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/orlicz_add.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orlicz {

namespace {

constexpr int kMaxGrowth = 2000;

void check_pair(const UnivariateGauge& phi1, const UnivariateGauge& phi2, const DensityField& p1,
                const DensityField& p2, const SubsetMask& a)
{
    require(phi1.cls() == phi2.cls(), ErrorKind::InvalidParameter,
            "linear Orlicz addition needs both gauges in Phi_1 or both in Psi_1");
    const DensityField pair[] = {p1, p2};
    require_common_space(pair);
    a.check_against(*p1.space());
    for (std::size_t i : a.indices()) {
        require(p1[i] > 0.0, ErrorKind::DomainViolation, "first variation needs p1 > 0 on A");
        if (phi1.cls() == CompositorClass::PsiM)
            require(p2[i] > 0.0, ErrorKind::DomainViolation, "decreasing gauges need p2 > 0 on A");
    }
}

// Solves phi1(1 / (1 + w)) - 1 + eps * phi2(r / (1 + w)) = 0 for w.
double solve_increment(const UnivariateGauge& phi1, const UnivariateGauge& phi2, double eps, double r)
{
    auto h = [&](double w) { return phi1.deviation_from_one(-w / (1.0 + w)) + eps * phi2(r / (1.0 + w)); };
    const double h0 = h(0.0);
    if (h0 <= 0.0) return 0.0;
    double lo = 0.0, hi = 0.0;
    if (phi1.cls() == CompositorClass::PhiM) {
        hi = eps * std::max(1.0, r);
        for (int k = 0; h(hi) > 0.0; ++k) {
            if (k == kMaxGrowth || !std::isfinite(hi))
                fail(ErrorKind::NumericalFailure, "no upper bracket for the linear Orlicz increment");
            hi *= 2.0;
        }
    } else {
        double v = std::min(eps, 0.5);
        for (int k = 0; h(-v) >= 0.0; ++k) {
            if (k == kMaxGrowth || v >= 1.0)
                fail(ErrorKind::NumericalFailure, "no lower bracket for the linear Orlicz increment");
            v = v < 0.5 ? 2.0 * v : 0.5 * (1.0 + v);
        }
        lo = -v;
    }
    const RootResult res = bisect(h, lo, hi, kMaxBisection + 2000);
    if (!(std::abs(res.residual) <= kRootTolerance))
        fail(ErrorKind::NumericalFailure, "linear Orlicz increment did not converge", res.residual);
    return res.x;
}

}  // namespace

DensityField linear_orlicz_add(const UnivariateGauge& phi1, const UnivariateGauge& phi2, double eps,
                               const DensityField& p1, const DensityField& p2)
{
    require(eps > 0.0 && std::isfinite(eps), ErrorKind::InvalidParameter, "linear Orlicz addition needs eps > 0");
    const DensityField fields[] = {p1, p2};
    return orlicz_add_field(make_linear_combo(phi1, phi2, 1.0, eps), fields);
}

std::vector<double> linear_orlicz_increment(const UnivariateGauge& phi1, const UnivariateGauge& phi2, double eps,
                                            const DensityField& p1, const DensityField& p2, const SubsetMask& a)
{
    require(eps > 0.0 && std::isfinite(eps), ErrorKind::InvalidParameter, "linear Orlicz addition needs eps > 0");
    require(phi1.unit_at_one(), ErrorKind::InvalidParameter, phi1.name() + " must satisfy phi(1) = 1");
    check_pair(phi1, phi2, p1, p2, a);
    const auto idx = a.indices();
    std::vector<double> w(idx.size());
    kernels::map_parallel(
        [&](std::size_t k) {
            const std::size_t i = idx[k];
            return solve_increment(phi1, phi2, eps, p2[i] / p1[i]);
        },
        w);
    return w;
}

double first_variation_exact(const UnivariateGauge& phi2, const DensityField& p1, const DensityField& p2, double s,
                             const SubsetMask& a)
{
    require(s != 0.0 && std::isfinite(s), ErrorKind::InvalidParameter, "first variation needs s != 0");
    const DensityField pair[] = {p1, p2};
    require_common_space(pair);
    a.check_against(*p1.space());
    const auto wts = p1.space()->weights();
    std::vector<double> terms;
    terms.reserve(a.size());
    for (std::size_t i : a.indices()) {
        require(p1[i] > 0.0, ErrorKind::DomainViolation, "first variation needs p1 > 0 on A");
        terms.push_back(phi2(p2[i] / p1[i]) * std::pow(p1[i], s) * wts[i]);
    }
    return pairwise_sum(terms);
}

RatioBounds ratio_bounds(const DensityField& p1, const DensityField& p2, const SubsetMask& a, CompositorClass cls)
{
    RatioBounds b;
    b.sup = 0.0;
    b.inf = std::numeric_limits<double>::infinity();
    for (std::size_t i : a.indices()) {
        const double r = p2[i] / p1[i];
        b.sup = std::max(b.sup, r);
        b.inf = std::min(b.inf, r);
    }
    b.unbounded = b.sup > 1e12 || (cls == CompositorClass::PsiM && b.inf < 1e-12);
    return b;
}

std::vector<double> default_eps_schedule()
{
    return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
}

VariationEstimate first_variation_fd(const UnivariateGauge& phi1, const UnivariateGauge& phi2, const DensityField& p1,
                                     const DensityField& p2, double s, const SubsetMask& a,
                                     std::vector<double> eps_schedule)
{
    require(!eps_schedule.empty(), ErrorKind::InvalidParameter, "eps schedule must be nonempty");
    for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
        require(eps_schedule[k] > 0.0, ErrorKind::InvalidParameter, "eps values must be positive");
        if (k > 0)
            require(eps_schedule[k] < eps_schedule[k - 1], ErrorKind::InvalidParameter,
                    "eps schedule must be strictly decreasing");
    }
    require(s != 0.0 && std::isfinite(s), ErrorKind::InvalidParameter, "first variation needs s != 0");
    check_pair(phi1, phi2, p1, p2, a);

    VariationEstimate est;
    est.branch = phi1.cls();
    est.derivative = est.branch == CompositorClass::PhiM ? phi1.left_derivative_at_one()
                                                         : phi1.right_derivative_at_one();
    require(std::isfinite(est.derivative) && est.derivative != 0.0, ErrorKind::InvalidParameter,
            phi1.name() + ": one-sided derivative at 1 is not usable");
    if (est.branch == CompositorClass::PhiM)
        require(est.derivative > 0.0, ErrorKind::InvalidParameter, phi1.name() + ": left derivative at 1 must be positive");
    est.exact_rhs = first_variation_exact(phi2, p1, p2, s, a);
    est.ratios = ratio_bounds(p1, p2, a, est.branch);

    const auto idx = a.indices();
    const auto wts = p1.space()->weights();
    std::vector<double> base(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) base[k] = std::pow(p1[idx[k]], s) * wts[idx[k]];

    const std::vector<double> w_one = linear_orlicz_increment(phi1, phi2, 1.0, p1, p2, a);
    const bool phi_branch = est.branch == CompositorClass::PhiM;
    std::vector<double> terms(idx.size());
    for (double eps : eps_schedule) {
        const std::vector<double> w = linear_orlicz_increment(phi1, phi2, eps, p1, p2, a);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            terms[k] = base[k] * std::expm1(s * std::log1p(w[k]));
            if (eps <= 1.0) {
                const bool inside = phi_branch ? (w[k] >= 0.0 && w[k] <= w_one[k]) : (w[k] <= 0.0 && w[k] >= w_one[k]);
                if (!inside) est.sandwich_ok = false;
            }
        }
        est.epsilons.push_back(eps);
        est.fd_values.push_back(est.derivative * pairwise_sum(terms) / (s * eps));
    }

    const std::size_t n = est.fd_values.size();
    if (n == 1) {
        est.extrapolated = est.fd_values[0];
    } else {
        const double e1 = est.epsilons[n - 2], e2 = est.epsilons[n - 1];
        const double q1 = est.fd_values[n - 2], q2 = est.fd_values[n - 1];
        est.extrapolated = (q2 * e1 - q1 * e2) / (e1 - e2);
    }
    est.relative_error = std::abs(est.extrapolated - est.exact_rhs) / std::max(std::abs(est.exact_rhs), 1e-300);
    est.sign_mismatch = est.extrapolated * est.exact_rhs < 0.0;

    // least-squares slope of log|error| against log eps, above the roundoff floor
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double err = std::abs(est.fd_values[k] - est.exact_rhs);
        if (err <= 1e-13 * std::max(std::abs(est.exact_rhs), 1e-300)) continue;
        const double x = std::log(est.epsilons[k]), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) est.observed_order = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return est;
}

VariationEstimate f_div_as_variation(const UnivariateGauge& phi1, const UnivariateGauge& phi2, const Measure& p1,
                                     const Measure& p2, std::vector<double> eps_schedule)
{
    VariationEstimate est =
        first_variation_fd(phi1, phi2, p1, p2, 1.0, SubsetMask::all(p1.size()), std::move(eps_schedule));
    est.exact_rhs = f_divergence(phi2, p2, p1).value;
    est.relative_error = std::abs(est.extrapolated - est.exact_rhs) / std::max(std::abs(est.exact_rhs), 1e-300);
    est.sign_mismatch = est.extrapolated * est.exact_rhs < 0.0;
    return est;
}

}  // namespace orlicz
