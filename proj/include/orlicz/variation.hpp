#pragma once

#include "orlicz/measure.hpp"
#include "orlicz/phi.hpp"

#include <vector>

namespace orlicz {

/// p1 +_{phi,eps} p2: the pointwise solution of
/// phi1(p1 / lambda) + eps * phi2(p2 / lambda) = 1.
DensityField linear_orlicz_add(const UnivariateGauge& phi1, const UnivariateGauge& phi2, double eps,
                               const DensityField& p1, const DensityField& p2);

/// Relative increments w with p1 +_{phi,eps} p2 = p1 (1 + w), solved
/// directly in w so that small eps keeps full relative precision.
/// Needs phi1(1) = 1 and p1 > 0 at the requested points.
std::vector<double> linear_orlicz_increment(const UnivariateGauge& phi1, const UnivariateGauge& phi2, double eps,
                                            const DensityField& p1, const DensityField& p2, const SubsetMask& a);

/// int_A phi2(p2 / p1) p1^s dmu.
double first_variation_exact(const UnivariateGauge& phi2, const DensityField& p1, const DensityField& p2, double s,
                             const SubsetMask& a);

struct RatioBounds {
    double sup = 0.0;  ///< sup_A p2 / p1
    double inf = 0.0;  ///< inf_A p2 / p1
    bool unbounded = false;  ///< sup above 1e12 (or inf below 1e-12 for Psi gauges)
};

RatioBounds ratio_bounds(const DensityField& p1, const DensityField& p2, const SubsetMask& a, CompositorClass cls);

struct VariationEstimate {
    std::vector<double> epsilons;   ///< strictly decreasing
    std::vector<double> fd_values;  ///< quotients scaled by the derivative of phi1 at 1
    double extrapolated = 0.0;
    double exact_rhs = 0.0;
    double relative_error = 0.0;

    CompositorClass branch = CompositorClass::PhiM;
    double derivative = 0.0;        ///< (phi1)'_l(1) or (phi1)'_r(1)
    /// The scaled limit and the exact side have opposite signs.
    bool sign_mismatch = false;
    double observed_order = 0.0;    ///< log-log slope of |fd - exact| over the schedule
    bool sandwich_ok = true;        ///< p1 <= p1 +_{phi,eps} p2 <= p1 +_{phi,1} p2 (reversed for Psi)
    RatioBounds ratios;
};

std::vector<double> default_eps_schedule();

/// One-sided difference quotients of the s-norm power integral over A,
/// Richardson-extrapolated from the last two nodes and compared with
/// first_variation_exact.
VariationEstimate first_variation_fd(const UnivariateGauge& phi1, const UnivariateGauge& phi2, const DensityField& p1,
                                     const DensityField& p2, double s, const SubsetMask& a,
                                     std::vector<double> eps_schedule = default_eps_schedule());

/// The s = 1, A = Omega case, compared against D_phi2(P2, P1) computed by
/// the divergence module.
VariationEstimate f_div_as_variation(const UnivariateGauge& phi1, const UnivariateGauge& phi2, const Measure& p1,
                                     const Measure& p2, std::vector<double> eps_schedule = default_eps_schedule());

}  // namespace orlicz
