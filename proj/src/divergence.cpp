#include "orlicz/divergence.hpp"

#include "orlicz/error.hpp"
#include "orlicz/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace orlicz {

const char* to_string(Direction d)
{
    return d == Direction::GE ? "GE" : "LE";
}

DivergenceResult f_divergence(const ScalarGauge& f, const Measure& p, const Measure& q)
{
    const DensityField pair[] = {p, q};
    require_common_space(pair);
    require(q.strictly_positive(), ErrorKind::DomainViolation, "f-divergence needs a strictly positive Q");
    const auto w = q.space()->weights();
    std::vector<double> terms(q.size());
    DivergenceResult res;
    res.integrand_min = std::numeric_limits<double>::infinity();
    res.integrand_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double ratio = p[i] / q[i];
        require(ratio > 0.0 || f.defined_at_zero, ErrorKind::DomainViolation,
                f.name + " is not defined at ratio 0");
        const double v = f(ratio) * q[i];
        if (!std::isfinite(v)) fail(ErrorKind::NumericalFailure, f.name + " overflows in the f-divergence");
        res.integrand_min = std::min(res.integrand_min, v);
        res.integrand_max = std::max(res.integrand_max, v);
        terms[i] = v * w[i];
    }
    res.value = pairwise_sum(terms);
    const double mq = q.mass();
    const double mp = p.mass();
    if (mp > 0.0 || f.defined_at_zero) {
        res.bound = mq * f(mp / mq);
        res.equality_gap = res.value - res.bound;
    }
    return res;
}

DivergenceResult f_divergence(const SurfaceGauge& f, const Measure& p, const Measure& q)
{
    return f_divergence(f.scalar(), p, q);
}

DivergenceResult f_divergence(const UnivariateGauge& f, const Measure& p, const Measure& q)
{
    return f_divergence(f.scalar(), p, q);
}

SNormResult s_norm(const DensityField& p, double s, const SubsetMask& a)
{
    require(s != 0.0 && std::isfinite(s), ErrorKind::InvalidParameter, "s-norm needs a finite nonzero s");
    a.check_against(*p.space());
    const auto w = p.space()->weights();
    std::vector<double> terms(a.size());
    std::size_t k = 0;
    for (std::size_t i : a.indices()) {
        const double v = p[i];
        if (s < 0.0) require(v > 0.0, ErrorKind::DomainViolation, "negative s needs a positive field on A");
        terms[k++] = (v == 0.0 ? 0.0 : std::pow(v, s)) * w[i];
    }
    SNormResult res;
    res.power_integral = pairwise_sum(terms);
    res.norm = std::pow(res.power_integral, 1.0 / s);
    return res;
}

double InequalityReport::scale() const
{
    return std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

void finalize(InequalityReport& rep)
{
    rep.margin = rep.lhs - rep.rhs;
    const double sc = rep.scale();
    rep.holds = rep.direction == Direction::GE ? rep.margin >= -kDirectionSlack * sc
                                               : rep.margin <= kDirectionSlack * sc;
    rep.equality = std::abs(rep.margin) <= kEqualityTolerance * sc;
}

double ratio_relative_variance(const DensityField& p, const DensityField& q, const SubsetMask& a)
{
    a.check_against(*p.space());
    const auto w = p.space()->weights();
    std::vector<double> r, rw;
    for (std::size_t i : a.indices()) {
        if (p[i] > 0.0) {
            r.push_back(q[i] / p[i] * w[i]);
            rw.push_back(w[i]);
        } else if (q[i] > 0.0) {
            return std::numeric_limits<double>::infinity();
        }
    }
    if (r.empty()) return 0.0;
    const double wsum = pairwise_sum(rw);
    const double mean = pairwise_sum(r) / wsum;
    if (mean == 0.0) return 0.0;
    std::vector<double> dev;
    dev.reserve(r.size());
    for (std::size_t i : a.indices()) {
        if (!(p[i] > 0.0)) continue;
        const double d = q[i] / p[i] - mean;
        dev.push_back(d * d * w[i]);
    }
    return pairwise_sum(dev) / wsum / (mean * mean);
}

double ratio_relative_variance(const DensityField& p, const DensityField& q)
{
    return ratio_relative_variance(p, q, SubsetMask::all(p.size()));
}

InequalityReport jensen_bound_check(const ScalarGauge& phi, const Measure& p1, const Measure& p2)
{
    require(p1.strictly_positive(), ErrorKind::DomainViolation, "Jensen bound needs a strictly positive P1");
    InequalityReport rep;
    switch (phi.shape) {
    case Shape::StrictlyConcave: rep.direction = Direction::LE; break;
    case Shape::StrictlyConvex:
    case Shape::Affine: rep.direction = Direction::GE; break;
    default: fail(ErrorKind::InvalidParameter, phi.name + ": Jensen bound needs a declared convex or concave gauge");
    }
    const DivergenceResult d = f_divergence(phi, p2, p1);
    rep.lhs = d.value;
    rep.rhs = d.bound;
    rep.equality_expected =
        phi.shape == Shape::Affine || ratio_relative_variance(p1, p2) < kProportionalThreshold;
    finalize(rep);
    return rep;
}

InequalityReport jensen_bound_check(const UnivariateGauge& phi, const Measure& p1, const Measure& p2)
{
    return jensen_bound_check(phi.scalar(), p1, p2);
}

}  // namespace orlicz
