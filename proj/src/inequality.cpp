#include "orlicz/inequality.hpp"

#include "orlicz/error.hpp"
#include "orlicz/orlicz_add.hpp"

#include <cmath>
#include <vector>

namespace orlicz {

Direction direction_for(Shape shape)
{
    switch (shape) {
    case Shape::StrictlyConcave:
    case Shape::Affine: return Direction::GE;
    case Shape::StrictlyConvex: return Direction::LE;
    default: fail(ErrorKind::InvalidParameter, std::string("inequality needs a convex or concave shape, got ") + to_string(shape));
    }
}

namespace {

bool all_proportional(std::span<const DensityField> fields, const SubsetMask& a)
{
    for (std::size_t j = 1; j < fields.size(); ++j)
        if (!(ratio_relative_variance(fields[0], fields[j], a) < kProportionalThreshold)) return false;
    // proportionality constants must be positive
    for (const auto& f : fields)
        if (!(integrate(f, a) > 0.0)) return false;
    return true;
}

}  // namespace

InequalityReport check_dual_obmi(const MonotoneCompositor& phi, std::span<const Measure> measures, const SubsetMask& a)
{
    InequalityReport rep;
    rep.direction = direction_for(phi.shape());
    require_common_space(measures);
    a.check_against(*measures[0].space());
    const Measure s = orlicz_add_measure(phi, measures);
    const double sa = integrate(s, a);
    if (!(sa > 0.0)) fail(ErrorKind::DegenerateInput, "Orlicz sum has zero mass on A");
    std::vector<double> ratios;
    for (const auto& p : measures) ratios.push_back(integrate(p, a) / sa);
    rep.lhs = phi.eval_checked(ratios);
    rep.rhs = 1.0;
    rep.equality_expected = phi.shape() == Shape::Affine || all_proportional(measures, a);
    finalize(rep);
    return rep;
}

std::vector<double> default_corollary_schedule()
{
    return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};
}

CorollaryReport check_obmi_corollary(const MonotoneCompositor& phi, std::span<const Measure> measures,
                                     const SubsetMask& a, const std::vector<double>& eps_schedule)
{
    require(phi.cls() == CompositorClass::PhiM, ErrorKind::InvalidParameter, "corollary needs an increasing compositor");
    require(phi.shape() == Shape::StrictlyConcave || phi.shape() == Shape::Affine, ErrorKind::InvalidParameter,
            "corollary needs a concave compositor");
    require(phi.normalized_at_basis(), ErrorKind::InvalidParameter, "corollary needs phi(e_j) = 1");
    require(!eps_schedule.empty(), ErrorKind::InvalidParameter, "eps schedule must be nonempty");
    require_common_space(measures);
    bool some_positive = false;
    for (const auto& p : measures) some_positive = some_positive || integrate(p, a) > 0.0;
    require(some_positive, ErrorKind::DegenerateInput, "corollary needs P_j(A) > 0 for some j");

    CorollaryReport rep;
    for (double eps : eps_schedule) {
        require(eps > 0.0, ErrorKind::InvalidParameter, "eps values must be positive");
        std::vector<Measure> reg;
        for (const auto& p : measures) reg.push_back(p.shifted(eps));
        const InequalityReport r = check_dual_obmi(phi, reg, a);
        rep.epsilons.push_back(eps);
        rep.values.push_back(r.lhs);
        rep.all_hold = rep.all_hold && r.holds;
        rep.final = r;
    }
    int trend = 0;
    for (std::size_t k = 1; k < rep.values.size(); ++k) {
        const double d = rep.values[k] - rep.values[k - 1];
        const double slack = kDirectionSlack * std::abs(rep.values[k]);
        const int sgn = d > slack ? 1 : (d < -slack ? -1 : 0);
        if (sgn == 0) continue;
        if (trend == 0) trend = sgn;
        else if (sgn != trend) rep.monotone = false;
    }

    try {
        rep.final = check_dual_obmi(phi, measures, a);
        rep.direct_defined = true;
        rep.direct_value = rep.final.lhs;
        rep.limit_gap = std::abs(rep.values.back() - rep.direct_value);
        // measures vanishing on A drop out; equality then follows from the remaining ones
        std::vector<Measure> active;
        for (const auto& p : measures)
            if (integrate(p, a) > 0.0) active.push_back(p);
        if (active.size() < measures.size())
            rep.final.equality_expected = rep.final.equality_expected || all_proportional(active, a);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateInput) throw;
    }
    rep.passed = rep.all_hold && rep.final.holds;
    return rep;
}

InequalityReport check_ls_theorem(const MonotoneCompositor& phi, double s, std::span<const DensityField> fields,
                                  const SubsetMask& a)
{
    const MonotoneCompositor phis = transform_phis(phi, s);
    Shape shape = phis.shape();
    if (shape == Shape::Unknown && s == 1.0) shape = phi.shape();
    InequalityReport rep;
    rep.direction = direction_for(shape);
    require_common_space(fields);
    for (const auto& f : fields)
        for (std::size_t i : a.indices())
            require(f[i] > 0.0, ErrorKind::DomainViolation, "s-norm theorem needs strictly positive fields on A");
    const DensityField sum = orlicz_add_field(phi, fields);
    const double ns = s_norm(sum, s, a).norm;
    require(ns > 0.0 && std::isfinite(ns), ErrorKind::DegenerateInput, "Orlicz sum has a degenerate s-norm");
    std::vector<double> ratios;
    for (const auto& f : fields) {
        const double nj = s_norm(f, s, a).norm;
        require(nj > 0.0 && std::isfinite(nj), ErrorKind::DegenerateInput, "field has a degenerate s-norm");
        ratios.push_back(nj / ns);
    }
    rep.lhs = phi.eval_checked(ratios);
    rep.rhs = 1.0;
    rep.equality_expected = shape == Shape::Affine || all_proportional(fields, a);
    finalize(rep);
    return rep;
}

EquivalenceReport check_crdm_equivalence(const UnivariateGauge& phi1, const UnivariateGauge& phi2, double alpha1,
                                         double alpha2, const Measure& p1, const Measure& p2)
{
    require(p1.strictly_positive(), ErrorKind::DomainViolation, "equivalence check needs a strictly positive P1");
    const MonotoneCompositor phi = make_linear_combo(phi1, phi2, alpha1, alpha2);
    const Measure pair[] = {p1, p2};
    EquivalenceReport rep;
    rep.obmi = check_dual_obmi(phi, pair, SubsetMask::all(p1.size()));
    rep.jensen = jensen_bound_check(phi2, p1, p2);
    rep.agree = rep.obmi.holds == rep.jensen.holds && rep.obmi.equality == rep.jensen.equality;
    return rep;
}

}  // namespace orlicz
