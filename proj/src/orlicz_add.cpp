#include "orlicz/orlicz_add.hpp"

#include "orlicz/error.hpp"
#include "orlicz/kernels.hpp"
#include "orlicz/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orlicz {

OrliczSolver::OrliczSolver(MonotoneCompositor phi) : phi_(std::move(phi)), tau0_(orlicz::tau0(phi_)) {}

double OrliczSolver::solve(std::span<const double> vals) const
{
    std::vector<double> scratch(arity());
    return solve(vals, scratch);
}

double OrliczSolver::solve(std::span<const double> vals, std::span<double> scratch) const
{
    const std::size_t m = arity();
    require(vals.size() == m && scratch.size() >= m, ErrorKind::InvalidParameter,
            phi_.name() + ": value tuple does not match the compositor arity");
    const bool increasing = phi_.cls() == CompositorClass::PhiM;
    double sum = 0.0;
    for (double v : vals) {
        require(std::isfinite(v) && v >= 0.0, ErrorKind::DomainViolation, "Orlicz addition needs finite values >= 0");
        if (!increasing)
            require(v > 0.0, ErrorKind::DomainViolation, phi_.name() + ": decreasing compositors need values > 0");
        sum += v;
    }
    if (sum == 0.0) return 0.0;

    auto g = [&](double lambda) {
        for (std::size_t j = 0; j < m; ++j) scratch[j] = vals[j] / lambda;
        return phi_(scratch.first(m)) - 1.0;
    };
    // g is decreasing in lambda for PhiM and increasing for PsiM
    auto above_root = [&](double gv) { return increasing ? gv <= 0.0 : gv >= 0.0; };
    auto below_root = [&](double gv) { return increasing ? gv >= 0.0 : gv <= 0.0; };

    double hi = sum / tau0_;
    double ghi = g(hi);
    for (int k = 0; !above_root(ghi); ++k) {
        if (k == kMaxBracketSteps || !std::isfinite(hi))
            fail(ErrorKind::NumericalFailure, phi_.name() + ": no upper bracket for the Orlicz sum", ghi);
        hi *= 2.0;
        ghi = g(hi);
    }
    if (ghi == 0.0) return hi;

    double lo = hi;
    double glo = ghi;
    for (int k = 0; !below_root(glo); ++k) {
        if (k == kMaxBracketSteps)
            fail(ErrorKind::NumericalFailure, phi_.name() + ": no lower bracket for the Orlicz sum", glo);
        hi = lo;
        lo *= 0.5;
        glo = g(lo);
    }
    if (glo == 0.0) return lo;

    const RootResult r = bisect(g, lo, hi, kMaxBisection);
    if (!(std::abs(r.residual) <= kRootTolerance))
        fail(ErrorKind::NumericalFailure, phi_.name() + ": Orlicz sum did not converge", r.residual);
    return r.x;
}

double orlicz_add_pointwise(const MonotoneCompositor& phi, std::span<const double> vals)
{
    return OrliczSolver(phi).solve(vals);
}

namespace {

void check_fields(const OrliczSolver& solver, std::span<const DensityField> fields)
{
    require_common_space(fields);
    require(fields.size() == solver.arity(), ErrorKind::InvalidParameter,
            solver.phi().name() + ": number of fields does not match the compositor arity");
    if (solver.phi().cls() == CompositorClass::PsiM)
        for (const auto& f : fields)
            require(f.strictly_positive(), ErrorKind::DomainViolation,
                    solver.phi().name() + ": decreasing compositors need strictly positive fields");
}

std::vector<std::span<const double>> columns(std::span<const DensityField> fields)
{
    std::vector<std::span<const double>> cols;
    cols.reserve(fields.size());
    for (const auto& f : fields) cols.push_back(f.values());
    return cols;
}

std::vector<double> solve_field(const OrliczSolver& solver, std::span<const DensityField> fields)
{
    check_fields(solver, fields);
    std::vector<double> out(fields[0].size());
    const auto cols = columns(fields);
    kernels::orlicz_add_parallel(solver, cols, out);
    return out;
}

}  // namespace

DensityField orlicz_add_field(const OrliczSolver& solver, std::span<const DensityField> fields)
{
    return DensityField(fields[0].space(), solve_field(solver, fields));
}

DensityField orlicz_add_field(const MonotoneCompositor& phi, std::span<const DensityField> fields)
{
    return orlicz_add_field(OrliczSolver(phi), fields);
}

Measure orlicz_add_measure(const MonotoneCompositor& phi, std::span<const Measure> measures)
{
    return orlicz_add_field(phi, measures);
}

DiscrepancyReport check_homogeneity(const MonotoneCompositor& phi, std::span<const DensityField> fields, double r,
                                    double tolerance)
{
    require(std::isfinite(r) && r >= 0.0, ErrorKind::InvalidParameter, "homogeneity needs r >= 0");
    require(r > 0.0 || phi.cls() == CompositorClass::PhiM, ErrorKind::InvalidParameter,
            "r = 0 is only meaningful for increasing compositors");
    const OrliczSolver solver(phi);
    const std::vector<double> base = solve_field(solver, fields);

    std::vector<DensityField> scaled;
    for (const auto& f : fields) scaled.push_back(f.scaled(r));
    const std::vector<double> lhs = solve_field(solver, scaled);

    DiscrepancyReport rep;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double d = rel_diff(lhs[i], r * base[i]);
        if (d > rep.max_deviation) {
            rep.max_deviation = d;
            rep.worst_index = i;
        }
        if (d > tolerance) ++rep.violations;
    }
    rep.worst_margin = tolerance - rep.max_deviation;
    rep.passed = rep.violations == 0;
    return rep;
}

DiscrepancyReport check_monotone_bound(const MonotoneCompositor& phi, std::span<const DensityField> fields,
                                       std::span<const DensityField> dominating)
{
    constexpr double kSlack = 1e-12;
    const OrliczSolver solver(phi);
    const std::vector<double> s = solve_field(solver, fields);
    std::vector<double> sq;
    if (!dominating.empty()) {
        require(dominating.size() == fields.size(), ErrorKind::InvalidParameter,
                "dominating fields must match the input fields");
        for (std::size_t j = 0; j < fields.size(); ++j) {
            require(dominating[j].space()->same_as(*fields[0].space()), ErrorKind::InvalidParameter,
                    "dominating fields live on a different space");
            for (std::size_t i = 0; i < fields[j].size(); ++i)
                require(dominating[j][i] >= fields[j][i], ErrorKind::InvalidParameter,
                        "dominating fields must be >= the input fields");
        }
        sq = solve_field(solver, dominating);
    }

    DiscrepancyReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    auto record = [&](double margin, std::size_t i) {
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_index = i;
        }
        if (margin < -kSlack) {
            ++rep.violations;
            rep.max_deviation = std::max(rep.max_deviation, -margin);
        }
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        double total = 0.0;
        for (const auto& f : fields) total += f[i];
        const double bound = total / solver.tau0();
        record((bound - s[i]) / std::max(bound, 1e-300), i);
        if (!sq.empty()) record((sq[i] - s[i]) / std::max(sq[i], 1e-300), i);
    }
    rep.passed = rep.violations == 0;
    return rep;
}

ConvergenceReport check_convergence(const MonotoneCompositor& phi, std::span<const DensityField> limits,
                                    const std::vector<std::vector<DensityField>>& sequence, ConvergenceMode mode,
                                    double tolerance)
{
    require(!sequence.empty(), ErrorKind::InvalidParameter, "convergence check needs a nonempty sequence");
    if (mode == ConvergenceMode::Uniform)
        for (const auto& f : limits)
            require(f.strictly_positive(), ErrorKind::DomainViolation,
                    "uniform convergence check needs strictly positive limits");
    const OrliczSolver solver(phi);
    const std::vector<double> target = solve_field(solver, limits);
    double scale = 0.0;
    for (double v : target) scale = std::max(scale, std::abs(v));
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);

    ConvergenceReport rep;
    for (const auto& terms : sequence) {
        for (const auto& f : terms)
            require(f.space()->same_as(*limits[0].space()), ErrorKind::InvalidParameter,
                    "sequence fields live on a different space");
        const std::vector<double> s = solve_field(solver, terms);
        double d = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) d = std::max(d, std::abs(s[i] - target[i]));
        if (!rep.distances.empty()) {
            const double prev = rep.distances.back();
            rep.ratios.push_back(prev > 0.0 ? d / prev : 0.0);
            if (d > prev + slack) rep.monotone = false;
        }
        rep.distances.push_back(d);
    }
    rep.final_distance = rep.distances.back();
    rep.passed = rep.monotone && rep.final_distance <= tolerance;
    return rep;
}

}  // namespace orlicz
