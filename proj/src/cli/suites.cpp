#include "orlicz/cli.hpp"

#include "orlicz/error.hpp"
#include "orlicz/inequality.hpp"
#include "orlicz/random.hpp"

#include <cmath>
#include <cstdio>

namespace orlicz::cli {

namespace {

using random::Rng;
using random::uniform;

std::string short_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string power_sum_label(double p, std::size_t m)
{
    return "power_sum:p=" + short_real(p) + ",m=" + std::to_string(m);
}

/// Either a copy of the first field scaled by random constants, or fresh
/// independent random fields.
std::vector<DensityField> make_fields(Rng& rng, const SpacePtr& space, std::size_t m, bool proportional)
{
    std::vector<DensityField> fields;
    fields.push_back(random::random_field(rng, space));
    for (std::size_t j = 1; j < m; ++j) {
        if (proportional) fields.push_back(fields.front().scaled(random::log_uniform(rng, 0.2, 5.0)));
        else fields.push_back(random::random_field(rng, space));
    }
    return fields;
}

/// Random subset of about half the points (never empty).
SubsetMask random_subset(Rng& rng, std::size_t n)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (uniform(rng, 0.0, 1.0) < 0.5) idx.push_back(i);
    if (idx.empty()) idx.push_back(0);
    return SubsetMask(std::move(idx));
}

/// Shared pass rule: the direction holds, proportional inputs reach
/// equality within the tolerance and other inputs never flag equality.
void judge(TrialRow& row, double eq_tol)
{
    const InequalityReport& r = row.report;
    row.passed = true;
    if (!r.holds) {
        row.passed = false;
        row.note = "direction violated";
    } else if (r.equality_expected && std::abs(r.margin) > eq_tol * r.scale()) {
        row.passed = false;
        row.note = "equality expected";
    } else if (!r.equality_expected && r.equality) {
        row.passed = false;
        row.note = "equality on non-proportional input";
    } else if (!row.agree) {
        row.passed = false;
        row.note = "inequalities disagree";
    }
}

TrialRow obmi_trial(std::size_t k, std::uint64_t seed, const SuiteOptions& opts)
{
    Rng rng(seed);
    TrialRow row;
    const std::size_t kind = k % 4;
    row.m = kind == 3 ? 2 : 2 + (k / 4) % 2;
    row.points = opts.grid_sizes[(k / 8) % opts.grid_sizes.size()];
    row.proportional = k % 5 == 4;
    std::optional<MonotoneCompositor> phi;
    if (kind == 0) {
        const double p = uniform(rng, 0.3, 0.8);
        phi = make_power_sum(p, row.m);
        row.config = power_sum_label(p, row.m);
    } else if (kind == 1) {
        const double p = uniform(rng, 1.3, 3.0);
        phi = make_power_sum(p, row.m);
        row.config = power_sum_label(p, row.m);
    } else if (kind == 2) {
        const double p = -uniform(rng, 0.5, 3.0);
        phi = make_power_sum(p, row.m);
        row.config = power_sum_label(p, row.m);
    } else {
        const double a1 = random::log_uniform(rng, 0.3, 3.0);
        const double a2 = random::log_uniform(rng, 0.3, 3.0);
        const bool concave = (k / 4) % 2 == 0;
        const double q = concave ? uniform(rng, 0.3, 0.8) : uniform(rng, 1.3, 3.0);
        const UnivariateGauge g1 = concave ? gauges::square_root() : gauges::square();
        phi = make_linear_combo(g1, gauges::power(q), a1, a2);
        row.config = "linear_combo:g1=" + g1.name() + ",g2=power:alpha=" + short_real(q) + ",a1=" + short_real(a1) +
                     ",a2=" + short_real(a2);
    }
    const SpacePtr space = random::random_space(rng, row.points);
    const auto fields = make_fields(rng, space, row.m, row.proportional);
    const SubsetMask a = k % 3 == 2 ? random_subset(rng, row.points) : SubsetMask::all(row.points);
    row.report = check_dual_obmi(*phi, fields, a);
    return row;
}

TrialRow corollary_trial(std::size_t k, std::uint64_t seed, const SuiteOptions& opts)
{
    Rng rng(seed);
    TrialRow row;
    row.m = 2 + (k / 3) % 2;
    row.points = opts.grid_sizes[(k / 6) % opts.grid_sizes.size()];
    const double p = k % 4 == 3 ? 1.0 : uniform(rng, 0.3, 0.9);
    const MonotoneCompositor phi = make_power_sum(p, row.m);
    const SpacePtr space = random::random_space(rng, row.points);
    std::vector<DensityField> fields{random::random_field(rng, space)};
    std::string inputs;
    for (std::size_t j = 1; j < row.m; ++j) {
        if (k % 3 == 0) {
            fields.push_back(DensityField::constant(space, 0.0));
            inputs = "zero";
        } else if (k % 3 == 1) {
            fields.push_back(random::random_field_with_zeros(rng, space, 0.3));
            inputs = "sparse";
        } else {
            fields.push_back(random::random_field(rng, space));
            inputs = "positive";
        }
    }
    row.config = power_sum_label(p, row.m) + " " + inputs;
    const CorollaryReport c = check_obmi_corollary(phi, fields, SubsetMask::all(row.points));
    row.report = c.final;
    row.proportional = row.report.equality_expected;
    row.passed = c.passed;
    if (!c.all_hold) row.note = "regularized evaluation violated";
    else if (!c.passed) row.note = "limit evaluation failed";
    return row;
}

TrialRow ls_trial(std::size_t k, std::uint64_t seed, const SuiteOptions& opts)
{
    Rng rng(seed);
    TrialRow row;
    row.m = 2 + (k / 5) % 2;
    row.points = opts.grid_sizes[(k / 10) % opts.grid_sizes.size()];
    row.proportional = k % 7 == 6;
    double s = 1.0, q = 1.0;
    switch (k % 5) {
    case 0:  // phi_s concave, Phi
        s = uniform(rng, 0.5, 3.0);
        q = uniform(rng, 0.2, 0.8);
        break;
    case 1:  // phi_s convex, Phi
        s = uniform(rng, 0.5, 3.0);
        q = uniform(rng, 1.3, 3.0);
        break;
    case 2:  // Psi gauge, phi_s convex
        s = uniform(rng, 0.5, 3.0);
        q = -uniform(rng, 0.3, 2.0);
        break;
    case 3:  // negative s flips the class, phi_s concave
        s = -uniform(rng, 0.5, 3.0);
        q = uniform(rng, 0.2, 0.8);
        break;
    default:  // phi_s affine: Minkowski for s = 1, p = s in general
        s = (k / 5) % 2 == 0 ? 1.0 : uniform(rng, 0.5, 3.0);
        q = 1.0;
        break;
    }
    const double p = q * s;
    const MonotoneCompositor phi = make_power_sum(p, row.m);
    row.config = power_sum_label(p, row.m) + " s=" + short_real(s);
    const SpacePtr space = random::random_space(rng, row.points);
    const auto fields = make_fields(rng, space, row.m, row.proportional);
    const SubsetMask a = k % 3 == 2 ? random_subset(rng, row.points) : SubsetMask::all(row.points);
    row.report = check_ls_theorem(phi, s, fields, a);
    return row;
}

TrialRow crdm_trial(std::size_t k, std::uint64_t seed, const SuiteOptions& opts)
{
    Rng rng(seed);
    TrialRow row;
    row.m = 2;
    row.points = opts.grid_sizes[(k / 6) % opts.grid_sizes.size()];
    row.proportional = k % 5 == 4;
    const double a1 = random::log_uniform(rng, 0.3, 3.0);
    const double a2 = random::log_uniform(rng, 0.3, 3.0);
    std::optional<UnivariateGauge> g1, g2;
    switch (k % 3) {
    case 0:
        g1 = gauges::square_root();
        g2 = gauges::power(uniform(rng, 0.2, 0.8));
        break;
    case 1:
        g1 = gauges::square();
        g2 = gauges::power(uniform(rng, 1.3, 3.0));
        break;
    default:
        g1 = gauges::inverse();
        g2 = gauges::power(-uniform(rng, 0.3, 3.0));
        break;
    }
    if ((k / 3) % 2 == 1) std::swap(g1, g2);
    row.config = "linear_combo:g1=" + g1->name() + ",g2=" + g2->name() + ",a1=" + short_real(a1) +
                 ",a2=" + short_real(a2);
    const SpacePtr space = random::random_space(rng, row.points);
    const auto fields = make_fields(rng, space, 2, row.proportional);
    const EquivalenceReport e = check_crdm_equivalence(*g1, *g2, a1, a2, fields[0], fields[1]);
    row.report = e.obmi;
    row.agree = e.agree && e.jensen.holds && e.jensen.equality == e.jensen.equality_expected;
    return row;
}

TrialRow star_trial(std::size_t k, std::uint64_t seed, const SuiteOptions&)
{
    Rng rng(seed);
    TrialRow row;
    const int n = 2 + static_cast<int>(k % 2);
    row.m = 2 + (k / 2) % 2;
    const GridPtr grid = sphere_grid(n, n == 2 ? 64 : 16);
    row.points = grid->size();
    row.proportional = k % 5 == 4;
    double q = 1.0;
    switch ((k / 4) % 3) {
    case 0: q = uniform(rng, 0.2, 0.8); break;
    case 1: q = uniform(rng, 1.3, 3.0); break;
    default: q = -uniform(rng, 0.3, 2.0); break;
    }
    const double p = q * n;
    const MonotoneCompositor phi = make_power_sum(p, row.m);
    row.config = power_sum_label(p, row.m) + " n=" + std::to_string(n);
    std::vector<StarBodyGrid> bodies{random::random_star_body(rng, grid)};
    for (std::size_t j = 1; j < row.m; ++j) {
        if (row.proportional) {
            const double c = random::log_uniform(rng, 0.5, 2.0);
            std::vector<double> r(bodies.front().radial().begin(), bodies.front().radial().end());
            for (auto& v : r) v *= c;
            bodies.emplace_back(grid, std::move(r));
        } else {
            bodies.push_back(random::random_star_body(rng, grid));
        }
    }
    row.report = check_geometric_obmi(phi, bodies);
    return row;
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"obmi", "corollary", "ls", "crdm", "star"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts)
{
    require(!opts.grid_sizes.empty(), ErrorKind::InvalidParameter, "suite needs at least one grid size");
    for (std::size_t g : opts.grid_sizes) require(g >= 2, ErrorKind::InvalidParameter, "grid sizes must be >= 2");
    TrialRow (*trial)(std::size_t, std::uint64_t, const SuiteOptions&) = nullptr;
    if (name == "obmi") trial = obmi_trial;
    else if (name == "corollary") trial = corollary_trial;
    else if (name == "ls") trial = ls_trial;
    else if (name == "crdm") trial = crdm_trial;
    else if (name == "star") trial = star_trial;
    else fail(ErrorKind::InvalidParameter, "unknown suite '" + name + "'");

    SuiteResult res;
    res.suite = name;
    for (std::size_t k = 0; k < opts.trials; ++k) {
        const std::uint64_t seed = random::derive_seed(opts.seed, k);
        TrialRow row;
        try {
            row = trial(k, seed, opts);
            if (name != "corollary") judge(row, opts.equality_tolerance);
        } catch (const Error& e) {
            row.passed = false;
            row.note = e.what();
        }
        row.index = k;
        row.seed = seed;
        row.report.seed = seed;
        if (!row.report.holds) ++res.direction_violations;
        if (row.report.equality_expected && std::abs(row.report.margin) > opts.equality_tolerance * row.report.scale())
            ++res.equality_failures;
        if (!row.report.equality_expected && row.report.equality) ++res.false_equalities;
        if (!row.agree) ++res.disagreements;
        if (!row.passed) ++res.failures;
        res.rows.push_back(std::move(row));
    }
    return res;
}

Json to_json(const SuiteResult& r)
{
    Json failing = Json::array();
    for (const auto& row : r.rows) {
        if (row.passed) continue;
        Json f = to_json(row.report);
        f["index"] = row.index;
        f["config"] = row.config;
        f["note"] = row.note;
        failing.push_back(f);
    }
    return Json{{"suite", r.suite},
                {"trials", r.rows.size()},
                {"direction_violations", r.direction_violations},
                {"equality_failures", r.equality_failures},
                {"false_equalities", r.false_equalities},
                {"disagreements", r.disagreements},
                {"failures", r.failures},
                {"failing_cases", failing}};
}

CsvTable to_csv(const SuiteResult& r)
{
    CsvTable t({"index", "seed", "config", "m", "points", "lhs", "rhs", "direction", "margin", "holds", "equality",
                "equality_expected", "agree", "passed", "note"});
    auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
    for (const auto& row : r.rows)
        t.add({std::to_string(row.index), std::to_string(row.seed), row.config, std::to_string(row.m),
               std::to_string(row.points), format_real(row.report.lhs), format_real(row.report.rhs),
               to_string(row.report.direction), format_real(row.report.margin), flag(row.report.holds),
               flag(row.report.equality), flag(row.report.equality_expected), flag(row.agree), flag(row.passed),
               row.note});
    return t;
}

}  // namespace orlicz::cli
