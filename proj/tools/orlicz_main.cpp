#include "orlicz/affine.hpp"
#include "orlicz/cli.hpp"
#include "orlicz/divergence.hpp"
#include "orlicz/error.hpp"
#include "orlicz/gauge_spec.hpp"
#include "orlicz/io.hpp"
#include "orlicz/orlicz_add.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/star.hpp"
#include "orlicz/variation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>

using namespace orlicz;
using orlicz::cli::CsvTable;
using orlicz::cli::format_real;
using orlicz::cli::Json;

namespace {

struct AddArgs {
    std::string phi = "power_sum:p=2,m=2";
    std::vector<std::string> fields;
    std::size_t points = 64;
    double r = 3.7;
    std::string write;
};

struct DivergenceArgs {
    std::string gauge = "kl";
    std::string p, q;
    std::size_t points = 64;
};

struct VariationArgs {
    std::string phi1 = "square";
    std::string phi2 = "id";
    double s = 1.0;
    std::string p1, p2;
    std::size_t points = 64;
    std::string eps;
};

struct CheckArgs {
    std::string suite = "obmi";
    std::size_t trials = 200;
    std::string grid_sizes = "64,1024";
};

struct StarArgs {
    std::string phi = "power_sum:p=2,m=2";
    int dim = 2;
    std::size_t resolution = 0;
    std::vector<std::string> bodies;
    std::string phi1 = "id";
    std::string phi2 = "square";
    std::string write_sum;
};

struct AffineArgs {
    std::string target = "gaussian:c=1";
    std::string gauge = "exp_neg";
    std::string family = "scaled";
    std::size_t resolution = 81;
    bool geominimal = false;
};

int finish(const cli::GlobalOptions& g, Json report, bool passed, const CsvTable* csv, const Json& failing = {})
{
    report["passed"] = passed;
    if (!passed && !failing.is_null()) report["failing_cases"] = failing;
    cli::emit(g.out, report, csv);
    if (!passed) {
        std::cerr << "orlicz: assertion failed";
        if (!failing.is_null()) std::cerr << "\n" << failing.dump(2);
        std::cerr << "\n";
        return cli::kExitAssertion;
    }
    return cli::kExitOk;
}

Json field_tolerances(double tol) { return Json{{"root", kRootTolerance}, {"check", tol}}; }

int run_add(const cli::GlobalOptions& g, const AddArgs& a)
{
    const GaugeSpec spec = parse_gauge_spec(a.phi);
    const MonotoneCompositor phi = make_compositor(spec);
    if (!a.fields.empty())
        require(a.fields.size() == phi.arity(), ErrorKind::InvalidParameter,
                "compositor has arity " + std::to_string(phi.arity()) + " but " + std::to_string(a.fields.size()) +
                    " fields were given");
    const auto fields = cli::load_fields(a.fields, phi.arity(), a.points, g.seed);
    const double tol = g.tol.value_or(1e-10);
    const OrliczSolver solver(phi);
    const DensityField sum = orlicz_add_field(solver, fields);

    double input_mass = 0.0;
    Json masses = Json::array();
    for (const auto& f : fields) {
        masses.push_back(f.mass());
        input_mass += f.mass();
    }
    const double bound = input_mass / solver.tau0();
    double max_residual = 0.0;
    std::vector<double> vals(phi.arity());
    for (std::size_t i = 0; i < sum.size(); ++i) {
        if (sum[i] == 0.0) continue;
        for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = fields[j][i] / sum[i];
        max_residual = std::max(max_residual, std::abs(phi(vals) - 1.0));
    }
    std::vector<DensityField> dominating;
    for (const auto& f : fields) dominating.push_back(f.shifted(1.0));
    const DiscrepancyReport hom = check_homogeneity(phi, fields, a.r, tol);
    const DiscrepancyReport mono = check_monotone_bound(phi, fields, dominating);
    const bool mass_ok = sum.mass() <= bound * (1.0 + 1e-12);

    Json rep = cli::report_header("add", g.seed, field_tolerances(tol), Json{{"points", sum.size()}},
                                  Json{{"phi", spec.canonical()}});
    rep["result"] = Json{{"tau0", solver.tau0()},
                         {"input_masses", masses},
                         {"mass", sum.mass()},
                         {"mass_bound", bound},
                         {"max_residual", max_residual},
                         {"homogeneity", {{"r", a.r}, {"max_deviation", hom.max_deviation}, {"passed", hom.passed}}},
                         {"monotone_bound",
                          {{"worst_margin", mono.worst_margin}, {"violations", mono.violations}, {"passed", mono.passed}}}};
    if (!a.write.empty()) io::write_density(a.write, sum);

    std::vector<std::string> header{"index", "weight"};
    for (std::size_t j = 0; j < fields.size(); ++j) header.push_back("p" + std::to_string(j + 1));
    header.push_back("sum");
    CsvTable csv(header);
    for (std::size_t i = 0; i < sum.size(); ++i) {
        std::vector<std::string> row{std::to_string(i), format_real(sum.space()->weights()[i])};
        for (const auto& f : fields) row.push_back(format_real(f[i]));
        row.push_back(format_real(sum[i]));
        csv.add(std::move(row));
    }
    const bool passed = hom.passed && mono.passed && mass_ok && max_residual <= kRootTolerance;
    return finish(g, rep, passed, &csv);
}

int run_divergence(const cli::GlobalOptions& g, const DivergenceArgs& a)
{
    const GaugeSpec spec = parse_gauge_spec(a.gauge);
    const ScalarGauge f = make_scalar(spec);
    require(a.p.empty() == a.q.empty(), ErrorKind::InvalidParameter, "--p and --q must be given together");
    std::vector<std::string> paths;
    if (!a.p.empty()) paths = {a.p, a.q};
    const auto fields = cli::load_fields(paths, 2, a.points, g.seed);
    const double tol = g.tol.value_or(kEqualityTolerance);
    const DivergenceResult d = f_divergence(f, fields[0], fields[1]);
    const double scale = std::max({std::abs(d.value), std::abs(d.bound), 1e-300});
    const bool equal = std::abs(d.equality_gap) <= tol * scale;
    bool holds = true;
    std::string direction = "none";
    if (f.shape == Shape::StrictlyConvex || f.shape == Shape::Affine) {
        direction = "GE";
        holds = d.equality_gap >= -kDirectionSlack * scale;
    } else if (f.shape == Shape::StrictlyConcave) {
        direction = "LE";
        holds = d.equality_gap <= kDirectionSlack * scale;
    }
    Json rep = cli::report_header("divergence", g.seed, Json{{"equality", tol}, {"direction", kDirectionSlack}},
                                  Json{{"points", fields[0].size()}}, Json{{"f", spec.canonical()}});
    Json res = cli::to_json(d);
    res["equal"] = equal;
    res["direction"] = direction;
    res["holds"] = holds;
    rep["result"] = res;

    CsvTable csv({"index", "weight", "p", "q", "integrand"});
    const auto w = fields[0].space()->weights();
    for (std::size_t i = 0; i < fields[0].size(); ++i) {
        const double p = fields[0][i], q = fields[1][i];
        csv.add({std::to_string(i), format_real(w[i]), format_real(p), format_real(q), format_real(f(p / q) * q)});
    }
    return finish(g, rep, holds, &csv);
}

int run_variation(const cli::GlobalOptions& g, const VariationArgs& a)
{
    const GaugeSpec s1 = parse_gauge_spec(a.phi1), s2 = parse_gauge_spec(a.phi2);
    const UnivariateGauge phi1 = make_univariate(s1), phi2 = make_univariate(s2);
    require(a.p1.empty() == a.p2.empty(), ErrorKind::InvalidParameter, "--p1 and --p2 must be given together");
    std::vector<std::string> paths;
    if (!a.p1.empty()) paths = {a.p1, a.p2};
    const auto fields = cli::load_fields(paths, 2, a.points, g.seed);
    const std::vector<double> eps = a.eps.empty() ? default_eps_schedule() : cli::parse_real_list(a.eps);
    const double tol = g.tol.value_or(1e-4);
    const VariationEstimate est =
        first_variation_fd(phi1, phi2, fields[0], fields[1], a.s, SubsetMask::all(fields[0].size()), eps);
    Json rep = cli::report_header("variation", g.seed, Json{{"relative_error", tol}, {"root", kRootTolerance}},
                                  Json{{"points", fields[0].size()}, {"schedule", est.epsilons.size()}},
                                  Json{{"phi1", s1.canonical()}, {"phi2", s2.canonical()}});
    Json res = cli::to_json(est);
    res["s"] = a.s;
    rep["result"] = res;
    CsvTable csv({"epsilon", "quotient"});
    for (std::size_t k = 0; k < est.epsilons.size(); ++k)
        csv.add({format_real(est.epsilons[k]), format_real(est.fd_values[k])});
    const bool passed = est.relative_error <= tol && !est.sign_mismatch && est.sandwich_ok;
    return finish(g, rep, passed, &csv);
}

int run_check(const cli::GlobalOptions& g, const CheckArgs& a)
{
    cli::SuiteOptions opts;
    opts.trials = a.trials;
    opts.seed = g.seed;
    opts.equality_tolerance = g.tol.value_or(kEqualityTolerance);
    opts.grid_sizes.clear();
    for (double v : cli::parse_real_list(a.grid_sizes)) {
        require(v >= 2.0 && v == std::floor(v), ErrorKind::InvalidParameter, "grid sizes must be integers >= 2");
        opts.grid_sizes.push_back(static_cast<std::size_t>(v));
    }
    const cli::SuiteResult res = cli::run_suite(a.suite, opts);
    Json sizes = Json::array();
    for (auto s : opts.grid_sizes) sizes.push_back(s);
    Json rep = cli::report_header(
        "check", g.seed,
        Json{{"equality", opts.equality_tolerance}, {"direction", kDirectionSlack}, {"proportional", kProportionalThreshold}},
        Json{{"grid_sizes", sizes}}, Json{{"suite", a.suite}});
    Json summary = cli::to_json(res);
    const Json failing = summary["failing_cases"];
    summary.erase("failing_cases");
    rep["result"] = summary;
    const CsvTable csv = cli::to_csv(res);
    return finish(g, rep, res.passed(), &csv, res.passed() ? Json() : failing);
}

int run_star(const cli::GlobalOptions& g, const StarArgs& a)
{
    const GaugeSpec spec = parse_gauge_spec(a.phi);
    const MonotoneCompositor phi = make_compositor(spec);
    const GaugeSpec s1 = parse_gauge_spec(a.phi1), s2 = parse_gauge_spec(a.phi2);
    const UnivariateGauge phi1 = make_univariate(s1), phi2 = make_univariate(s2);
    require(a.dim == 2 || a.dim == 3, ErrorKind::InvalidParameter, "--dim must be 2 or 3");
    if (!a.bodies.empty())
        require(a.bodies.size() == phi.arity(), ErrorKind::InvalidParameter,
                "compositor has arity " + std::to_string(phi.arity()) + " but " + std::to_string(a.bodies.size()) +
                    " bodies were given");
    const std::size_t res = a.resolution ? a.resolution : (a.dim == 2 ? 128 : 24);
    const auto bodies = cli::load_bodies(a.bodies, std::max<std::size_t>(phi.arity(), 2), a.dim, res, g.seed);
    const int n = bodies.front().dim();
    const double tol = g.tol.value_or(1e-4);

    const std::span<const StarBodyGrid> used(bodies.data(), phi.arity());
    const StarBodyGrid sum = radial_orlicz_sum(phi, used);
    const double bridging = bridging_residual(phi, used);
    Json volumes = Json::array();
    for (const auto& b : used) volumes.push_back(volume(b));
    const InequalityReport obmi = check_geometric_obmi(phi, used);
    const double mixed = dual_orlicz_mixed_volume([&](double t) { return phi2(t); }, bodies[0], bodies[1]);
    const VariationEstimate var = dual_mixed_volume_variation(phi1, phi2, bodies[0], bodies[1]);
    if (!a.write_sum.empty()) io::write_body(a.write_sum, sum);

    Json rep = cli::report_header("star", g.seed,
                                  Json{{"bridging", 1e-10}, {"relative_error", tol}, {"direction", kDirectionSlack}},
                                  Json{{"dim", n}, {"nodes", sum.size()}, {"resolution", res}},
                                  Json{{"phi", spec.canonical()}, {"phi1", s1.canonical()}, {"phi2", s2.canonical()}});
    rep["result"] = Json{{"volumes", volumes},
                         {"sum_volume", volume(sum)},
                         {"bridging_residual", bridging},
                         {"obmi", cli::to_json(obmi)},
                         {"dual_mixed_volume", mixed},
                         {"variation", cli::to_json(var)}};
    std::vector<std::string> header{"index", "weight"};
    for (std::size_t j = 0; j < used.size(); ++j) header.push_back("rho" + std::to_string(j + 1));
    header.push_back("rho_sum");
    CsvTable csv(header);
    for (std::size_t i = 0; i < sum.size(); ++i) {
        std::vector<std::string> row{std::to_string(i), format_real(sum.grid()->weights()[i])};
        for (const auto& b : used) row.push_back(format_real(b[i]));
        row.push_back(format_real(sum[i]));
        csv.add(std::move(row));
    }
    const bool passed = bridging <= 1e-10 && obmi.holds && var.relative_error <= tol && !var.sign_mismatch;
    return finish(g, rep, passed, &csv);
}

int run_affine(const cli::GlobalOptions& g, const AffineArgs& a)
{
    const GaugeSpec spec = parse_gauge_spec(a.gauge);
    const SurfaceGauge phi = make_surface(spec);
    const cli::TargetSpec ts = cli::parse_target(a.target);
    const SurfaceTarget target = cli::load_target(ts, a.resolution);
    SurfaceAreaOptions opts;
    opts.family = parse_gaussian_family(a.family);
    const SurfaceAreaResult r =
        a.geominimal ? geominimal_surface_area(phi, target, opts) : affine_surface_area(phi, target, opts);
    const double tol = g.tol.value_or(1e-6);
    const int n = target.dim();

    Json rep = cli::report_header(
        "affine", g.seed, Json{{"closed_form", tol}, {"ordering", 1e-8}, {"class_d", opts.class_d_tolerance}},
        Json{{"dim", n}, {"resolution", target.parametric() ? a.resolution : target.field()->resolution()}},
        Json{{"phi", spec.canonical()}, {"class", to_string(phi.cls())}});
    Json res = cli::to_json(r);
    res["functional"] = a.geominimal ? "geominimal" : "affine";
    res["target"] = target.describe();
    bool passed = true;
    const double scale = std::max(std::abs(r.value), 1e-300);
    const double slack = 1e-8 * scale;
    const bool ordering = ordering_holds(r, phi.cls(), slack);
    res["ordering_holds"] = ordering;
    passed = ordering;
    if (const GaussianFamilyPoint* gp = target.gaussian_target(); gp && phi.cls() != SurfaceClass::StrictlyConvexOnly) {
        const double c = std::pow(gp->abs_det(), 1.0 / n);
        const double closed = gaussian_closed_form(phi, c, n);
        const double err = std::abs(r.value - closed) / std::abs(closed);
        res["closed_form"] = closed;
        res["closed_form_relative_error"] = err;
        passed = passed && err <= tol;
    }
    rep["result"] = res;
    CsvTable csv({"family", "value"});
    for (const auto& f : r.nested) csv.add({to_string(f.family), format_real(f.value)});
    return finish(g, rep, passed, &csv);
}

}  // namespace

int main(int argc, char** argv)
{
    parallel::apply_thread_env();

    CLI::App app{"Orlicz addition, f-divergences and dual Orlicz-Brunn-Minkowski checks"};
    app.set_version_flag("--version", std::string(ORLICZ_VERSION));
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<CLI::ConfigINI>());
    app.set_config("--config", "", "INI file; [section] names match subcommands");

    cli::GlobalOptions g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--tol", g.tol, "pass tolerance of the subcommand's main assertion");
    app.add_option("--out", g.out, "report prefix: writes <out>.json and <out>.csv (stdout JSON if omitted)");

    AddArgs add;
    auto* c_add = app.add_subcommand("add", "Orlicz sum of density fields");
    c_add->add_option("--phi", add.phi, "compositor spec")->capture_default_str();
    c_add->add_option("--field", add.fields, "density file (repeat once per argument)")->check(CLI::ExistingFile);
    c_add->add_option("--points", add.points, "points of the random fields used without --field")->capture_default_str();
    c_add->add_option("--r", add.r, "homogeneity factor")->capture_default_str()->check(CLI::PositiveNumber);
    c_add->add_option("--write", add.write, "write the sum as a density file");

    DivergenceArgs div;
    auto* c_div = app.add_subcommand("divergence", "f-divergence D_f(P, Q)");
    c_div->add_option("--gauge", div.gauge, "f spec")->capture_default_str();
    c_div->add_option("--p", div.p, "density file of P")->check(CLI::ExistingFile);
    c_div->add_option("--q", div.q, "density file of Q")->check(CLI::ExistingFile);
    c_div->add_option("--points", div.points, "points of the random fields")->capture_default_str();

    VariationArgs var;
    auto* c_var = app.add_subcommand("variation", "first variation of the linear Orlicz addition");
    c_var->add_option("--phi1", var.phi1, "univariate gauge phi1")->capture_default_str();
    c_var->add_option("--phi2", var.phi2, "univariate gauge phi2")->capture_default_str();
    c_var->add_option("--s", var.s, "norm exponent")->capture_default_str();
    c_var->add_option("--p1", var.p1, "density file of p1")->check(CLI::ExistingFile);
    c_var->add_option("--p2", var.p2, "density file of p2")->check(CLI::ExistingFile);
    c_var->add_option("--points", var.points, "points of the random fields")->capture_default_str();
    c_var->add_option("--eps", var.eps, "comma separated decreasing epsilon schedule");

    CheckArgs chk;
    auto* c_chk = app.add_subcommand("check", "seeded randomized inequality suite");
    c_chk->add_option("--suite", chk.suite, "obmi | corollary | ls | crdm | star")
        ->capture_default_str()
        ->check(CLI::IsMember(cli::suite_names()));
    c_chk->add_option("--trials", chk.trials, "number of trials")->capture_default_str();
    c_chk->add_option("--grid-sizes", chk.grid_sizes, "comma separated point counts")->capture_default_str();

    StarArgs star;
    auto* c_star = app.add_subcommand("star", "radial Orlicz sums, volumes and dual mixed volumes");
    c_star->add_option("--phi", star.phi, "compositor spec")->capture_default_str();
    c_star->add_option("--dim", star.dim, "2 or 3")->capture_default_str()->check(CLI::IsMember({2, 3}));
    c_star->add_option("--resolution", star.resolution, "sphere grid resolution (default 128 in R^2, 24 in R^3)");
    c_star->add_option("--body", star.bodies, "body file (repeat once per argument)")->check(CLI::ExistingFile);
    c_star->add_option("--phi1", star.phi1, "phi1 of the variation check")->capture_default_str();
    c_star->add_option("--phi2", star.phi2, "phi2 of the variation check and mixed volume")->capture_default_str();
    c_star->add_option("--write-sum", star.write_sum, "write the radial sum as a body file");

    AffineArgs aff;
    auto* c_aff = app.add_subcommand("affine", "dual Orlicz affine / geominimal surface area");
    c_aff->add_option("--target", aff.target, "gaussian:c=..[,n=..] | gaussian:diag=a;b | gaussian:full=.. | file:<path>")
        ->capture_default_str();
    c_aff->add_option("--gauge", aff.gauge, "surface gauge spec")->capture_default_str();
    c_aff->add_option("--family", aff.family, "scaled | diag | full")->capture_default_str();
    c_aff->add_option("--resolution", aff.resolution, "quadrature nodes per axis for Gaussian targets")
        ->capture_default_str()
        ->check(CLI::Range(3, 4001));
    c_aff->add_flag("--geominimal", aff.geominimal, "restrict candidates to log-concave densities");
    for (auto* sub : app.get_subcommands({})) sub->configurable();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitUsage;
    }

    try {
        if (c_add->parsed()) return run_add(g, add);
        if (c_div->parsed()) return run_divergence(g, div);
        if (c_var->parsed()) return run_variation(g, var);
        if (c_chk->parsed()) return run_check(g, chk);
        if (c_star->parsed()) return run_star(g, star);
        if (c_aff->parsed()) return run_affine(g, aff);
    } catch (const Error& e) {
        std::cerr << "orlicz: " << e.what() << "\n";
        const bool usage = e.kind() == ErrorKind::InvalidParameter || e.kind() == ErrorKind::Io;
        return usage ? cli::kExitUsage : cli::kExitAssertion;
    } catch (const std::exception& e) {
        std::cerr << "orlicz: " << e.what() << "\n";
        return cli::kExitAssertion;
    }
    return cli::kExitUsage;
}
