// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"

#include "orlicz/affine.hpp"
#include "orlicz/cli.hpp"
#include "orlicz/divergence.hpp"
#include "orlicz/euclidean.hpp"
#include "orlicz/orlicz_add.hpp"
#include "orlicz/random.hpp"
#include "orlicz/star.hpp"
#include "orlicz/variation.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

using namespace orlicz;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Detail {
public:
    template <class T>
    Detail& operator()(const char* key, T v)
    {
        os_ << (first_ ? "" : " ") << key << "=" << v;
        first_ = false;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
    bool first_ = true;
};

double rel(double a, double b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

Outcome closed_form_sums()
{
    random::Rng rng(101);
    double worst = 0.0;
    int tuples = 0;
    for (double p : {0.5, 1.0, 2.0, -1.0, -2.0})
        for (int t = 0; t < 100; ++t) {
            const std::size_t m = 2 + static_cast<std::size_t>(t % 4);
            std::vector<double> v(m);
            for (auto& x : v) x = random::log_uniform(rng, 1e-3, 1e3);
            worst = std::max(worst, rel(orlicz_add_pointwise(make_power_sum(p, m), v), oracle::power_sum_root(v, p)));
            ++tuples;
        }
    return {worst <= 1e-10, Detail()("tuples", tuples)("max_rel_err", worst)("tol", 1e-10).str()};
}

Outcome obm_inequality()
{
    cli::SuiteOptions o;
    o.trials = 200;
    o.seed = 2;
    const auto r = cli::run_suite("obmi", o);
    double worst_eq = 0.0;
    std::size_t prop = 0;
    for (const auto& row : r.rows)
        if (row.proportional) {
            ++prop;
            worst_eq = std::max(worst_eq, std::abs(row.report.lhs - 1.0));
        }
    const bool pass = r.rows.size() == 200 && r.direction_violations == 0 && worst_eq <= 1e-8 && prop > 0 && r.passed();
    return {pass, Detail()("trials", r.rows.size())("direction_violations", r.direction_violations)("proportional", prop)(
                      "max_eq_dev", worst_eq)("failures", r.failures)
                      .str()};
}

Outcome first_variation()
{
    random::Rng rng(103);
    double worst = 0.0, worst_id = 0.0;
    int phi_cfg = 0, psi_cfg = 0;
    for (int t = 0; t < 20; ++t) {
        const SpacePtr space = random::random_space(rng, 64 + 16 * static_cast<std::size_t>(t % 4));
        const DensityField p1 = random::random_field(rng, space), p2 = random::random_field(rng, space);
        const auto all = SubsetMask::all(space->size());
        const double s = t % 5 == 4 ? -random::uniform(rng, 0.5, 2.0) : random::uniform(rng, 0.5, 3.0);
        const bool psi = t % 2 == 1;
        const UnivariateGauge g1 = psi ? gauges::power(-random::uniform(rng, 0.5, 3.0))
                                       : gauges::power(random::uniform(rng, 1.0, 3.0));
        const UnivariateGauge g2 = psi ? gauges::power(-random::uniform(rng, 0.2, 2.0))
                                       : gauges::power(random::uniform(rng, 0.2, 3.0));
        const auto est = first_variation_fd(g1, g2, p1, p2, s, all);
        // independent evaluation of int phi2(p2/p1) p1^s
        long double exact = 0.0L;
        for (std::size_t i = 0; i < space->size(); ++i)
            exact += static_cast<long double>(g2(p2[i] / p1[i])) * std::pow(static_cast<long double>(p1[i]), s) *
                     space->weights()[i];
        worst = std::max(worst, rel(est.extrapolated, static_cast<double>(exact)));
        (psi ? psi_cfg : phi_cfg)++;
        const auto id = first_variation_fd(gauges::identity(), gauges::identity(), p1, p2, 1.0, all);
        worst_id = std::max(worst_id, rel(id.extrapolated, p2.mass()));
    }
    return {worst <= 1e-4 && worst_id <= 1e-12 && phi_cfg > 0 && psi_cfg > 0,
            Detail()("configs", phi_cfg + psi_cfg)("phi", phi_cfg)("psi", psi_cfg)("max_rel_err", worst)(
                "identity_rel_err", worst_id)
                .str()};
}

Outcome chi_square()
{
    random::Rng rng(104);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const SpacePtr space = random::random_space(rng, 128);
        const Measure p1 = random::random_field(rng, space), p2 = random::random_field(rng, space);
        const auto est = f_div_as_variation(gauges::square(), gauges::square(), p1, p2);
        long double chi = 0.0L;
        for (std::size_t i = 0; i < space->size(); ++i)
            chi += static_cast<long double>(p2[i]) * p2[i] / p1[i] * space->weights()[i];
        worst = std::max(worst, rel(est.extrapolated, static_cast<double>(chi)));
    }
    return {worst <= 1e-4, Detail()("pairs", 10)("max_rel_err", worst).str()};
}

Outcome equivalence()
{
    cli::SuiteOptions o;
    o.trials = 100;
    o.seed = 5;
    const auto r = cli::run_suite("crdm", o);
    std::size_t agree = 0;
    for (const auto& row : r.rows) agree += row.agree ? 1 : 0;
    return {r.rows.size() == 100 && agree == 100 && r.disagreements == 0,
            Detail()("trials", r.rows.size())("agree", agree)("disagreements", r.disagreements).str()};
}

Outcome star_geometry()
{
    const double v2 = volume(StarBodyGrid::ball(sphere_grid(2, 128), 1.0));
    const double v3 = volume(StarBodyGrid::ball(sphere_grid(3, 24), 1.0));
    random::Rng rng(106);
    double bridge = 0.0, var = 0.0;
    for (int n : {2, 3}) {
        const auto grid = sphere_grid(n, n == 2 ? 128 : 24);
        for (int t = 0; t < 5; ++t) {
            const auto k = random::random_star_body(rng, grid), l = random::random_star_body(rng, grid);
            const StarBodyGrid pair[] = {k, l};
            for (double p : {0.5, 1.0, 2.0, -1.0}) bridge = std::max(bridge, bridging_residual(make_power_sum(p, 2), pair));
            var = std::max(var, dual_mixed_volume_variation(gauges::square(), gauges::power(1.5), k, l).relative_error);
            var = std::max(var, dual_mixed_volume_variation(gauges::inverse(), gauges::power(-0.5), k, l).relative_error);
        }
    }
    cli::SuiteOptions o;
    o.trials = 50;
    o.seed = 6;
    const auto suite = cli::run_suite("star", o);
    const double e2 = rel(v2, oracle::pi), e3 = rel(v3, 4.0 * oracle::pi / 3.0);
    const bool pass = e2 <= 1e-10 && e3 <= 1e-8 && bridge <= 1e-10 && var <= 1e-4 && suite.rows.size() == 50 &&
                      suite.direction_violations == 0;
    return {pass, Detail()("disk_rel_err", e2)("ball_rel_err", e3)("bridging", bridge)("variation_rel_err", var)(
                      "obm_trials", suite.rows.size())("direction_violations", suite.direction_violations)
                      .str()};
}

EuclideanField gaussian_field(int n, double c, double half, std::size_t res)
{
    return GaussianFamilyPoint::scaled(n, c).to_field(half, res);
}

double sup_gap(const EuclideanField& a, const EuclideanField& b)
{
    double g = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
    return g;
}

Outcome gaussian_baselines(double& n1_seconds, double& n2_seconds)
{
    using clock = std::chrono::steady_clock;
    const auto g1 = gaussian_field(1, 1.0, 8.0, 512);
    const auto g2 = gaussian_field(2, 1.0, 8.0, 128);
    const double d1 = sup_gap(polar_dual(g1), g1), d2 = sup_gap(polar_dual(g2), g2);

    double margin = 0.0;
    for (double c : {0.5, 1.0, 2.0}) {
        const auto rep = in_class_D(gaussian_field(1, c, 10.0 / c, 401));
        margin = std::max(margin, std::abs(rep.product - rep.bound) / rep.bound);
        const auto rep2 = in_class_D(gaussian_field(2, c, 9.0 / c, 91));
        margin = std::max(margin, std::abs(rep2.product - rep2.bound) / rep2.bound);
    }

    SurfaceAreaOptions o;
    o.include_target = false;
    double worst = 0.0;
    const SurfaceGauge gs[] = {gauges::exp_neg(), gauges::surface_inverse(), gauges::surface_sqrt(),
                               gauges::t_over_one_plus_t()};
    for (int n : {1, 2}) {
        const auto t0 = clock::now();
        for (const auto& phi : gs)
            for (double c : {0.5, 1.0, 2.0}) {
                const auto r = affine_surface_area(phi, SurfaceTarget::gaussian(GaussianFamilyPoint::scaled(n, c)), o);
                worst = std::max(worst, rel(r.value, std::pow(std::sqrt(2.0 * oracle::pi) / c, n) * phi(std::pow(c, n))));
            }
        (n == 1 ? n1_seconds : n2_seconds) = std::chrono::duration<double>(clock::now() - t0).count();
    }
    const bool pass = d1 <= 1e-6 && d2 <= 1e-6 && margin <= 2e-6 && worst <= 1e-6;
    return {pass, Detail()("self_dual_n1", d1)("self_dual_n2", d2)("class_d_rel_margin", margin)(
                      "closed_form_rel_err", worst)
                      .str()};
}

Outcome isoperimetric_ordering()
{
    random::Rng rng(108);
    double worst = std::numeric_limits<double>::infinity();
    int checked = 0;
    bool all_in_d = true;
    for (int t = 0; t < 10; ++t) {
        const auto target = SurfaceTarget::grid(random::random_log_concave_1d(rng, 301));
        for (const auto& phi : {gauges::exp_neg(), gauges::surface_inverse(), gauges::surface_sqrt()}) {
            const auto r = affine_surface_area(phi, target);
            all_in_d = all_in_d && r.upper_bound && r.class_d_bound;
            if (!r.upper_bound || !r.class_d_bound) continue;
            const double scale = std::max(std::abs(r.value), 1e-300);
            // Phi: lower <= value <= upper; Psi: upper <= value <= lower; upper <= class-D bound for both
            const double sign = phi.cls() == SurfaceClass::PsiClass ? -1.0 : 1.0;
            const double m1 = sign * (r.value - r.lower_bound);
            const double m2 = sign * (*r.upper_bound - r.value);
            const double m3 = *r.class_d_bound - *r.upper_bound;
            worst = std::min({worst, m1 / scale, m2 / scale, m3 / scale});
            ++checked;
        }
    }
    return {all_in_d && worst >= -1e-8, Detail()("targets", 10)("chains", checked)("worst_rel_margin", worst).str()};
}

Outcome affine_invariance()
{
    random::Rng rng(109);
    SurfaceAreaOptions o;
    o.family = GaussianFamily::Full;
    o.include_target = false;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int n = 1 + t % 2;
        const auto target = SurfaceTarget::gaussian(GaussianFamilyPoint::full(random::random_gaussian_matrix(rng, n)));
        const Eigen::MatrixXd map = random::random_unimodular(rng, n);
        const auto& phi = t % 3 == 2 ? gauges::surface_sqrt() : gauges::exp_neg();
        const double a = affine_surface_area(phi, target, o).value;
        const double b = affine_surface_area(phi, target.transformed(map), o).value;
        worst = std::max(worst, rel(a, b));
    }
    return {worst <= 1e-8, Detail()("maps", 20)("max_rel_change", worst).str()};
}

}  // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    double n1 = 0.0, n2 = 0.0;
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "closed-form Orlicz sums", 1.0, closed_form_sums},
        {2, "dual functional OBM inequality", 10.0, obm_inequality},
        {3, "first-variation formula", 30.0, first_variation},
        {4, "f-divergence as a variation", 0.0, chi_square},
        {5, "equivalence of the two inequalities", 0.0, equivalence},
        {6, "star geometry", 20.0, star_geometry},
        {7, "Gaussian baselines", 0.0, [&] { return gaussian_baselines(n1, n2); }},
        {8, "isoperimetric ordering", 0.0, isoperimetric_ordering},
        {9, "affine invariance", 0.0, affine_invariance},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        bool pass = o.pass;
        std::string timing = Detail()("seconds", secs).str();
        if (c.limit_seconds > 0.0) {
            pass = pass && secs < c.limit_seconds;
            timing += Detail()(" limit", c.limit_seconds).str();
        }
        if (c.id == 7) {
            pass = pass && n1 < 60.0 && n2 < 300.0;
            timing += Detail()(" affine_n1_seconds", n1)("affine_n2_seconds", n2).str();
        }
        if (!pass) ++failed;
        std::printf("criterion %d: %s  %s  %s  %s\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
