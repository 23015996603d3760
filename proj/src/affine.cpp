#include "orlicz/affine.hpp"

#include "orlicz/error.hpp"
#include "orlicz/kernels.hpp"
#include "orlicz/numeric.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace orlicz {

double gaussian_closed_form(const SurfaceGauge& phi, double c, int n)
{
    require(c > 0.0 && n >= 1, ErrorKind::InvalidParameter, "closed form needs c > 0 and n >= 1");
    return std::pow(std::sqrt(2.0 * std::numbers::pi) / c, n) * phi(std::pow(c, n));
}

// ---------------------------------------------------------------------------
// SurfaceTarget

SurfaceTarget SurfaceTarget::grid(EuclideanField p)
{
    SurfaceTarget t{std::variant<EuclideanField, GaussianFamilyPoint>(p)};
    t.coords_ = p.coords();
    t.weights_ = p.weights();
    t.values_.assign(p.values().begin(), p.values().end());
    t.logp_.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) t.logp_[i] = std::log(p[i]);
    return t;
}

SurfaceTarget SurfaceTarget::gaussian(GaussianFamilyPoint g, std::size_t quad_nodes, double quad_half_width)
{
    require(quad_nodes >= 3 && quad_half_width > 0.0, ErrorKind::InvalidParameter, "invalid whitened quadrature");
    const int n = g.dim();
    SurfaceTarget t{std::variant<EuclideanField, GaussianFamilyPoint>(std::move(g))};
    t.quad_nodes_ = quad_nodes;
    t.quad_half_width_ = quad_half_width;
    const std::vector<double> ax = linspace(-quad_half_width, quad_half_width, quad_nodes);
    const double h = ax[1] - ax[0];
    std::size_t total = 1;
    for (int d = 0; d < n; ++d) total *= quad_nodes;
    t.coords_.resize(total * static_cast<std::size_t>(n));
    t.weights_.resize(total);
    t.values_.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        double w = 1.0, r2 = 0.0;
        for (int d = n - 1; d >= 0; --d) {
            const std::size_t k = rest % quad_nodes;
            rest /= quad_nodes;
            const double z = ax[k];
            t.coords_[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(d)] = z;
            w *= (k == 0 || k + 1 == quad_nodes) ? 0.5 * h : h;
            r2 += z * z;
        }
        t.weights_[i] = w;
        t.values_[i] = std::exp(-0.5 * r2);
    }
    return t;
}

int SurfaceTarget::dim() const
{
    if (const auto* f = field()) return f->dim();
    return gaussian_target()->dim();
}

double SurfaceTarget::mass() const
{
    if (const auto* f = field()) return orlicz::mass(*f);
    return gaussian_target()->mass();
}

Eigen::MatrixXd SurfaceTarget::second_moments() const
{
    if (const auto* g = gaussian_target()) {
        const Eigen::MatrixXd& a = g->matrix();
        return (a.transpose() * a).inverse();
    }
    const int n = dim();
    const std::size_t nn = static_cast<std::size_t>(n);
    Eigen::MatrixXd m(n, n);
    std::vector<double> terms(values_.size());
    const double total = mass();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < values_.size(); ++i)
                terms[i] = coords_[i * nn + static_cast<std::size_t>(a)] * coords_[i * nn + static_cast<std::size_t>(b)] *
                           values_[i] * weights_[i];
            m(a, b) = pairwise_sum(terms) / total;
        }
    return m;
}

double SurfaceTarget::divergence_to(const ScalarGauge& phi, const GaussianFamilyPoint& q) const
{
    const int n = dim();
    require(q.dim() == n, ErrorKind::InvalidParameter, "candidate dimension does not match the target");
    const std::size_t nn = static_cast<std::size_t>(n);
    const double a = q.polar_prefactor();
    std::vector<double> terms(values_.size());
    if (field()) {
        kernels::map_parallel(
            [&](std::size_t i) {
                const double ratio = a * std::exp(q.log_eval(std::span<const double>(coords_).subspan(i * nn, nn)) - logp_[i]);
                return phi(ratio) * values_[i] * weights_[i];
            },
            terms);
        return pairwise_sum(terms);
    }
    const GaussianFamilyPoint& target = *gaussian_target();
    const Eigen::MatrixXd m = q.matrix() * target.matrix().inverse();
    kernels::map_parallel(
        [&](std::size_t i) {
            const double* z = coords_.data() + i * nn;
            double mz2 = 0.0, z2 = 0.0;
            for (std::size_t r = 0; r < nn; ++r) {
                double v = 0.0;
                for (std::size_t c = 0; c < nn; ++c) v += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * z[c];
                mz2 += v * v;
                z2 += z[r] * z[r];
            }
            const double ratio = a * std::exp(-0.5 * (mz2 - z2));
            return phi(ratio) * values_[i] * weights_[i];
        },
        terms);
    return pairwise_sum(terms) / target.abs_det();
}

SurfaceTarget SurfaceTarget::transformed(const Eigen::MatrixXd& t) const
{
    if (const auto* g = gaussian_target())
        return SurfaceTarget::gaussian(g->transport(t), quad_nodes_, quad_half_width_);
    return SurfaceTarget::grid(apply_linear_map(*field(), t).field);
}

std::string SurfaceTarget::describe() const
{
    if (const auto* g = gaussian_target()) return "gaussian:" + g->describe();
    const auto* f = field();
    std::ostringstream os;
    os << "grid(n=" << f->dim() << ",R=" << f->half_width() << ",N=" << f->resolution() << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// log-concavity certificate

bool is_log_concave(const EuclideanField& p, double tolerance)
{
    const std::size_t n = p.resolution();
    std::vector<double> psi(p.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        psi[i] = -std::log(p[i]);
        scale = std::max(scale, std::abs(psi[i]));
    }
    const double slack = tolerance * std::max(scale, 1.0);
    auto convex3 = [&](double a, double b, double c) { return a - 2.0 * b + c >= -slack; };
    if (p.dim() == 1) {
        for (std::size_t i = 1; i + 1 < n; ++i)
            if (!convex3(psi[i - 1], psi[i], psi[i + 1])) return false;
        return true;
    }
    auto at = [&](std::size_t i, std::size_t j) { return psi[i * n + j]; };
    for (std::size_t i = 1; i + 1 < n; ++i)
        for (std::size_t j = 1; j + 1 < n; ++j) {
            if (!convex3(at(i - 1, j), at(i, j), at(i + 1, j))) return false;
            if (!convex3(at(i, j - 1), at(i, j), at(i, j + 1))) return false;
            if (!convex3(at(i - 1, j - 1), at(i, j), at(i + 1, j + 1))) return false;
            if (!convex3(at(i - 1, j + 1), at(i, j), at(i + 1, j - 1))) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// optimisation over the Gaussian families

namespace {

GaussianFamilyPoint diag_from(const std::vector<double>& x)
{
    Eigen::VectorXd d(static_cast<Eigen::Index>(x.size()));
    for (std::size_t k = 0; k < x.size(); ++k) d(static_cast<Eigen::Index>(k)) = std::exp(x[k]);
    return GaussianFamilyPoint::diagonal(d);
}

// upper-triangular U with exp on the diagonal, row by row
GaussianFamilyPoint full_from(const std::vector<double>& x, int n)
{
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    std::size_t k = 0;
    for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) u(r, c) = r == c ? std::exp(x[k++]) : x[k++];
    return GaussianFamilyPoint::full(u);
}

std::vector<double> full_params(const Eigen::MatrixXd& u)
{
    std::vector<double> x;
    for (int r = 0; r < u.rows(); ++r)
        for (int c = r; c < u.cols(); ++c) x.push_back(r == c ? std::log(u(r, c)) : u(r, c));
    return x;
}

SurfaceAreaResult solve(const SurfaceGauge& phi, const SurfaceTarget& target, const SurfaceAreaOptions& opts,
                        bool geominimal)
{
    const ScalarGauge f = phi.scalar();
    const int n = target.dim();
    const double mu_gamma = gaussian_mass(n);
    const double mu_p = target.mass();
    require(mu_p > 0.0 && std::isfinite(mu_p), ErrorKind::DegenerateInput, "target has no mass");

    SurfaceAreaResult res;
    res.minimizes = phi.minimizes();
    res.family = opts.family;
    const double sign = res.minimizes ? 1.0 : -1.0;
    int evals = 0;
    auto objective = [&](const GaussianFamilyPoint& q) {
        ++evals;
        const double v = sign * target.divergence_to(f, q);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    // scaled family: golden section over log c around the mass-matched scale
    const double a0 = std::pow(mu_gamma / mu_p, 1.0 / n);
    const auto scaled_obj = [&](double x) { return objective(GaussianFamilyPoint::scaled(n, std::exp(x))); };
    const optimize::ScalarMin sm = optimize::scan_then_golden(scaled_obj, std::log(a0) - opts.scan_half_range,
                                                               std::log(a0) + opts.scan_half_range, opts.scan_points,
                                                               opts.golden_tol);
    GaussianFamilyPoint best = GaussianFamilyPoint::scaled(n, std::exp(sm.x));
    double best_val = sm.fx;
    res.nested.push_back({GaussianFamily::Scaled, sign * best_val});

    const Eigen::MatrixXd sigma = target.second_moments();
    if (opts.family != GaussianFamily::Scaled) {
        std::vector<double> from_scaled(static_cast<std::size_t>(n), sm.x), from_moments;
        for (int d = 0; d < n; ++d) from_moments.push_back(-0.5 * std::log(sigma(d, d)));
        const auto diag_obj = [&](const std::vector<double>& x) { return objective(diag_from(x)); };
        const double fm = diag_obj(from_moments);
        const std::vector<double>& start = fm < best_val ? from_moments : from_scaled;
        const optimize::SimplexMin dm = optimize::nelder_mead(diag_obj, start, opts.simplex);
        if (dm.fx < best_val) {
            best_val = dm.fx;
            best = diag_from(dm.x);
        }
        res.nested.push_back({GaussianFamily::Diagonal, sign * best_val});
    }
    if (opts.family == GaussianFamily::Full) {
        const auto full_obj = [&](const std::vector<double>& x) { return objective(full_from(x, n)); };
        std::vector<double> start = full_params(best.matrix().cwiseAbs());
        Eigen::LLT<Eigen::MatrixXd> llt(sigma.inverse());
        if (llt.info() == Eigen::Success) {
            const Eigen::MatrixXd u = llt.matrixL().transpose();
            const std::vector<double> alt = full_params(u);
            if (full_obj(alt) < full_obj(start)) start = alt;
        }
        const optimize::SimplexMin fm = optimize::nelder_mead(full_obj, start, opts.simplex);
        if (fm.fx < best_val) {
            best_val = fm.fx;
            best = full_from(fm.x, n);
        }
        res.nested.push_back({GaussianFamily::Full, sign * best_val});
    }
    res.best = best;
    res.argopt = best.describe();

    // analytic bounds
    res.lower_bound = mu_p * phi(mu_gamma / mu_p);
    double mu_polar = 0.0;
    if (const auto* g = target.gaussian_target()) {
        mu_polar = g->polar().mass();
        res.target_in_d = true;
        res.target_margin = 0.0;
        res.target_log_concave = true;
    } else {
        const ClassDReport d = in_class_D(*target.field(), opts.class_d_tolerance);
        mu_polar = d.polar_mass;
        res.target_in_d = d.in_class;
        res.target_margin = d.margin;
        res.polar_truncated = d.truncated;
        res.target_off_center = d.off_center;
        res.target_log_concave = is_log_concave(*target.field());
    }
    if (res.target_in_d) {
        const double t = mu_polar / mu_gamma;
        res.c1 = std::pow(t, 1.0 / n);
        res.upper_bound = mu_p * phi(t);
        res.class_d_bound = phi(t) / t * mu_gamma;
        const bool admissible = !geominimal || res.target_log_concave;
        if (opts.include_target && admissible && sign * *res.upper_bound < best_val) {
            best_val = sign * *res.upper_bound;
            res.best_is_target = true;
            res.argopt = "target";
        }
    }
    res.value = sign * best_val;
    res.evaluations = evals;
    return res;
}

}  // namespace

bool ordering_holds(const SurfaceAreaResult& r, SurfaceClass cls, double slack)
{
    bool ok = true;
    if (cls == SurfaceClass::PhiClass) ok = r.value - r.lower_bound >= -slack;
    if (cls == SurfaceClass::PsiClass) ok = r.lower_bound - r.value >= -slack;
    if (r.upper_bound) {
        const double gap = *r.upper_bound - r.value;
        ok = ok && (cls == SurfaceClass::PsiClass ? -gap : gap) >= -slack;
        if (r.class_d_bound) ok = ok && *r.class_d_bound - *r.upper_bound >= -slack;
    }
    return ok;
}

SurfaceAreaResult affine_surface_area(const SurfaceGauge& phi, const SurfaceTarget& target,
                                      const SurfaceAreaOptions& opts)
{
    return solve(phi, target, opts, false);
}

SurfaceAreaResult geominimal_surface_area(const SurfaceGauge& phi, const SurfaceTarget& target,
                                          const SurfaceAreaOptions& opts)
{
    return solve(phi, target, opts, true);
}

}  // namespace orlicz
