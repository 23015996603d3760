#include "orlicz/phi.hpp"

#include "orlicz/error.hpp"
#include "orlicz/numeric.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

namespace orlicz {

const char* to_string(CompositorClass c)
{
    return c == CompositorClass::PhiM ? "PhiM" : "PsiM";
}

const char* to_string(Shape s)
{
    switch (s) {
    case Shape::StrictlyConvex:  return "StrictlyConvex";
    case Shape::StrictlyConcave: return "StrictlyConcave";
    case Shape::Affine:          return "Affine";
    case Shape::Neither:         return "Neither";
    case Shape::Unknown:         return "Unknown";
    }
    return "Unknown";
}

const char* to_string(SurfaceClass c)
{
    switch (c) {
    case SurfaceClass::PhiClass:           return "Phi";
    case SurfaceClass::PsiClass:           return "Psi";
    case SurfaceClass::StrictlyConvexOnly: return "StrictlyConvexOnly";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// MonotoneCompositor

MonotoneCompositor::MonotoneCompositor(std::string name, std::size_t arity, CompositorClass cls, Fn fn,
                                       Shape shape)
    : name_(std::move(name)), arity_(arity), cls_(cls), fn_(std::move(fn)), shape_(shape)
{
    require(arity_ >= 1, ErrorKind::InvalidParameter, "compositor arity must be >= 1");
    require(static_cast<bool>(fn_), ErrorKind::InvalidParameter, "compositor needs a callable");
    if (cls_ == CompositorClass::PhiM) {
        std::vector<double> e(arity_, 0.0);
        normalized_ = true;
        for (std::size_t j = 0; j < arity_ && normalized_; ++j) {
            e[j] = 1.0;
            normalized_ = fn_(e) == 1.0;
            e[j] = 0.0;
        }
    }
}

bool MonotoneCompositor::in_domain(std::span<const double> x) const
{
    if (x.size() != arity_) return false;
    for (double v : x) {
        if (!std::isfinite(v)) return false;
        if (cls_ == CompositorClass::PhiM ? v < 0.0 : v <= 0.0) return false;
    }
    return true;
}

double MonotoneCompositor::eval_checked(std::span<const double> x) const
{
    if (x.size() != arity_)
        fail(ErrorKind::InvalidParameter, name_ + ": expected " + std::to_string(arity_) + " arguments");
    if (!in_domain(x)) fail(ErrorKind::DomainViolation, name_ + ": argument outside the class domain");
    const double v = fn_(x);
    if (!std::isfinite(v)) fail(ErrorKind::NumericalFailure, name_ + ": non-finite value");
    return v;
}

MonotoneCompositor MonotoneCompositor::with_shape(Shape s) const
{
    MonotoneCompositor c = *this;
    c.shape_ = s;
    return c;
}

MonotoneCompositor MonotoneCompositor::with_power_exponent(double p) const
{
    MonotoneCompositor c = *this;
    c.power_ = p;
    return c;
}

// ---------------------------------------------------------------------------
// UnivariateGauge

UnivariateGauge::UnivariateGauge(std::string name, CompositorClass cls, Fn fn, Shape shape)
    : name_(std::move(name)), cls_(cls), fn_(std::move(fn)), shape_(shape)
{
    require(static_cast<bool>(fn_), ErrorKind::InvalidParameter, "gauge needs a callable");
}

double UnivariateGauge::deviation_from_one(double u) const
{
    if (minus_one_) return minus_one_(u);
    return fn_(1.0 + u) - 1.0;
}

namespace {
constexpr double kDerivStep = 1e-6;
}

double UnivariateGauge::left_derivative_at_one() const
{
    if (left_) return *left_;
    return (fn_(1.0) - fn_(1.0 - kDerivStep)) / kDerivStep;
}

double UnivariateGauge::right_derivative_at_one() const
{
    if (right_) return *right_;
    return (fn_(1.0 + kDerivStep) - fn_(1.0)) / kDerivStep;
}

UnivariateGauge UnivariateGauge::with_derivatives(std::optional<double> left, std::optional<double> right) const
{
    UnivariateGauge g = *this;
    g.left_ = left;
    g.right_ = right;
    return g;
}

UnivariateGauge UnivariateGauge::with_deviation(Fn minus_one) const
{
    UnivariateGauge g = *this;
    g.minus_one_ = std::move(minus_one);
    return g;
}

UnivariateGauge UnivariateGauge::with_shape(Shape s) const
{
    UnivariateGauge g = *this;
    g.shape_ = s;
    return g;
}

MonotoneCompositor UnivariateGauge::compositor() const
{
    auto f = fn_;
    return MonotoneCompositor(name_, 1, cls_, [f](std::span<const double> x) { return f(x[0]); }, shape_);
}

ScalarGauge UnivariateGauge::scalar() const
{
    return ScalarGauge{name_, fn_, shape_, cls_ == CompositorClass::PhiM};
}

// ---------------------------------------------------------------------------
// SurfaceGauge

SurfaceGauge::SurfaceGauge(std::string name, SurfaceClass cls, Fn fn)
    : name_(std::move(name)), cls_(cls), fn_(std::move(fn))
{
    require(static_cast<bool>(fn_), ErrorKind::InvalidParameter, "gauge needs a callable");
}

ScalarGauge SurfaceGauge::scalar() const
{
    const Shape s = cls_ == SurfaceClass::PsiClass ? Shape::StrictlyConcave : Shape::StrictlyConvex;
    return ScalarGauge{name_, fn_, s, false};
}

std::size_t SurfaceGauge::count_class_violations(double lo, double hi, std::size_t samples) const
{
    std::vector<double> t(samples), f(samples);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < samples; ++i) {
        t[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1));
        f[i] = fn_(t[i]);
    }
    constexpr double tiny = 1e-300;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        // a decreasing gauge may underflow to zero at the far end
        if (f[i] == 0.0 && cls_ == SurfaceClass::PhiClass) continue;
        if (!std::isfinite(f[i]) || f[i] <= 0.0) {
            ++bad;
            continue;
        }
        if (i + 1 < samples && std::max(f[i], f[i + 1]) > tiny) {
            if (cls_ == SurfaceClass::PhiClass && !(f[i + 1] < f[i])) ++bad;
            if (cls_ == SurfaceClass::PsiClass && !(f[i + 1] > f[i])) ++bad;
        }
        if (i > 0 && i + 1 < samples) {
            const double chord = (f[i - 1] * (t[i + 1] - t[i]) + f[i + 1] * (t[i] - t[i - 1])) / (t[i + 1] - t[i - 1]);
            const double slack = 1e-13 * std::max(std::abs(chord), std::abs(f[i]));
            if (std::max(chord, f[i]) <= tiny) continue;
            if (cls_ == SurfaceClass::PsiClass) {
                if (!(f[i] > chord - slack)) ++bad;
            } else if (!(f[i] < chord + slack)) {
                ++bad;
            }
        }
    }
    return bad;
}

// ---------------------------------------------------------------------------
// constructors and transforms

Shape power_sum_shape(double q)
{
    if (q == 1.0) return Shape::Affine;
    if (q > 1.0 || q < 0.0) return Shape::StrictlyConvex;
    return Shape::StrictlyConcave;
}

MonotoneCompositor make_power_sum(double exponent, std::size_t m)
{
    require(exponent != 0.0 && std::isfinite(exponent), ErrorKind::InvalidParameter,
            "power sum exponent must be finite and nonzero");
    require(m >= 1, ErrorKind::InvalidParameter, "power sum arity must be >= 1");
    const auto cls = exponent > 0.0 ? CompositorClass::PhiM : CompositorClass::PsiM;
    std::ostringstream name;
    name << "power_sum(p=" << exponent << ",m=" << m << ")";
    MonotoneCompositor::Fn fn;
    if (exponent == 1.0) {
        fn = [](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += v;
            return s;
        };
    } else if (exponent == 2.0) {
        fn = [](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s;
        };
    } else {
        fn = [exponent](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += std::pow(v, exponent);
            return s;
        };
    }
    return MonotoneCompositor(name.str(), m, cls, std::move(fn), power_sum_shape(exponent))
        .with_power_exponent(exponent);
}

namespace {

Shape combine_shapes(Shape a, Shape b)
{
    if (a == b) return a;
    auto convexish = [](Shape s) { return s == Shape::StrictlyConvex || s == Shape::Affine; };
    auto concaveish = [](Shape s) { return s == Shape::StrictlyConcave || s == Shape::Affine; };
    // Convex in each coordinate (strictly in at least one).
    if (convexish(a) && convexish(b)) return Shape::StrictlyConvex;
    if (concaveish(a) && concaveish(b)) return Shape::StrictlyConcave;
    if (a == Shape::Unknown || b == Shape::Unknown) return Shape::Unknown;
    return Shape::Neither;
}

}  // namespace

MonotoneCompositor make_linear_combo(const UnivariateGauge& phi1, const UnivariateGauge& phi2, double alpha1,
                                     double alpha2)
{
    require(phi1.cls() == phi2.cls(), ErrorKind::InvalidParameter,
            "linear combination needs both gauges in Phi_1 or both in Psi_1");
    require(alpha1 > 0.0 && alpha2 > 0.0 && std::isfinite(alpha1) && std::isfinite(alpha2),
            ErrorKind::InvalidParameter, "linear combination weights must be positive");
    std::ostringstream name;
    name << alpha1 << "*" << phi1.name() << "(x1)+" << alpha2 << "*" << phi2.name() << "(x2)";
    auto fn = [phi1, phi2, alpha1, alpha2](std::span<const double> x) {
        return alpha1 * phi1(x[0]) + alpha2 * phi2(x[1]);
    };
    return MonotoneCompositor(name.str(), 2, phi1.cls(), std::move(fn), combine_shapes(phi1.shape(), phi2.shape()));
}

namespace {

MonotoneCompositor root_transform(const MonotoneCompositor& phi, double s, const std::string& label)
{
    const double inv = 1.0 / s;
    const std::size_t m = phi.arity();
    auto fn = [phi, inv, m](std::span<const double> z) {
        double buf[16];
        std::vector<double> heap;
        double* y = buf;
        if (m > 16) {
            heap.resize(m);
            y = heap.data();
        }
        for (std::size_t j = 0; j < m; ++j) y[j] = inv == 1.0 ? z[j] : std::pow(z[j], inv);
        return phi(std::span<const double>(y, m));
    };
    CompositorClass cls = phi.cls();
    if (s < 0.0) cls = cls == CompositorClass::PhiM ? CompositorClass::PsiM : CompositorClass::PhiM;
    Shape shape = Shape::Unknown;
    std::optional<double> q;
    if (phi.power_exponent()) {
        q = *phi.power_exponent() / s;
        shape = power_sum_shape(*q);
    } else if (s == 1.0) {
        shape = phi.shape();
    }
    MonotoneCompositor out(label + "[" + phi.name() + "]", m, cls, std::move(fn), shape);
    if (q) out = out.with_power_exponent(*q);
    return out;
}

}  // namespace

MonotoneCompositor transform_phi0(const MonotoneCompositor& phi, int n)
{
    require(n >= 1, ErrorKind::InvalidParameter, "phi0 transform needs n >= 1");
    std::ostringstream label;
    label << "phi0(n=" << n << ")";
    return root_transform(phi, static_cast<double>(n), label.str());
}

MonotoneCompositor transform_phis(const MonotoneCompositor& phi, double s)
{
    require(s != 0.0 && std::isfinite(s), ErrorKind::InvalidParameter, "phi_s transform needs s != 0");
    std::ostringstream label;
    label << "phi_s(s=" << s << ")";
    return root_transform(phi, s, label.str());
}

double tau0(const MonotoneCompositor& phi)
{
    const std::size_t m = phi.arity();
    std::vector<double> buf(m);
    auto g = [&](double t) {
        std::fill(buf.begin(), buf.end(), t);
        return phi(buf) - 1.0;
    };
    const bool increasing = phi.cls() == CompositorClass::PhiM;
    double lo = 1.0, hi = 1.0;
    double g1 = g(1.0);
    if (!std::isfinite(g1)) fail(ErrorKind::NoSolution, phi.name() + ": non-finite value at (1,...,1)");
    // grow the side on which the root lies
    const bool root_above = increasing ? g1 < 0.0 : g1 > 0.0;
    if (g1 != 0.0) {
        for (;;) {
            if (root_above) {
                hi *= 2.0;
                if (hi > 1e300) fail(ErrorKind::NoSolution, phi.name() + ": tau0 bracket exceeds 1e300");
                const double gv = g(hi);
                if (increasing ? gv >= 0.0 : gv <= 0.0) break;
                lo = hi;
            } else {
                lo *= 0.5;
                if (lo < 1e-300) fail(ErrorKind::NoSolution, phi.name() + ": tau0 bracket underflows");
                const double gv = g(lo);
                if (increasing ? gv <= 0.0 : gv >= 0.0) break;
                hi = lo;
            }
        }
    }
    if (lo == hi) return lo;
    const RootResult r = bisect(g, lo, hi);
    if (std::abs(r.residual) > 1e-12) fail(ErrorKind::NumericalFailure, phi.name() + ": tau0 residual too large", r.residual);
    return r.x;
}

// ---------------------------------------------------------------------------
// classify_numeric

ClassReport classify_numeric(const MonotoneCompositor& phi, const ClassifyOptions& opts)
{
    require(opts.samples >= 100, ErrorKind::InvalidParameter, "classify_numeric needs samples >= 100");
    require(opts.lo > 0.0 && opts.hi > opts.lo, ErrorKind::InvalidParameter, "classify_numeric needs 0 < lo < hi");
    const std::size_t m = phi.arity();
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double la = std::log(opts.lo), lb = std::log(opts.hi);
    auto draw = [&](std::vector<double>& x) {
        for (auto& v : x) v = std::exp(la + (lb - la) * unit(rng));
    };

    ClassReport rep;
    const bool increasing = phi.cls() == CompositorClass::PhiM;
    std::vector<double> x(m), y(m), mid(m);
    std::size_t ups = 0, downs = 0;
    for (std::size_t k = 0; k < opts.samples; ++k) {
        draw(x);
        y = x;
        const std::size_t j = static_cast<std::size_t>(unit(rng) * static_cast<double>(m)) % m;
        y[j] = std::min(x[j] * (1.0 + 0.01 + unit(rng)), opts.hi);
        if (!(y[j] > x[j])) continue;
        const double fx = phi(x), fy = phi(y);
        ++rep.monotone_tests;
        if (!std::isfinite(fx) || !std::isfinite(fy)) {
            ++rep.nonfinite;
            continue;
        }
        if (fy > fx) ++ups;
        if (fy < fx) ++downs;
        if (increasing ? !(fy > fx) : !(fy < fx)) ++rep.monotone_violations;
    }
    if (downs == 0 && ups > 0) rep.direction = Monotonicity::Increasing;
    else if (ups == 0 && downs > 0) rep.direction = Monotonicity::Decreasing;

    for (std::size_t k = 0; k < opts.samples; ++k) {
        draw(x);
        draw(y);
        for (std::size_t j = 0; j < m; ++j) mid[j] = 0.5 * (x[j] + y[j]);
        const double fm = phi(mid), avg = 0.5 * (phi(x) + phi(y));
        if (!std::isfinite(fm) || !std::isfinite(avg)) {
            ++rep.nonfinite;
            continue;
        }
        ++rep.convexity_tests;
        const double slack = 1e-12 * std::max(std::abs(avg), std::abs(fm));
        if (fm > avg + slack) ++rep.convex_violations;
        if (fm < avg - slack) ++rep.concave_violations;
    }
    if (rep.convex_violations == 0 && rep.concave_violations == 0) rep.estimated_shape = Shape::Affine;
    else if (rep.convex_violations == 0) rep.estimated_shape = Shape::StrictlyConvex;
    else if (rep.concave_violations == 0) rep.estimated_shape = Shape::StrictlyConcave;
    else rep.estimated_shape = Shape::Neither;

    // Ray limits on a handful of directions.
    if (increasing) {
        std::vector<double> o(m, 0.0);
        if (phi(o) != 0.0) ++rep.limit_violations;
    }
    const std::size_t rays = std::min<std::size_t>(opts.samples / 10, 50);
    for (std::size_t k = 0; k < rays; ++k) {
        draw(x);
        auto at = [&](double t) {
            for (std::size_t j = 0; j < m; ++j) y[j] = t * x[j];
            return phi(y);
        };
        const double f1 = at(1.0), fsmall = at(1e-12), fbig = at(1e12);
        const bool ok = increasing ? (fsmall < 1e-2 * f1 && fbig > 10.0 * f1)
                                   : (fsmall > 10.0 * f1 && fbig < 1e-2 * f1);
        if (!ok) ++rep.limit_violations;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// catalog

namespace gauges {

UnivariateGauge identity()
{
    return UnivariateGauge("id", CompositorClass::PhiM, [](double t) { return t; }, Shape::Affine)
        .with_derivatives(1.0, 1.0)
        .with_deviation([](double u) { return u; });
}

UnivariateGauge power(double alpha)
{
    require(alpha != 0.0 && std::isfinite(alpha), ErrorKind::InvalidParameter, "power gauge needs alpha != 0");
    if (alpha == 1.0) return identity();
    std::ostringstream name;
    name << "t^" << alpha;
    const auto cls = alpha > 0.0 ? CompositorClass::PhiM : CompositorClass::PsiM;
    UnivariateGauge::Fn fn;
    if (alpha == 2.0) fn = [](double t) { return t * t; };
    else if (alpha == -1.0) fn = [](double t) { return 1.0 / t; };
    else if (alpha == 0.5) fn = [](double t) { return std::sqrt(t); };
    else fn = [alpha](double t) { return std::pow(t, alpha); };
    return UnivariateGauge(name.str(), cls, std::move(fn), power_sum_shape(alpha))
        .with_derivatives(alpha, alpha)
        .with_deviation([alpha](double u) { return std::expm1(alpha * std::log1p(u)); });
}

UnivariateGauge square_root() { return power(0.5); }
UnivariateGauge square() { return power(2.0); }
UnivariateGauge inverse() { return power(-1.0); }

ScalarGauge kl()
{
    return ScalarGauge{"t*ln(t)", [](double t) { return t == 0.0 ? 0.0 : t * std::log(t); }, Shape::StrictlyConvex,
                       true};
}

ScalarGauge chi_square()
{
    return ScalarGauge{"(t-1)^2", [](double t) { return (t - 1.0) * (t - 1.0); }, Shape::StrictlyConvex, true};
}

ScalarGauge total_variation()
{
    // convex, not strictly
    return ScalarGauge{"|t-1|/2", [](double t) { return 0.5 * std::abs(t - 1.0); }, Shape::Neither, true};
}

ScalarGauge hellinger()
{
    return ScalarGauge{"(sqrt(t)-1)^2", [](double t) {
                           const double r = std::sqrt(t) - 1.0;
                           return r * r;
                       },
                       Shape::StrictlyConvex, true};
}

ScalarGauge renyi(double alpha)
{
    require(alpha != 0.0 && alpha != 1.0, ErrorKind::InvalidParameter, "renyi gauge needs alpha not in {0,1}");
    std::ostringstream name;
    name << "t^" << alpha;
    return ScalarGauge{name.str(), [alpha](double t) { return std::pow(t, alpha); }, power_sum_shape(alpha),
                       alpha > 0.0};
}

SurfaceGauge exp_neg()
{
    return SurfaceGauge("exp(-t)", SurfaceClass::PhiClass, [](double t) { return std::exp(-t); });
}

SurfaceGauge surface_inverse()
{
    return SurfaceGauge("1/t", SurfaceClass::PhiClass, [](double t) { return 1.0 / t; });
}

SurfaceGauge surface_power(double alpha)
{
    require(alpha != 0.0 && alpha != 1.0 && std::isfinite(alpha), ErrorKind::InvalidParameter,
            "surface power gauge needs alpha not in {0,1}");
    std::ostringstream name;
    name << "t^" << alpha;
    const SurfaceClass cls = alpha < 0.0   ? SurfaceClass::PhiClass
                             : alpha < 1.0 ? SurfaceClass::PsiClass
                                           : SurfaceClass::StrictlyConvexOnly;
    return SurfaceGauge(name.str(), cls, [alpha](double t) { return std::pow(t, alpha); });
}

SurfaceGauge surface_sqrt()
{
    return SurfaceGauge("sqrt(t)", SurfaceClass::PsiClass, [](double t) { return std::sqrt(t); });
}

SurfaceGauge t_over_one_plus_t()
{
    return SurfaceGauge("t/(1+t)", SurfaceClass::PsiClass, [](double t) { return t / (1.0 + t); });
}

SurfaceGauge log_one_plus()
{
    return SurfaceGauge("ln(1+t)", SurfaceClass::PsiClass, [](double t) { return std::log1p(t); });
}

SurfaceGauge constant(double alpha)
{
    require(alpha > 0.0, ErrorKind::InvalidParameter, "constant gauge needs alpha > 0");
    std::ostringstream name;
    name << "const(" << alpha << ")";
    return SurfaceGauge(name.str(), SurfaceClass::PhiClass, [alpha](double) { return alpha; });
}

}  // namespace gauges

}  // namespace orlicz
