#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

namespace orlicz {

/// Increasing compositors vanish at the origin and blow up along rays
/// (PhiM); decreasing ones blow up towards the origin and vanish at
/// infinity (PsiM).
enum class CompositorClass { PhiM, PsiM };

/// Declared curvature. Affine covers the linear members (p = 1 power
/// sums), which are simultaneously convex and concave.
enum class Shape { StrictlyConvex, StrictlyConcave, Affine, Neither, Unknown };

const char* to_string(CompositorClass c);
const char* to_string(Shape s);

/// An m-variate compositor phi with declared metadata. Evaluation is pure;
/// instances are immutable and safe to share across threads.
class MonotoneCompositor {
public:
    using Fn = std::function<double(std::span<const double>)>;

    MonotoneCompositor(std::string name, std::size_t arity, CompositorClass cls, Fn fn,
                       Shape shape = Shape::Unknown);

    const std::string& name() const noexcept { return name_; }
    std::size_t arity() const noexcept { return arity_; }
    CompositorClass cls() const noexcept { return cls_; }
    Shape shape() const noexcept { return shape_; }
    /// phi(e_j) == 1 for all basis vectors (always false for PsiM).
    bool normalized_at_basis() const noexcept { return normalized_; }
    /// Set for power sums; lets transforms derive class and shape.
    std::optional<double> power_exponent() const noexcept { return power_; }

    double operator()(std::span<const double> x) const { return fn_(x); }

    /// True when x lies in [0,inf)^m (PhiM) or (0,inf)^m (PsiM).
    bool in_domain(std::span<const double> x) const;

    /// Evaluates after checking the domain and finiteness of the result.
    double eval_checked(std::span<const double> x) const;

    MonotoneCompositor with_shape(Shape s) const;
    MonotoneCompositor with_power_exponent(double p) const;

private:
    std::string name_;
    std::size_t arity_;
    CompositorClass cls_;
    Fn fn_;
    Shape shape_;
    bool normalized_ = false;
    std::optional<double> power_;
};

/// A scalar function together with its curvature, as used by divergences
/// and Jensen-type bounds.
struct ScalarGauge {
    std::string name;
    std::function<double(double)> fn;
    Shape shape = Shape::Unknown;
    /// Whether fn may be evaluated at 0 (e.g. t ln t extends by 0).
    bool defined_at_zero = false;

    double operator()(double t) const { return fn(t); }
};

/// Univariate members of Phi_1 / Psi_1 with one-sided derivatives at 1.
class UnivariateGauge {
public:
    using Fn = std::function<double(double)>;

    UnivariateGauge(std::string name, CompositorClass cls, Fn fn, Shape shape = Shape::Unknown);

    const std::string& name() const noexcept { return name_; }
    CompositorClass cls() const noexcept { return cls_; }
    Shape shape() const noexcept { return shape_; }

    double operator()(double t) const { return fn_(t); }
    double value_at_one() const { return fn_(1.0); }
    /// Membership in Phi_1^(1) / Psi_1^(1): phi(1) == 1 exactly.
    bool unit_at_one() const { return value_at_one() == 1.0; }

    /// phi(1 + u) - 1, evaluated without cancellation when an accurate
    /// form was supplied.
    double deviation_from_one(double u) const;

    /// Declared value if present, else a one-sided difference with step 1e-6.
    double left_derivative_at_one() const;
    double right_derivative_at_one() const;
    std::optional<double> declared_left_derivative() const noexcept { return left_; }
    std::optional<double> declared_right_derivative() const noexcept { return right_; }

    UnivariateGauge with_derivatives(std::optional<double> left, std::optional<double> right) const;
    UnivariateGauge with_deviation(Fn minus_one) const;
    UnivariateGauge with_shape(Shape s) const;

    MonotoneCompositor compositor() const;
    ScalarGauge scalar() const;

private:
    std::string name_;
    CompositorClass cls_;
    Fn fn_;
    Shape shape_;
    Fn minus_one_;
    std::optional<double> left_;
    std::optional<double> right_;
};

/// Gauges for the affine-surface-area functionals: PhiClass is decreasing
/// and strictly convex, PsiClass increasing and strictly concave.
enum class SurfaceClass { PhiClass, PsiClass, StrictlyConvexOnly };

const char* to_string(SurfaceClass c);

class SurfaceGauge {
public:
    using Fn = std::function<double(double)>;

    SurfaceGauge(std::string name, SurfaceClass cls, Fn fn);

    const std::string& name() const noexcept { return name_; }
    SurfaceClass cls() const noexcept { return cls_; }
    double operator()(double t) const { return fn_(t); }
    /// Infimum problems for PhiClass and StrictlyConvexOnly, supremum for PsiClass.
    bool minimizes() const noexcept { return cls_ != SurfaceClass::PsiClass; }
    ScalarGauge scalar() const;

    /// Samples a log grid on [lo, hi] and counts violations of the class
    /// monotonicity / strict convexity (concavity) by finite differences.
    std::size_t count_class_violations(double lo = 1e-3, double hi = 1e3, std::size_t samples = 2001) const;

private:
    std::string name_;
    SurfaceClass cls_;
    Fn fn_;
};

/// phi(x) = sum_j x_j^p: PhiM for p > 0, PsiM for p < 0.
MonotoneCompositor make_power_sum(double exponent, std::size_t m);

/// phi(x1, x2) = alpha1 * phi1(x1) + alpha2 * phi2(x2).
MonotoneCompositor make_linear_combo(const UnivariateGauge& phi1, const UnivariateGauge& phi2,
                                     double alpha1, double alpha2);

/// z -> phi(z_1^(1/n), ..., z_m^(1/n)).
MonotoneCompositor transform_phi0(const MonotoneCompositor& phi, int n);

/// z -> phi(z_1^(1/s), ..., z_m^(1/s)); the class flips for s < 0.
MonotoneCompositor transform_phis(const MonotoneCompositor& phi, double s);

/// Shape of sum_j z_j^q (q != 0).
Shape power_sum_shape(double q);

/// tau0 > 0 with phi(tau0, ..., tau0) = 1 (relative residual <= 1e-12).
double tau0(const MonotoneCompositor& phi);

struct ClassifyOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    double lo = 1e-3;  ///< sampling box for coordinates
    double hi = 1e3;
};

enum class Monotonicity { Increasing, Decreasing, None };

struct ClassReport {
    Monotonicity direction = Monotonicity::None;
    std::size_t monotone_tests = 0;
    std::size_t monotone_violations = 0;  ///< against the declared class
    std::size_t convexity_tests = 0;
    std::size_t convex_violations = 0;    ///< midpoint tests that fail convexity
    std::size_t concave_violations = 0;   ///< midpoint tests that fail concavity
    Shape estimated_shape = Shape::Unknown;
    std::size_t limit_violations = 0;     ///< ray-limit spot checks that failed
    std::size_t nonfinite = 0;

    std::size_t total_violations() const { return monotone_violations + limit_violations + nonfinite; }
};

/// Numerical guard for user-supplied compositors against the class axioms.
ClassReport classify_numeric(const MonotoneCompositor& phi, const ClassifyOptions& opts = {});

namespace gauges {

UnivariateGauge identity();
/// t^alpha: Phi_1 for alpha > 0, Psi_1 for alpha < 0.
UnivariateGauge power(double alpha);
UnivariateGauge square_root();
UnivariateGauge square();
UnivariateGauge inverse();

ScalarGauge kl();               ///< t ln t
ScalarGauge chi_square();       ///< (t - 1)^2
ScalarGauge total_variation();  ///< |t - 1| / 2
ScalarGauge hellinger();        ///< (sqrt t - 1)^2
ScalarGauge renyi(double alpha); ///< t^alpha

SurfaceGauge exp_neg();                 ///< e^{-t}
SurfaceGauge surface_inverse();         ///< 1/t
SurfaceGauge surface_power(double alpha);
SurfaceGauge surface_sqrt();            ///< sqrt t
SurfaceGauge t_over_one_plus_t();       ///< t / (1 + t)
SurfaceGauge log_one_plus();            ///< ln(1 + t)
SurfaceGauge constant(double alpha);    ///< degenerate member: phi == alpha

}  // namespace gauges

}  // namespace orlicz
