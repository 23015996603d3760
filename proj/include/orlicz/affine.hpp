#pragma once

#include "orlicz/euclidean.hpp"
#include "orlicz/gaussian.hpp"
#include "orlicz/optimize.hpp"
#include "orlicz/phi.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace orlicz {

/// (sqrt(2 pi) / c)^n phi(c^n).
double gaussian_closed_form(const SurfaceGauge& phi, double c, int n);

/// The measure P of the surface-area problems: a positive grid field, or
/// a parametric Gaussian integrated in whitened coordinates.
class SurfaceTarget {
public:
    static SurfaceTarget grid(EuclideanField p);
    /// quad_nodes trapezoid nodes per axis on [-quad_half_width, quad_half_width]^n.
    static SurfaceTarget gaussian(GaussianFamilyPoint g, std::size_t quad_nodes = 81, double quad_half_width = 10.0);

    int dim() const;
    bool parametric() const { return std::holds_alternative<GaussianFamilyPoint>(source_); }
    const EuclideanField* field() const { return std::get_if<EuclideanField>(&source_); }
    const GaussianFamilyPoint* gaussian_target() const { return std::get_if<GaussianFamilyPoint>(&source_); }

    double mass() const;
    /// Second-moment matrix int x x^T p / mu(p).
    Eigen::MatrixXd second_moments() const;

    /// D_phi(a Q, P) = int phi(a q / p) p with a = mu(q°) / mu(gamma_n).
    double divergence_to(const ScalarGauge& phi, const GaussianFamilyPoint& q) const;

    /// The linear image P o T (parameter transport for parametric targets,
    /// interpolation for grids).
    SurfaceTarget transformed(const Eigen::MatrixXd& t) const;

    std::string describe() const;

private:
    explicit SurfaceTarget(std::variant<EuclideanField, GaussianFamilyPoint> src) : source_(std::move(src)) {}

    std::variant<EuclideanField, GaussianFamilyPoint> source_;
    std::size_t quad_nodes_ = 81;
    double quad_half_width_ = 10.0;
    // quadrature cache: grid nodes with log p (grid) or whitened nodes (parametric)
    std::vector<double> coords_;
    std::vector<double> weights_;
    std::vector<double> logp_;
    std::vector<double> values_;
};

struct SurfaceAreaOptions {
    GaussianFamily family = GaussianFamily::Scaled;
    int scan_points = 61;
    double scan_half_range = 3.0;  ///< in log c around the mass-matched scale
    double golden_tol = 1e-10;
    optimize::NelderMeadOptions simplex;
    bool include_target = true;    ///< P itself as a candidate when admissible
    double class_d_tolerance = 1e-6;
};

struct FamilyValue {
    GaussianFamily family;
    double value;
};

struct SurfaceAreaResult {
    double value = 0.0;
    bool minimizes = true;
    GaussianFamily family = GaussianFamily::Scaled;
    std::string argopt;                  ///< optimal candidate description
    std::optional<GaussianFamilyPoint> best;
    bool best_is_target = false;
    std::vector<FamilyValue> nested;     ///< optimum of each family up to `family`

    double lower_bound = 0.0;            ///< Jensen bound mu(p) phi(mu(gamma)/mu(p))
    std::optional<double> upper_bound;   ///< mu(p) phi(mu(p°)/mu(gamma)) when P is in D
    std::optional<double> class_d_bound; ///< phi(c1^n) c1^{-n} mu(gamma) when P is in D
    double c1 = 0.0;
    bool target_in_d = false;
    double target_margin = 0.0;          ///< (2 pi)^n - mu(p) mu(p°)
    bool target_log_concave = false;
    bool polar_truncated = false;
    bool target_off_center = false;
    int evaluations = 0;
};

/// Family-restricted dual Orlicz affine surface area: inf (sup for
/// PsiClass gauges) of D_phi(a Q, P) over Gaussian candidates.
SurfaceAreaResult affine_surface_area(const SurfaceGauge& phi, const SurfaceTarget& target,
                                      const SurfaceAreaOptions& opts = {});

/// Geominimal variant: candidates restricted to log-concave densities.
SurfaceAreaResult geominimal_surface_area(const SurfaceGauge& phi, const SurfaceTarget& target,
                                          const SurfaceAreaOptions& opts = {});

/// Bound chain of a result. PhiClass: lower <= value <= upper <= class-D
/// bound. PsiClass: upper <= value <= lower, and still upper <= class-D
/// bound. StrictlyConvexOnly: value <= upper <= class-D bound. Each link
/// may fail by at most `slack`.
bool ordering_holds(const SurfaceAreaResult& r, SurfaceClass cls, double slack);

/// Log-concavity certificate from second differences of -log p along the
/// axes (and both diagonals in 2D).
bool is_log_concave(const EuclideanField& p, double tolerance = 1e-9);

}  // namespace orlicz
