#pragma once

#include "orlicz/measure.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace orlicz {

/// Strictly positive density on the box [-R, R]^n (n in {1, 2}) sampled on
/// a tensor grid with `resolution` nodes per axis, endpoints included.
/// Values are row-major: index i * N + j holds p(x_i, x_j).
class EuclideanField {
public:
    EuclideanField(int n, double half_width, std::size_t resolution, std::vector<double> values);

    static EuclideanField from_function(int n, double half_width, std::size_t resolution,
                                        const std::function<double(std::span<const double>)>& p);

    int dim() const noexcept { return n_; }
    double half_width() const noexcept { return r_; }
    std::size_t resolution() const noexcept { return res_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double spacing() const;

    std::vector<double> axis() const;
    /// All node coordinates, row-major with dim() entries per node.
    std::vector<double> coords() const;
    /// Tensor trapezoid weights.
    std::vector<double> weights() const;
    double max_value() const;
    /// Largest boundary value over the largest value.
    double tail_ratio() const;
    /// The field as a density over its trapezoid measure space.
    DensityField as_measure() const;

private:
    int n_;
    double r_;
    std::size_t res_;
    std::vector<double> values_;
};

/// Trapezoid quadrature of the field over its box.
double mass(const EuclideanField& p);

/// Discrete: exact supremum over grid nodes (brute force). Refined:
/// parabolic correction around the discrete maximiser along each axis,
/// exact for quadratic -log p.
enum class LegendreMode { Discrete, Refined };

/// p°(y) = exp(-(-log p)*(y)) on the same box.
EuclideanField polar_dual(const EuclideanField& p, LegendreMode mode = LegendreMode::Discrete);
/// p° on the box [-out_half_width, out_half_width]^n with out_resolution nodes per axis.
EuclideanField polar_dual(const EuclideanField& p, LegendreMode mode, double out_half_width,
                          std::size_t out_resolution);

/// Serial reference of polar_dual (same arithmetic, no threads).
EuclideanField polar_dual_serial(const EuclideanField& p, LegendreMode mode, double out_half_width,
                                 std::size_t out_resolution);

struct ClassDReport {
    bool in_class = false;
    double mass = 0.0;         ///< mu(p)
    double polar_mass = 0.0;   ///< mu(p°)
    double product = 0.0;
    double bound = 0.0;        ///< (2 pi)^n
    double margin = 0.0;       ///< bound - product
    double polar_half_width = 0.0;
    bool truncated = false;    ///< the polar box could not hold p° within the tail tolerance
    std::vector<double> barycenter;
    bool off_center = false;
};

/// Blaschke-Santalo product test mu(p) mu(p°) <= (2 pi)^n, accepting a
/// relative excess up to `tolerance`. p° is computed in refined mode on a
/// box enlarged until its boundary values fall below 1e-12 of the maximum.
ClassDReport in_class_D(const EuclideanField& p, double tolerance = 1e-6);

struct LinearMapResult {
    EuclideanField field;
    double mass_change = 0.0;   ///< |mu(p o T) - mu(p)| / mu(p)
    bool truncated = false;     ///< some T x left the box where p is not negligible
};

/// (p o T)(x) = p(T x) with |det T| = 1, by separable 6-point Lagrange
/// interpolation of log p.
LinearMapResult apply_linear_map(const EuclideanField& p, const Eigen::MatrixXd& t);

}  // namespace orlicz
