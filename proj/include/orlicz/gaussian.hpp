#pragma once

#include "orlicz/euclidean.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>

namespace orlicz {

enum class GaussianFamily { Scaled, Diagonal, Full };

const char* to_string(GaussianFamily f);
GaussianFamily parse_gaussian_family(const std::string& name);

/// q(x) = exp(-|C x|^2 / 2) with an invertible C.
class GaussianFamilyPoint {
public:
    GaussianFamilyPoint(Eigen::MatrixXd c, GaussianFamily family);

    /// C = c I (the dilate gamma_n o c).
    static GaussianFamilyPoint scaled(int n, double c);
    static GaussianFamilyPoint diagonal(const Eigen::VectorXd& d);
    static GaussianFamilyPoint full(const Eigen::MatrixXd& c);

    int dim() const noexcept { return static_cast<int>(c_.rows()); }
    const Eigen::MatrixXd& matrix() const noexcept { return c_; }
    GaussianFamily family() const noexcept { return family_; }
    double det() const noexcept { return det_; }
    double abs_det() const noexcept { return std::abs(det_); }

    double log_eval(std::span<const double> x) const;
    double operator()(std::span<const double> x) const;

    /// (2 pi)^{n/2} / |det C|.
    double mass() const;
    /// q° has matrix C^{-T}.
    GaussianFamilyPoint polar() const;
    /// mu(q°) / mu(gamma_n) = |det C|.
    double polar_prefactor() const { return abs_det(); }
    /// Parameter transport q o T: C -> C T.
    GaussianFamilyPoint transport(const Eigen::MatrixXd& t) const;

    EuclideanField to_field(double half_width, std::size_t resolution) const;
    std::string describe() const;

private:
    Eigen::MatrixXd c_;
    GaussianFamily family_;
    double det_;
};

/// mu(gamma_n) = (2 pi)^{n/2}.
double gaussian_mass(int n);

}  // namespace orlicz
