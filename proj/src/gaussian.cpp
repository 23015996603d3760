#include "orlicz/gaussian.hpp"

#include "orlicz/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace orlicz {

const char* to_string(GaussianFamily f)
{
    switch (f) {
    case GaussianFamily::Scaled: return "scaled";
    case GaussianFamily::Diagonal: return "diag";
    case GaussianFamily::Full: return "full";
    }
    return "?";
}

GaussianFamily parse_gaussian_family(const std::string& name)
{
    if (name == "scaled") return GaussianFamily::Scaled;
    if (name == "diag" || name == "diagonal") return GaussianFamily::Diagonal;
    if (name == "full") return GaussianFamily::Full;
    fail(ErrorKind::InvalidParameter, "unknown candidate family '" + name + "'");
}

GaussianFamilyPoint::GaussianFamilyPoint(Eigen::MatrixXd c, GaussianFamily family)
    : c_(std::move(c)), family_(family)
{
    require(c_.rows() == c_.cols() && c_.rows() >= 1, ErrorKind::InvalidParameter, "Gaussian matrix must be square");
    require(c_.allFinite(), ErrorKind::InvalidParameter, "Gaussian matrix must be finite");
    det_ = c_.determinant();
    require(det_ != 0.0 && std::isfinite(det_), ErrorKind::InvalidParameter, "Gaussian matrix must be invertible");
}

GaussianFamilyPoint GaussianFamilyPoint::scaled(int n, double c)
{
    require(n >= 1 && c > 0.0, ErrorKind::InvalidParameter, "scaled Gaussian needs n >= 1 and c > 0");
    return GaussianFamilyPoint(c * Eigen::MatrixXd::Identity(n, n), GaussianFamily::Scaled);
}

GaussianFamilyPoint GaussianFamilyPoint::diagonal(const Eigen::VectorXd& d)
{
    return GaussianFamilyPoint(Eigen::MatrixXd(d.asDiagonal()), GaussianFamily::Diagonal);
}

GaussianFamilyPoint GaussianFamilyPoint::full(const Eigen::MatrixXd& c)
{
    return GaussianFamilyPoint(c, GaussianFamily::Full);
}

double GaussianFamilyPoint::log_eval(std::span<const double> x) const
{
    const int n = dim();
    double s = 0.0;
    for (int a = 0; a < n; ++a) {
        double v = 0.0;
        for (int b = 0; b < n; ++b) v += c_(a, b) * x[static_cast<std::size_t>(b)];
        s += v * v;
    }
    return -0.5 * s;
}

double GaussianFamilyPoint::operator()(std::span<const double> x) const
{
    return std::exp(log_eval(x));
}

double gaussian_mass(int n)
{
    return std::pow(2.0 * std::numbers::pi, 0.5 * n);
}

double GaussianFamilyPoint::mass() const
{
    return gaussian_mass(dim()) / abs_det();
}

GaussianFamilyPoint GaussianFamilyPoint::polar() const
{
    return GaussianFamilyPoint(c_.inverse().transpose(), family_);
}

GaussianFamilyPoint GaussianFamilyPoint::transport(const Eigen::MatrixXd& t) const
{
    require(t.rows() == c_.rows() && t.cols() == c_.cols(), ErrorKind::InvalidParameter, "linear map has the wrong size");
    return GaussianFamilyPoint(c_ * t, GaussianFamily::Full);
}

EuclideanField GaussianFamilyPoint::to_field(double half_width, std::size_t resolution) const
{
    require(dim() <= 2, ErrorKind::InvalidParameter, "grid fields support n = 1 or n = 2");
    return EuclideanField::from_function(dim(), half_width, resolution,
                                         [this](std::span<const double> x) { return (*this)(x); });
}

std::string GaussianFamilyPoint::describe() const
{
    std::ostringstream os;
    os.precision(17);
    os << to_string(family_) << "[";
    for (int a = 0; a < c_.rows(); ++a) {
        if (a) os << ";";
        for (int b = 0; b < c_.cols(); ++b) os << (b ? "," : "") << c_(a, b);
    }
    os << "]";
    return os.str();
}

}  // namespace orlicz
