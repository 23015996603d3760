#include "orlicz/measure.hpp"

#include "orlicz/error.hpp"
#include "orlicz/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orlicz {

std::string describe(const DomainTag& tag)
{
    std::ostringstream os;
    if (std::holds_alternative<AbstractSet>(tag)) {
        os << "abstract";
    } else if (const auto* box = std::get_if<EuclideanBox>(&tag)) {
        os << "box(n=" << box->n << ",R=" << box->half_width << ")";
    } else {
        os << "sphere(n=" << std::get<Sphere>(tag).n << ")";
    }
    return os.str();
}

MeasureSpace::MeasureSpace(std::size_t dim, std::vector<double> coords, std::vector<double> weights, DomainTag tag)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)), tag_(tag)
{
    require(!weights_.empty(), ErrorKind::InvalidParameter, "measure space needs at least one point");
    require(coords_.size() == dim_ * weights_.size(), ErrorKind::InvalidParameter,
            "measure space coordinates do not match the number of weights");
    for (double w : weights_)
        require(w > 0.0 && std::isfinite(w), ErrorKind::InvalidParameter, "measure weights must be positive and finite");
}

std::shared_ptr<const MeasureSpace> MeasureSpace::abstract(std::vector<double> weights)
{
    return std::make_shared<const MeasureSpace>(0, std::vector<double>{}, std::move(weights), AbstractSet{});
}

std::shared_ptr<const MeasureSpace> MeasureSpace::interval(double a, double b, std::size_t n)
{
    require(n >= 1 && b > a, ErrorKind::InvalidParameter, "interval needs n >= 1 and a < b");
    const double h = (b - a) / static_cast<double>(n);
    std::vector<double> x(n), w(n, h);
    for (std::size_t i = 0; i < n; ++i) x[i] = a + h * (static_cast<double>(i) + 0.5);
    return std::make_shared<const MeasureSpace>(1, std::move(x), std::move(w), AbstractSet{});
}

double MeasureSpace::total_weight() const
{
    return pairwise_sum(weights_);
}

bool MeasureSpace::same_as(const MeasureSpace& other) const
{
    return this == &other || (dim_ == other.dim_ && weights_ == other.weights_ && coords_ == other.coords_);
}

// ---------------------------------------------------------------------------

DensityField::DensityField(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)), positivity_(Positivity::StrictlyPositive)
{
    require(space_ != nullptr, ErrorKind::InvalidParameter, "density field needs a measure space");
    require(values_.size() == space_->size(), ErrorKind::InvalidParameter,
            "density field length does not match its measure space");
    for (double v : values_) {
        require(std::isfinite(v) && v >= 0.0, ErrorKind::DomainViolation, "density values must be finite and >= 0");
        if (v == 0.0) positivity_ = Positivity::Nonnegative;
    }
    require(std::isfinite(mass()), ErrorKind::DomainViolation, "density field has infinite mass");
}

DensityField DensityField::constant(SpacePtr space, double value)
{
    const std::size_t n = space->size();
    return DensityField(std::move(space), std::vector<double>(n, value));
}

double DensityField::mass() const
{
    std::vector<double> terms(values_.size());
    const auto w = space_->weights();
    for (std::size_t i = 0; i < values_.size(); ++i) terms[i] = values_[i] * w[i];
    return pairwise_sum(terms);
}

DensityField DensityField::scaled(double r) const
{
    std::vector<double> v(values_);
    for (auto& x : v) x *= r;
    return DensityField(space_, std::move(v));
}

DensityField DensityField::shifted(double eps) const
{
    std::vector<double> v(values_);
    for (auto& x : v) x += eps;
    return DensityField(space_, std::move(v));
}

// ---------------------------------------------------------------------------

SubsetMask::SubsetMask(std::vector<std::size_t> indices) : indices_(std::move(indices))
{
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

SubsetMask SubsetMask::all(std::size_t n)
{
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return SubsetMask(std::move(idx));
}

void SubsetMask::check_against(const MeasureSpace& space) const
{
    require(!indices_.empty(), ErrorKind::InvalidParameter, "subset must be nonempty");
    require(indices_.back() < space.size(), ErrorKind::InvalidParameter, "subset index out of range");
}

double SubsetMask::measure(const MeasureSpace& space) const
{
    check_against(space);
    std::vector<double> w(indices_.size());
    const auto weights = space.weights();
    for (std::size_t k = 0; k < indices_.size(); ++k) w[k] = weights[indices_[k]];
    return pairwise_sum(w);
}

void require_common_space(std::span<const DensityField> fields)
{
    require(!fields.empty(), ErrorKind::InvalidParameter, "at least one field is required");
    for (const auto& f : fields)
        require(f.space()->same_as(*fields[0].space()), ErrorKind::InvalidParameter,
                "fields live on different measure spaces");
}

double integrate(const DensityField& f, const SubsetMask& a)
{
    a.check_against(*f.space());
    const auto w = f.space()->weights();
    std::vector<double> terms(a.size());
    std::size_t k = 0;
    for (std::size_t i : a.indices()) terms[k++] = f[i] * w[i];
    return pairwise_sum(terms);
}

}  // namespace orlicz
