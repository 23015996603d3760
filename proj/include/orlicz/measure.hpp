#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace orlicz {

struct AbstractSet {};
struct EuclideanBox {
    int n = 1;
    double half_width = 1.0;
};
struct Sphere {
    int n = 2;
};
using DomainTag = std::variant<AbstractSet, EuclideanBox, Sphere>;

std::string describe(const DomainTag& tag);

/// Finite quadrature representation of (Omega, mu): support points with
/// strictly positive mu-weights.
class MeasureSpace {
public:
    /// coords holds size()*dim values, row-major; dim may be 0 for
    /// abstract label sets.
    MeasureSpace(std::size_t dim, std::vector<double> coords, std::vector<double> weights,
                 DomainTag tag = AbstractSet{});

    /// Abstract n-point set with the given weights.
    static std::shared_ptr<const MeasureSpace> abstract(std::vector<double> weights);
    /// n-point midpoint rule on [a, b] (coordinates are the midpoints).
    static std::shared_ptr<const MeasureSpace> interval(double a, double b, std::size_t n);

    std::size_t size() const noexcept { return weights_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const double> coords() const noexcept { return coords_; }
    std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
    const DomainTag& tag() const noexcept { return tag_; }
    double total_weight() const;

    /// Same points and weights (bitwise).
    bool same_as(const MeasureSpace& other) const;

private:
    std::size_t dim_;
    std::vector<double> coords_;
    std::vector<double> weights_;
    DomainTag tag_;
};

using SpacePtr = std::shared_ptr<const MeasureSpace>;

enum class Positivity { Nonnegative, StrictlyPositive };

/// Density values aligned with a MeasureSpace. A measure is exactly this
/// pair, so DensityField doubles as the measure type.
class DensityField {
public:
    DensityField(SpacePtr space, std::vector<double> values);

    /// Constant field.
    static DensityField constant(SpacePtr space, double value);

    const SpacePtr& space() const noexcept { return space_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }
    Positivity positivity() const noexcept { return positivity_; }
    bool strictly_positive() const noexcept { return positivity_ == Positivity::StrictlyPositive; }

    /// Sum of value * weight (pairwise order).
    double mass() const;
    DensityField scaled(double r) const;
    DensityField shifted(double eps) const;

private:
    SpacePtr space_;
    std::vector<double> values_;
    Positivity positivity_;
};

using Measure = DensityField;

/// Index subset A of the support.
class SubsetMask {
public:
    explicit SubsetMask(std::vector<std::size_t> indices);
    static SubsetMask all(std::size_t n);

    std::span<const std::size_t> indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    /// mu(A) on the given space.
    double measure(const MeasureSpace& space) const;
    void check_against(const MeasureSpace& space) const;

private:
    std::vector<std::size_t> indices_;
};

/// Throws invalid-parameter unless every field lives on the same space.
void require_common_space(std::span<const DensityField> fields);

/// Integral of a field over A.
double integrate(const DensityField& f, const SubsetMask& a);

}  // namespace orlicz
