#include "orlicz/star.hpp"

#include "orlicz/error.hpp"
#include "orlicz/inequality.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/orlicz_add.hpp"

#include <cmath>
#include <numbers>

namespace orlicz {

SphereGrid::SphereGrid(int n, std::vector<double> nodes, std::vector<double> weights) : n_(n)
{
    require(n == 2 || n == 3, ErrorKind::InvalidParameter, "sphere grids support n = 2 or n = 3");
    space_ = std::make_shared<const MeasureSpace>(static_cast<std::size_t>(n), std::move(nodes), std::move(weights),
                                                  Sphere{n});
    for (std::size_t i = 0; i < space_->size(); ++i) {
        double r2 = 0.0;
        for (double c : space_->point(i)) r2 += c * c;
        require(std::abs(std::sqrt(r2) - 1.0) <= 1e-14, ErrorKind::InvalidParameter, "sphere nodes must be unit vectors");
    }
}

GridPtr sphere_grid(int n, std::size_t resolution)
{
    require(n == 2 || n == 3, ErrorKind::InvalidParameter, "sphere grids support n = 2 or n = 3");
    require(resolution >= 8, ErrorKind::InvalidParameter, "sphere grid resolution must be >= 8");
    constexpr double pi = std::numbers::pi;
    std::vector<double> nodes, weights;
    if (n == 2) {
        const double w = 2.0 * pi / static_cast<double>(resolution);
        for (std::size_t k = 0; k < resolution; ++k) {
            const double t = w * static_cast<double>(k);
            nodes.push_back(std::cos(t));
            nodes.push_back(std::sin(t));
            weights.push_back(w);
        }
    } else {
        std::vector<double> z, wz;
        gauss_legendre(resolution, z, wz);
        const std::size_t naz = 2 * resolution;
        const double waz = 2.0 * pi / static_cast<double>(naz);
        for (std::size_t a = 0; a < resolution; ++a) {
            const double st = std::sqrt((1.0 - z[a]) * (1.0 + z[a]));
            for (std::size_t b = 0; b < naz; ++b) {
                const double ph = waz * static_cast<double>(b);
                double x = st * std::cos(ph), y = st * std::sin(ph), c = z[a];
                const double norm = std::sqrt(x * x + y * y + c * c);
                nodes.push_back(x / norm);
                nodes.push_back(y / norm);
                nodes.push_back(c / norm);
                weights.push_back(wz[a] * waz);
            }
        }
    }
    return std::make_shared<const SphereGrid>(n, std::move(nodes), std::move(weights));
}

StarBodyGrid::StarBodyGrid(GridPtr grid, std::vector<double> radial) : grid_(std::move(grid)), radial_(std::move(radial))
{
    require(grid_ != nullptr, ErrorKind::InvalidParameter, "star body needs a sphere grid");
    require(radial_.size() == grid_->size(), ErrorKind::InvalidParameter, "radial values do not match the grid");
    for (double r : radial_)
        require(r > 0.0 && std::isfinite(r), ErrorKind::DomainViolation, "radial function must be positive and finite");
}

StarBodyGrid StarBodyGrid::from_function(GridPtr grid, const std::function<double(std::span<const double>)>& rho)
{
    std::vector<double> r(grid->size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rho(grid->node(i));
    return StarBodyGrid(std::move(grid), std::move(r));
}

StarBodyGrid StarBodyGrid::ball(GridPtr grid, double radius)
{
    const std::size_t n = grid->size();
    return StarBodyGrid(std::move(grid), std::vector<double>(n, radius));
}

DensityField StarBodyGrid::as_field() const
{
    return DensityField(grid_->space(), radial_);
}

namespace {

void require_shared_grid(std::span<const StarBodyGrid> bodies)
{
    require(!bodies.empty(), ErrorKind::InvalidParameter, "at least one star body is required");
    for (const auto& b : bodies)
        require(b.grid()->space()->same_as(*bodies[0].grid()->space()), ErrorKind::InvalidParameter,
                "star bodies live on different sphere grids");
}

std::vector<DensityField> fields_of(std::span<const StarBodyGrid> bodies)
{
    std::vector<DensityField> out;
    for (const auto& b : bodies) out.push_back(b.as_field());
    return out;
}

}  // namespace

StarBodyGrid radial_orlicz_sum(const MonotoneCompositor& phi, std::span<const StarBodyGrid> bodies)
{
    require_shared_grid(bodies);
    const DensityField s = orlicz_add_field(phi, fields_of(bodies));
    return StarBodyGrid(bodies[0].grid(), std::vector<double>(s.values().begin(), s.values().end()));
}

double bridging_residual(const MonotoneCompositor& phi, std::span<const StarBodyGrid> bodies)
{
    const StarBodyGrid sum = radial_orlicz_sum(phi, bodies);
    const int n = bodies[0].dim();
    std::vector<DensityField> powered;
    for (const auto& b : bodies) {
        std::vector<double> v(b.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(b[i], n);
        powered.emplace_back(b.grid()->space(), std::move(v));
    }
    const DensityField rhs = orlicz_add_field(transform_phi0(phi, n), powered);
    double worst = 0.0;
    for (std::size_t i = 0; i < sum.size(); ++i) worst = std::max(worst, rel_diff(std::pow(sum[i], n), rhs[i]));
    return worst;
}

double volume(const StarBodyGrid& k)
{
    const auto w = k.grid()->weights();
    const int n = k.dim();
    std::vector<double> terms(k.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = std::pow(k[i], n) * w[i];
    return pairwise_sum(terms) / n;
}

double dual_orlicz_mixed_volume(const std::function<double(double)>& phi, const StarBodyGrid& k,
                                const StarBodyGrid& l)
{
    const StarBodyGrid pair[] = {k, l};
    require_shared_grid(pair);
    const auto w = k.grid()->weights();
    const int n = k.dim();
    std::vector<double> terms(k.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = phi(l[i] / k[i]) * std::pow(k[i], n) * w[i];
    return pairwise_sum(terms) / n;
}

InequalityReport check_geometric_obmi(const MonotoneCompositor& phi, std::span<const StarBodyGrid> bodies)
{
    require_shared_grid(bodies);
    const int n = bodies[0].dim();
    const MonotoneCompositor phi0 = transform_phi0(phi, n);
    InequalityReport rep;
    rep.direction = direction_for(phi0.shape());
    const double vs = volume(radial_orlicz_sum(phi, bodies));
    std::vector<double> ratios;
    for (const auto& b : bodies) ratios.push_back(volume(b) / vs);
    rep.lhs = phi0.eval_checked(ratios);
    rep.rhs = 1.0;
    const auto fields = fields_of(bodies);
    bool dilates = true;
    for (std::size_t j = 1; j < fields.size(); ++j)
        dilates = dilates && ratio_relative_variance(fields[0], fields[j]) < kProportionalThreshold;
    rep.equality_expected = phi0.shape() == Shape::Affine || dilates;
    finalize(rep);
    return rep;
}

VariationEstimate dual_mixed_volume_variation(const UnivariateGauge& phi1, const UnivariateGauge& phi2,
                                              const StarBodyGrid& k, const StarBodyGrid& l,
                                              std::vector<double> eps_schedule)
{
    const StarBodyGrid pair[] = {k, l};
    require_shared_grid(pair);
    const int n = k.dim();
    // mu = sigma / n turns the s = n power integral into the volume
    const auto grid = k.grid();
    std::vector<double> coords(grid->space()->coords().begin(), grid->space()->coords().end());
    std::vector<double> w(grid->weights().begin(), grid->weights().end());
    for (auto& x : w) x /= n;
    const auto space = std::make_shared<const MeasureSpace>(static_cast<std::size_t>(n), std::move(coords), std::move(w),
                                                            Sphere{n});
    const DensityField p1(space, std::vector<double>(k.radial().begin(), k.radial().end()));
    const DensityField p2(space, std::vector<double>(l.radial().begin(), l.radial().end()));
    VariationEstimate est = first_variation_fd(phi1, phi2, p1, p2, static_cast<double>(n), SubsetMask::all(p1.size()),
                                               std::move(eps_schedule));
    est.exact_rhs = dual_orlicz_mixed_volume([&](double t) { return phi2(t); }, k, l);
    est.relative_error = std::abs(est.extrapolated - est.exact_rhs) / std::max(std::abs(est.exact_rhs), 1e-300);
    est.sign_mismatch = est.extrapolated * est.exact_rhs < 0.0;
    return est;
}

}  // namespace orlicz
