#pragma once

#include "orlicz/divergence.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/phi.hpp"
#include "orlicz/variation.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace orlicz {

/// Quadrature for the surface measure sigma on S^{n-1}, n in {2, 3}.
class SphereGrid {
public:
    /// nodes: size()*n unit vectors, row-major; weights approximate sigma.
    SphereGrid(int n, std::vector<double> nodes, std::vector<double> weights);

    int dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return space_->size(); }
    std::span<const double> node(std::size_t i) const { return space_->point(i); }
    std::span<const double> weights() const noexcept { return space_->weights(); }
    /// The grid as a measure space carrying sigma.
    const SpacePtr& space() const noexcept { return space_; }
    double total_weight() const { return space_->total_weight(); }

private:
    int n_;
    SpacePtr space_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

/// n = 2: `resolution` equally spaced angles. n = 3: `resolution`
/// Gauss-Legendre nodes in cos(theta) times 2*resolution azimuths.
GridPtr sphere_grid(int n, std::size_t resolution);

/// A star body given by its radial function on a sphere grid.
class StarBodyGrid {
public:
    StarBodyGrid(GridPtr grid, std::vector<double> radial);

    /// Radial function evaluated at each node.
    static StarBodyGrid from_function(GridPtr grid, const std::function<double(std::span<const double>)>& rho);
    static StarBodyGrid ball(GridPtr grid, double radius);

    const GridPtr& grid() const noexcept { return grid_; }
    std::span<const double> radial() const noexcept { return radial_; }
    double operator[](std::size_t i) const { return radial_[i]; }
    std::size_t size() const noexcept { return radial_.size(); }
    int dim() const noexcept { return grid_->dim(); }
    /// rho viewed as a density field over sigma.
    DensityField as_field() const;

private:
    GridPtr grid_;
    std::vector<double> radial_;
};

/// Radial Orlicz sum: the pointwise Orlicz sum of the radial functions.
StarBodyGrid radial_orlicz_sum(const MonotoneCompositor& phi, std::span<const StarBodyGrid> bodies);

/// Largest relative gap between rho_sum^n and the phi0-Orlicz sum of the rho_j^n.
double bridging_residual(const MonotoneCompositor& phi, std::span<const StarBodyGrid> bodies);

/// (1/n) int rho^n dsigma.
double volume(const StarBodyGrid& k);

/// (1/n) int phi(rho_L / rho_K) rho_K^n dsigma.
double dual_orlicz_mixed_volume(const std::function<double(double)>& phi, const StarBodyGrid& k,
                                const StarBodyGrid& l);

/// phi0(V(K_1)/V(S), ..., V(K_m)/V(S)) against 1, direction from the shape of phi0.
InequalityReport check_geometric_obmi(const MonotoneCompositor& phi, std::span<const StarBodyGrid> bodies);

/// First variation of the volume under K +_{phi,eps} L compared with the
/// dual Orlicz mixed volume of phi2.
VariationEstimate dual_mixed_volume_variation(const UnivariateGauge& phi1, const UnivariateGauge& phi2,
                                              const StarBodyGrid& k, const StarBodyGrid& l,
                                              std::vector<double> eps_schedule = default_eps_schedule());

}  // namespace orlicz
