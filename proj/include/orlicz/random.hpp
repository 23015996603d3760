#pragma once

#include "orlicz/euclidean.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/star.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace orlicz::random {

using Rng = std::mt19937_64;

/// Independent stream for trial `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
/// exp of a uniform draw on [log lo, log hi].
double log_uniform(Rng& rng, double lo, double hi);

/// Random positive weights on an abstract n-point set, total mass near 1.
SpacePtr random_space(Rng& rng, std::size_t n);

/// Smooth positive field: exp of a random low-order cosine series in the
/// point index, with values spanning roughly [e^-amp, e^amp].
DensityField random_field(Rng& rng, const SpacePtr& space, double amplitude = 1.0);

/// random_field with a random subset of points set to zero.
DensityField random_field_with_zeros(Rng& rng, const SpacePtr& space, double zero_fraction);

/// rho = r0 exp(sum of low-degree terms) on the grid's nodes.
StarBodyGrid random_star_body(Rng& rng, const GridPtr& grid, int degree = 3, double amplitude = 0.3);

/// Even log-concave density A exp(-(a x^2 + b x^4 + c x^6)) on a box large
/// enough that the boundary value is below 1e-13 of the maximum.
EuclideanField random_log_concave_1d(Rng& rng, std::size_t resolution);

/// Random n x n matrix with determinant exactly +1 or -1 up to rounding.
Eigen::MatrixXd random_unimodular(Rng& rng, int n);

/// Random invertible matrix for parametric Gaussian targets.
Eigen::MatrixXd random_gaussian_matrix(Rng& rng, int n);

}  // namespace orlicz::random
