#pragma once

#include "orlicz/measure.hpp"
#include "orlicz/phi.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace orlicz {

/// Root tolerance on |phi(vals / lambda) - 1| and iteration caps of the
/// pointwise solve.
inline constexpr double kRootTolerance = 1e-12;
inline constexpr int kMaxBisection = 200;
inline constexpr int kMaxBracketSteps = 200;

/// Solves phi(v_1/lambda, ..., v_m/lambda) = 1 for lambda. Caches tau0 so
/// repeated solves with one compositor cost only the bisection.
class OrliczSolver {
public:
    explicit OrliczSolver(MonotoneCompositor phi);

    const MonotoneCompositor& phi() const noexcept { return phi_; }
    double tau0() const noexcept { return tau0_; }
    std::size_t arity() const noexcept { return phi_.arity(); }

    /// scratch must hold arity() doubles; it is clobbered.
    double solve(std::span<const double> vals, std::span<double> scratch) const;
    double solve(std::span<const double> vals) const;

private:
    MonotoneCompositor phi_;
    double tau0_;
};

/// The Orlicz sum at one point. Zero for PhiM when all values vanish.
double orlicz_add_pointwise(const MonotoneCompositor& phi, std::span<const double> vals);

/// Pointwise Orlicz sum of m fields on one measure space.
DensityField orlicz_add_field(const MonotoneCompositor& phi, std::span<const DensityField> fields);
DensityField orlicz_add_field(const OrliczSolver& solver, std::span<const DensityField> fields);

/// Orlicz addition of measures: the measure whose density is the pointwise
/// Orlicz sum of the densities.
Measure orlicz_add_measure(const MonotoneCompositor& phi, std::span<const Measure> measures);

struct DiscrepancyReport {
    double max_deviation = 0.0;   ///< worst relative deviation (homogeneity) or worst violation
    double worst_margin = 0.0;    ///< smallest slack of the checked inequality (bound checks)
    std::size_t worst_index = 0;
    std::size_t violations = 0;
    bool passed = true;
};

/// Compares S(r p) with r S(p) pointwise, solving both sides independently.
DiscrepancyReport check_homogeneity(const MonotoneCompositor& phi, std::span<const DensityField> fields, double r,
                                    double tolerance = 1e-10);

/// Checks S(p) <= tau0^{-1} sum p_j pointwise and, when dominating fields
/// q_j >= p_j are given, S(p) <= S(q). worst_margin is the smallest
/// relative slack over both checks.
DiscrepancyReport check_monotone_bound(const MonotoneCompositor& phi, std::span<const DensityField> fields,
                                       std::span<const DensityField> dominating = {});

enum class ConvergenceMode { Pointwise, Uniform };

struct ConvergenceReport {
    std::vector<double> distances;   ///< per sequence index
    std::vector<double> ratios;      ///< successive distance ratios (observed rate)
    double final_distance = 0.0;
    bool monotone = true;            ///< distances non-increasing
    bool passed = false;
};

/// Distance of S(p_{i1}, ..., p_{im}) to S(p_1, ..., p_m) along a sequence.
/// Uniform mode reports sup-norm distances and needs strictly positive
/// limits; Pointwise mode reports the largest per-point distance as well
/// but does not impose positivity.
ConvergenceReport check_convergence(const MonotoneCompositor& phi, std::span<const DensityField> limits,
                                    const std::vector<std::vector<DensityField>>& sequence, ConvergenceMode mode,
                                    double tolerance = 1e-8);

}  // namespace orlicz
