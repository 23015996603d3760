#pragma once

#include "orlicz/divergence.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/phi.hpp"

#include <vector>

namespace orlicz {

/// GE for concave shapes, LE for convex ones; affine shapes are reported
/// as GE with equality expected. Other shapes are rejected.
Direction direction_for(Shape shape);

/// phi(P_1(A)/S(A), ..., P_m(A)/S(A)) against 1 with S the Orlicz sum of
/// the measures.
InequalityReport check_dual_obmi(const MonotoneCompositor& phi, std::span<const Measure> measures,
                                 const SubsetMask& a);

struct CorollaryReport {
    std::vector<double> epsilons;
    std::vector<double> values;     ///< regularized evaluations along the schedule
    bool all_hold = true;
    bool monotone = true;           ///< values move monotonically as eps decreases
    bool direct_defined = false;
    double direct_value = 0.0;      ///< unregularized evaluation
    double limit_gap = 0.0;         ///< |last regularized value - direct value|
    InequalityReport final;         ///< direct evaluation when defined, else the last regularized one
    bool passed = false;
};

std::vector<double> default_corollary_schedule();

/// Runs check_dual_obmi on p_j + eps and on the raw fields.
CorollaryReport check_obmi_corollary(const MonotoneCompositor& phi, std::span<const Measure> measures,
                                     const SubsetMask& a,
                                     const std::vector<double>& eps_schedule = default_corollary_schedule());

/// phi(||p_1||_{s,A} / ||S||_{s,A}, ...) against 1, direction from the
/// shape of phi_s.
InequalityReport check_ls_theorem(const MonotoneCompositor& phi, double s, std::span<const DensityField> fields,
                                  const SubsetMask& a);

struct EquivalenceReport {
    InequalityReport obmi;    ///< alpha1 phi1(P1/S) + alpha2 phi2(P2/S) against 1
    InequalityReport jensen;  ///< D_phi2(P2, P1) against P1(Omega) phi2(P2(Omega)/P1(Omega))
    bool agree = false;       ///< pass/fail and equality flags coincide
};

EquivalenceReport check_crdm_equivalence(const UnivariateGauge& phi1, const UnivariateGauge& phi2, double alpha1,
                                         double alpha2, const Measure& p1, const Measure& p2);

}  // namespace orlicz
