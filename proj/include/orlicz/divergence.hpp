#pragma once

#include "orlicz/measure.hpp"
#include "orlicz/phi.hpp"

#include <cstdint>
#include <string>

namespace orlicz {

struct DivergenceResult {
    double value = 0.0;
    double integrand_min = 0.0;  ///< extrema of f(p/q) q over the support
    double integrand_max = 0.0;
    double bound = 0.0;          ///< Q(Omega) f(P(Omega) / Q(Omega))
    double equality_gap = 0.0;   ///< value - bound
};

/// D_f(P, Q) = sum_i f(p_i / q_i) q_i w_i. Q must be strictly positive.
DivergenceResult f_divergence(const ScalarGauge& f, const Measure& p, const Measure& q);
DivergenceResult f_divergence(const SurfaceGauge& f, const Measure& p, const Measure& q);
DivergenceResult f_divergence(const UnivariateGauge& f, const Measure& p, const Measure& q);

struct SNormResult {
    double norm = 0.0;            ///< (int_A p^s)^(1/s)
    double power_integral = 0.0;  ///< int_A p^s
};

SNormResult s_norm(const DensityField& p, double s, const SubsetMask& a);

enum class Direction { GE, LE };

const char* to_string(Direction d);

/// Relative slack allowed before a direction counts as violated, and the
/// relative tolerance of equality detection.
inline constexpr double kDirectionSlack = 1e-10;
inline constexpr double kEqualityTolerance = 1e-8;

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    Direction direction = Direction::GE;
    double margin = 0.0;  ///< lhs - rhs
    bool holds = true;
    bool equality = false;
    bool equality_expected = false;
    std::uint64_t seed = 0;

    double scale() const;
};

/// Fills margin, holds and equality from lhs, rhs and direction.
void finalize(InequalityReport& rep);

/// Weighted relative variance of q/p over the support. Infinite when q
/// is positive somewhere p vanishes; 0 when both vanish identically.
double ratio_relative_variance(const DensityField& p, const DensityField& q);
/// Same, restricted to the points of A.
double ratio_relative_variance(const DensityField& p, const DensityField& q, const SubsetMask& a);

/// Inputs count as proportional when the relative variance of the ratio
/// is below this threshold.
inline constexpr double kProportionalThreshold = 1e-10;

/// Jensen bound D_phi(P2, P1) against P1(Omega) phi(P2(Omega) / P1(Omega)):
/// LE for concave phi, GE for convex phi.
InequalityReport jensen_bound_check(const ScalarGauge& phi, const Measure& p1, const Measure& p2);
InequalityReport jensen_bound_check(const UnivariateGauge& phi, const Measure& p1, const Measure& p2);

}  // namespace orlicz
