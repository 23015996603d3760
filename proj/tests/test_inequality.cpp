#include "oracles.hpp"

#include "orlicz/error.hpp"
#include "orlicz/inequality.hpp"
#include "orlicz/random.hpp"

#include <doctest.h>

using namespace orlicz;

namespace {

std::vector<Measure> random_measures(random::Rng& rng, std::size_t n, std::size_t m)
{
    const SpacePtr s = random::random_space(rng, n);
    std::vector<Measure> out;
    for (std::size_t j = 0; j < m; ++j) out.push_back(random::random_field(rng, s));
    return out;
}

// phi(P_j(A) / S(A)) for power sums, with S from the closed-form root
double power_obmi_oracle(const std::vector<Measure>& ms, double p, const SubsetMask& a)
{
    const auto w = ms[0].space()->weights();
    long double sa = 0.0L;
    std::vector<long double> pa(ms.size(), 0.0L);
    for (std::size_t i : a.indices()) {
        std::vector<double> v;
        for (std::size_t j = 0; j < ms.size(); ++j) {
            v.push_back(ms[j][i]);
            pa[j] += static_cast<long double>(ms[j][i]) * w[i];
        }
        sa += static_cast<long double>(oracle::power_sum_root(v, p)) * w[i];
    }
    long double lhs = 0.0L;
    for (auto x : pa) lhs += std::pow(x / sa, static_cast<long double>(p));
    return static_cast<double>(lhs);
}

SubsetMask first_half(std::size_t n)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n / 2; ++i) idx.push_back(i);
    return SubsetMask(idx);
}

}  // namespace

TEST_CASE("direction follows the shape")
{
    CHECK(direction_for(Shape::StrictlyConcave) == Direction::GE);
    CHECK(direction_for(Shape::Affine) == Direction::GE);
    CHECK(direction_for(Shape::StrictlyConvex) == Direction::LE);
    CHECK_THROWS_AS(direction_for(Shape::Neither), Error);
}

TEST_CASE("dual inequality against the closed-form oracle")
{
    random::Rng rng(31);
    for (int t = 0; t < 30; ++t) {
        const std::size_t m = 2 + t % 3;
        const auto ms = random_measures(rng, 48, m);
        const SubsetMask a = t % 2 ? SubsetMask::all(48) : first_half(48);
        for (double p : {0.5, 2.0, 3.0, -1.0, -2.0}) {
            const auto rep = check_dual_obmi(make_power_sum(p, m), ms, a);
            CHECK(rep.lhs == doctest::Approx(power_obmi_oracle(ms, p, a)).epsilon(1e-11));
            CHECK(rep.holds);
            CHECK(rep.direction == (p > 0 && p < 1 ? Direction::GE : Direction::LE));
            CHECK_FALSE(rep.equality_expected);
        }
        const auto lin = check_dual_obmi(make_power_sum(1.0, m), ms, a);
        CHECK(lin.equality);
        CHECK(lin.equality_expected);
    }
}

TEST_CASE("proportional inputs give equality")
{
    random::Rng rng(32);
    const auto ms = random_measures(rng, 40, 1);
    const std::vector<Measure> prop{ms[0], ms[0].scaled(2.5), ms[0].scaled(0.1)};
    for (double p : {0.5, 2.0, -1.0}) {
        const auto rep = check_dual_obmi(make_power_sum(p, 3), prop, SubsetMask::all(40));
        CHECK(rep.holds);
        CHECK(rep.equality);
        CHECK(rep.equality_expected);
    }
}

TEST_CASE("corollary with vanishing measures")
{
    random::Rng rng(33);
    const auto ms = random_measures(rng, 40, 1);
    const SpacePtr s = ms[0].space();
    const std::vector<Measure> with_zero{ms[0], DensityField::constant(s, 0.0)};
    const auto rep = check_obmi_corollary(make_power_sum(0.5, 2), with_zero, SubsetMask::all(40));
    CHECK(rep.passed);
    CHECK(rep.all_hold);
    CHECK(rep.direct_defined);
    CHECK(rep.direct_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.final.equality_expected);
    CHECK(rep.limit_gap <= 1e-4);
    CHECK(rep.values.size() == default_corollary_schedule().size());

    const Measure sparse = random::random_field_with_zeros(rng, s, 0.5);
    const std::vector<Measure> mixed{ms[0], sparse};
    const auto r2 = check_obmi_corollary(make_power_sum(0.7, 2), mixed, SubsetMask::all(40));
    CHECK(r2.passed);
    CHECK(r2.direct_value >= 1.0 - 1e-10);

    CHECK_THROWS_AS(check_obmi_corollary(make_power_sum(2.0, 2), mixed, SubsetMask::all(40)), Error);
    CHECK_THROWS_AS(check_obmi_corollary(make_power_sum(-1.0, 2), mixed, SubsetMask::all(40)), Error);
    const std::vector<Measure> zeros{DensityField::constant(s, 0.0), DensityField::constant(s, 0.0)};
    CHECK_THROWS_AS(check_obmi_corollary(make_power_sum(0.5, 2), zeros, SubsetMask::all(40)), Error);
}

TEST_CASE("s-norm theorem reduces to Minkowski for the linear compositor")
{
    random::Rng rng(34);
    for (int t = 0; t < 20; ++t) {
        const auto f = random_measures(rng, 64, 2);
        const auto all = SubsetMask::all(64);
        const double s = random::uniform(rng, 1.1, 4.0);
        const auto rep = check_ls_theorem(make_power_sum(1.0, 2), s, f, all);
        // (||f||_s + ||g||_s) / ||f + g||_s >= 1
        const auto w = f[0].space()->weights();
        long double nf = 0, ng = 0, nsum = 0;
        for (std::size_t i = 0; i < 64; ++i) {
            nf += std::pow(static_cast<long double>(f[0][i]), s) * w[i];
            ng += std::pow(static_cast<long double>(f[1][i]), s) * w[i];
            nsum += std::pow(static_cast<long double>(f[0][i]) + f[1][i], s) * w[i];
        }
        const double want = static_cast<double>((std::pow(nf, 1 / s) + std::pow(ng, 1 / s)) / std::pow(nsum, 1 / s));
        CHECK(rep.lhs == doctest::Approx(want).epsilon(1e-11));
        CHECK(rep.direction == Direction::GE);
        CHECK(rep.holds);
        CHECK(rep.lhs >= 1.0);
    }
    const auto f = random_measures(rng, 64, 2);
    const auto one = check_ls_theorem(make_power_sum(1.0, 2), 1.0, f, SubsetMask::all(64));
    CHECK(one.equality);
    CHECK(one.equality_expected);
    const std::vector<DensityField> bad{f[0], random::random_field_with_zeros(rng, f[0].space(), 0.5)};
    CHECK_THROWS_AS(check_ls_theorem(make_power_sum(1.0, 2), 2.0, bad, SubsetMask::all(64)), Error);
}

TEST_CASE("obmi and Jensen agree")
{
    random::Rng rng(35);
    const std::vector<std::pair<UnivariateGauge, UnivariateGauge>> pairs{
        {gauges::square_root(), gauges::square_root()},
        {gauges::square(), gauges::square()},
        {gauges::inverse(), gauges::inverse()},
        {gauges::square_root(), gauges::power(0.3)}};
    for (int t = 0; t < 20; ++t) {
        const auto ms = random_measures(rng, 32, 2);
        for (const auto& [g1, g2] : pairs) {
            const double a1 = random::uniform(rng, 0.2, 2.0), a2 = random::uniform(rng, 0.2, 2.0);
            const auto rep = check_crdm_equivalence(g1, g2, a1, a2, ms[0], ms[1]);
            CHECK(rep.agree);
            CHECK(rep.obmi.holds);
            CHECK(rep.jensen.holds);
            const auto eq = check_crdm_equivalence(g1, g2, a1, a2, ms[0], ms[0].scaled(1.7));
            CHECK(eq.agree);
            CHECK(eq.obmi.equality);
            CHECK(eq.jensen.equality);
        }
    }
}
