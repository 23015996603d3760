#include "oracles.hpp"

#include "orlicz/divergence.hpp"
#include "orlicz/error.hpp"
#include "orlicz/random.hpp"

#include <doctest.h>

using namespace orlicz;

namespace {

double direct(const std::function<double(double)>& f, const Measure& p, const Measure& q)
{
    long double s = 0.0L;
    const auto w = q.space()->weights();
    for (std::size_t i = 0; i < q.size(); ++i) s += static_cast<long double>(f(p[i] / q[i])) * q[i] * w[i];
    return static_cast<double>(s);
}

}  // namespace

TEST_CASE("hand-computed divergences")
{
    const SpacePtr two = MeasureSpace::abstract({1.0, 1.0});
    const Measure p(two, {1.0, 0.0}), q(two, {0.5, 0.5});
    CHECK(f_divergence(gauges::kl(), p, q).value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    // (1 - 0.5)^2 / 0.5 + (0 - 0.5)^2 / 0.5
    CHECK(f_divergence(gauges::chi_square(), p, q).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f_divergence(gauges::total_variation(), p, q).value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f_divergence(gauges::kl(), q, q).value == 0.0);
    CHECK_THROWS_AS(f_divergence(gauges::kl(), q, p), Error);
    CHECK_THROWS_AS(f_divergence(gauges::renyi(-1.0), p, q), Error);
}

TEST_CASE("divergences agree with direct sums and respect the Jensen bound")
{
    random::Rng rng(3);
    const std::vector<ScalarGauge> gs{gauges::kl(), gauges::chi_square(), gauges::hellinger(),
                                      gauges::total_variation(), gauges::renyi(2.5)};
    for (int t = 0; t < 40; ++t) {
        const SpacePtr s = random::random_space(rng, 20 + t);
        const Measure p = random::random_field(rng, s, 1.5), q = random::random_field(rng, s, 1.5);
        for (const auto& g : gs) {
            const auto d = f_divergence(g, p, q);
            CHECK(d.value == doctest::Approx(direct(g.fn, p, q)).epsilon(1e-13));
            CHECK(d.value >= d.bound - 1e-12 * std::abs(d.bound));
            CHECK(d.integrand_min <= d.integrand_max);
        }
    }
    // renyi 0.5 is concave: bound reversed
    const SpacePtr s = random::random_space(rng, 30);
    const Measure p = random::random_field(rng, s), q = random::random_field(rng, s);
    const auto c = f_divergence(gauges::renyi(0.5), p, q);
    CHECK(c.value <= c.bound * (1.0 + 1e-12));
}

TEST_CASE("s-norms against independent quadrature")
{
    const SpacePtr grid = MeasureSpace::interval(0.0, 1.0, 1000);
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = grid->point(i)[0] + 1.0;
    const DensityField p(grid, v);
    const auto all = SubsetMask::all(p.size());

    const auto sq = s_norm(p, 2.0, all);
    CHECK(sq.power_integral == doctest::Approx(oracle::midpoint([](double x) { return (x + 1) * (x + 1); }, 0, 1, 1000))
                                   .epsilon(1e-13));
    CHECK(sq.norm == doctest::Approx(std::sqrt(7.0 / 3.0)).epsilon(1e-6));
    const auto inv = s_norm(p, -1.0, all);
    CHECK(inv.power_integral == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    CHECK(inv.norm == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-6));
    CHECK(s_norm(p, 1.0, all).norm == doctest::Approx(1.5).epsilon(1e-12));

    // restriction to the left half
    std::vector<std::size_t> left;
    for (std::size_t i = 0; i < 500; ++i) left.push_back(i);
    CHECK(s_norm(p, 1.0, SubsetMask(left)).norm == doctest::Approx(0.625).epsilon(1e-12));

    const DensityField z(grid, std::vector<double>(grid->size(), 0.0));
    CHECK(s_norm(z, 2.0, all).norm == 0.0);
    CHECK_THROWS_AS(s_norm(z, -1.0, all), Error);
    CHECK_THROWS_AS(s_norm(p, 0.0, all), Error);
}

TEST_CASE("ratio relative variance and Jensen checks")
{
    random::Rng rng(4);
    const SpacePtr s = random::random_space(rng, 40);
    const Measure p = random::random_field(rng, s);
    CHECK(ratio_relative_variance(p, p.scaled(3.0)) <= 1e-28);
    CHECK(ratio_relative_variance(p, random::random_field(rng, s)) > 1e-6);
    const Measure z = random::random_field_with_zeros(rng, s, 0.3);
    CHECK(std::isinf(ratio_relative_variance(z, p)));

    const auto eq = jensen_bound_check(gauges::kl(), p, p.scaled(2.0));
    CHECK(eq.holds);
    CHECK(eq.equality);
    CHECK(eq.equality_expected);
    CHECK(eq.direction == Direction::GE);

    const auto strict = jensen_bound_check(gauges::chi_square(), p, random::random_field(rng, s));
    CHECK(strict.holds);
    CHECK_FALSE(strict.equality);
    CHECK(strict.margin > 0.0);

    const auto concave = jensen_bound_check(gauges::square_root(), p, random::random_field(rng, s));
    CHECK(concave.direction == Direction::LE);
    CHECK(concave.holds);
}
