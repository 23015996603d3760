#include "orlicz/error.hpp"
#include "orlicz/optimize.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace orlicz;
using namespace orlicz::optimize;

TEST_CASE("golden section on unimodal functions")
{
    const auto q = golden_section([](double x) { return (x - 1.3) * (x - 1.3) + 2.0; }, -5.0, 5.0);
    CHECK(q.x == doctest::Approx(1.3).epsilon(1e-8));
    CHECK(q.fx == doctest::Approx(2.0).epsilon(1e-15));
    const auto c = golden_section([](double x) { return std::cosh(x - 0.25); }, -3.0, 7.0, 1e-12);
    CHECK(c.x == doctest::Approx(0.25).epsilon(1e-6).scale(1.0));
    // minimum at the boundary
    CHECK(golden_section([](double x) { return x; }, 2.0, 3.0).x == doctest::Approx(2.0).epsilon(1e-8));
    CHECK_THROWS_AS(golden_section([](double x) { return x; }, 1.0, 1.0), Error);
}

TEST_CASE("scan then golden escapes local minima")
{
    // global minimum near 4.7 among several local ones
    auto f = [](double x) { return std::sin(3.0 * x) + 0.05 * (x - 5.0) * (x - 5.0); };
    const auto r = scan_then_golden(f, 0.0, 10.0, 101);
    double best = std::numeric_limits<double>::infinity(), xb = 0.0;
    for (int k = 0; k <= 100000; ++k) {
        const double x = 1e-4 * k;
        if (f(x) < best) {
            best = f(x);
            xb = x;
        }
    }
    CHECK(r.x == doctest::Approx(xb).epsilon(1e-3));
    CHECK(r.fx <= best + 1e-9);
    CHECK(r.evaluations > 101);
    // NaN counts as +inf
    const auto n = scan_then_golden([](double x) { return x < 0.5 ? std::nan("") : (x - 0.7) * (x - 0.7); }, 0.0, 1.0, 11);
    CHECK(n.x == doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("Nelder-Mead on smooth problems")
{
    auto rosen = [](const std::vector<double>& x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    NelderMeadOptions o;
    o.max_evaluations = 20000;
    const auto r = nelder_mead(rosen, {-1.2, 1.0}, o);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.fx <= 1e-10);

    auto bowl = [](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) s += (k + 1.0) * (x[k] - 0.1 * k) * (x[k] - 0.1 * k);
        return s;
    };
    const auto b = nelder_mead(bowl, {1.0, 1.0, 1.0, 1.0});
    for (std::size_t k = 0; k < 4; ++k) CHECK(b.x[k] == doctest::Approx(0.1 * k).epsilon(1e-5).scale(1.0));
    CHECK(b.converged);

    // never worse than the start, even with infinite values around it
    auto spiky = [](const std::vector<double>& x) {
        return std::abs(x[0]) < 1e-3 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    const auto s = nelder_mead(spiky, {0.0});
    CHECK(s.fx == 0.0);
}
