#include "orlicz/euclidean.hpp"
#include "orlicz/kernels.hpp"
#include "orlicz/orlicz_add.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/random.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace orlicz;

namespace {

bool bitwise_equal(std::span<const double> a, std::span<const double> b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("serial and parallel Orlicz kernels agree bitwise")
{
    parallel::set_max_threads(4);
    random::Rng rng(71);
    for (double p : {0.5, 2.0, -1.0}) {
        const std::size_t n = 5000;
        std::vector<std::vector<double>> cols(3, std::vector<double>(n));
        for (auto& c : cols)
            for (auto& x : c) x = random::log_uniform(rng, 1e-3, 1e3);
        std::vector<std::span<const double>> spans(cols.begin(), cols.end());
        const OrliczSolver solver(make_power_sum(p, 3));
        std::vector<double> a(n), b(n);
        kernels::orlicz_add_serial(solver, spans, a);
        kernels::orlicz_add_parallel(solver, spans, b);
        CHECK(bitwise_equal(a, b));
    }
}

TEST_CASE("serial and parallel Legendre kernels agree bitwise")
{
    parallel::set_max_threads(4);
    random::Rng rng(72);
    const std::size_t nx = 700, ny = 300;
    std::vector<double> x(2 * nx), psi(nx), y(2 * ny);
    for (auto& v : x) v = random::uniform(rng, -3.0, 3.0);
    for (auto& v : psi) v = random::uniform(rng, 0.0, 5.0);
    for (auto& v : y) v = random::uniform(rng, -2.0, 2.0);
    std::vector<double> a(ny), b(ny);
    kernels::legendre_serial(2, x, psi, y, a);
    kernels::legendre_parallel(2, x, psi, y, b);
    CHECK(bitwise_equal(a, b));
    for (std::size_t j = 0; j < ny; j += 37) {
        double best = -INFINITY;
        for (std::size_t k = 0; k < nx; ++k) best = std::max(best, x[2 * k] * y[2 * j] + x[2 * k + 1] * y[2 * j + 1] - psi[k]);
        CHECK(a[j] == best);
    }

    std::vector<double> psi1(401), y1(401);
    for (std::size_t k = 0; k < psi1.size(); ++k) {
        const double t = -4.0 + 0.02 * k;
        psi1[k] = t * t / 2.0 + 0.1 * t * t * t * t;
        y1[k] = -3.0 + 0.015 * k;
    }
    std::vector<double> r1(401), r2(401);
    kernels::legendre_refined_serial(-4.0, 0.02, psi1, y1, r1);
    kernels::legendre_refined_parallel(-4.0, 0.02, psi1, y1, r2);
    CHECK(bitwise_equal(r1, r2));
}

TEST_CASE("polar transforms and maps agree bitwise")
{
    parallel::set_max_threads(4);
    random::Rng rng(73);
    const auto p = EuclideanField::from_function(2, 6.0, 61, [](std::span<const double> v) {
        return std::exp(-(v[0] * v[0] + 0.5 * v[0] * v[1] + v[1] * v[1]));
    });
    for (auto mode : {LegendreMode::Discrete, LegendreMode::Refined}) {
        const auto a = polar_dual_serial(p, mode, 6.0, 61);
        const auto b = polar_dual(p, mode, 6.0, 61);
        CHECK(bitwise_equal(a.values(), b.values()));
    }
    std::vector<double> s(10000), t(10000);
    auto f = [](std::size_t i) { return std::sin(0.001 * static_cast<double>(i)); };
    kernels::map_serial(f, s);
    kernels::map_parallel(f, t);
    CHECK(bitwise_equal(s, t));
}

TEST_CASE("thread cap")
{
    parallel::set_max_threads(2);
    CHECK(parallel::max_threads() <= 2);
    parallel::set_max_threads(0);
    CHECK(parallel::max_threads() >= 1);
}
