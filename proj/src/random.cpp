#include "orlicz/random.hpp"

#include "orlicz/error.hpp"
#include "orlicz/numeric.hpp"

#include <cmath>
#include <numbers>

namespace orlicz::random {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    // splitmix64 finaliser over the pair
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(Rng& rng, double lo, double hi)
{
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

SpacePtr random_space(Rng& rng, std::size_t n)
{
    std::vector<double> w(n);
    for (auto& v : w) v = uniform(rng, 0.5, 1.5) / static_cast<double>(n);
    return MeasureSpace::abstract(std::move(w));
}

DensityField random_field(Rng& rng, const SpacePtr& space, double amplitude)
{
    constexpr int kTerms = 4;
    double a[kTerms], b[kTerms];
    for (int k = 0; k < kTerms; ++k) {
        a[k] = uniform(rng, -1.0, 1.0);
        b[k] = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    }
    const double scale = log_uniform(rng, 0.2, 5.0);
    const std::size_t n = space->size();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        double s = 0.0;
        for (int k = 0; k < kTerms; ++k) s += a[k] * std::cos(2.0 * std::numbers::pi * (k + 1) * t + b[k]);
        v[i] = scale * std::exp(amplitude * s / 2.0 + 0.1 * uniform(rng, -1.0, 1.0));
    }
    return DensityField(space, std::move(v));
}

DensityField random_field_with_zeros(Rng& rng, const SpacePtr& space, double zero_fraction)
{
    const DensityField base = random_field(rng, space);
    std::vector<double> v(base.values().begin(), base.values().end());
    for (auto& x : v)
        if (uniform(rng, 0.0, 1.0) < zero_fraction) x = 0.0;
    return DensityField(space, std::move(v));
}

StarBodyGrid random_star_body(Rng& rng, const GridPtr& grid, int degree, double amplitude)
{
    require(degree >= 1, ErrorKind::InvalidParameter, "star body degree must be >= 1");
    const double r0 = log_uniform(rng, 0.5, 2.0);
    if (grid->dim() == 2) {
        std::vector<double> a(static_cast<std::size_t>(degree)), b(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            a[k] = uniform(rng, -1.0, 1.0);
            b[k] = uniform(rng, -1.0, 1.0);
        }
        return StarBodyGrid::from_function(grid, [&](std::span<const double> u) {
            const double th = std::atan2(u[1], u[0]);
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k)
                s += a[k] * std::cos((k + 1.0) * th) + b[k] * std::sin((k + 1.0) * th);
            return r0 * std::exp(amplitude * s / static_cast<double>(degree));
        });
    }
    struct Term {
        int i, j, k;
        double c;
    };
    std::vector<Term> terms;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j)
            for (int k = 0; i + j + k <= degree; ++k)
                if (i + j + k > 0) terms.push_back({i, j, k, uniform(rng, -1.0, 1.0)});
    const double norm = std::sqrt(static_cast<double>(terms.size()));
    return StarBodyGrid::from_function(grid, [&](std::span<const double> u) {
        double s = 0.0;
        for (const auto& t : terms) s += t.c * std::pow(u[0], t.i) * std::pow(u[1], t.j) * std::pow(u[2], t.k);
        return r0 * std::exp(amplitude * s / norm);
    });
}

EuclideanField random_log_concave_1d(Rng& rng, std::size_t resolution)
{
    const double a = uniform(rng, 0.2, 2.0);
    const double b = uniform(rng, 0.05, 0.5);
    const double c = uniform(rng, 0.0, 0.05);
    const double amp = log_uniform(rng, 0.3, 3.0);
    auto exponent = [=](double x) {
        const double x2 = x * x;
        return x2 * (a + x2 * (b + x2 * c));
    };
    const RootResult r = bisect([&](double x) { return exponent(x) - 30.0; }, 0.0, 100.0);
    const double half_width = r.x;
    return EuclideanField::from_function(1, half_width, resolution,
                                         [&](std::span<const double> x) { return amp * std::exp(-exponent(x[0])); });
}

Eigen::MatrixXd random_unimodular(Rng& rng, int n)
{
    std::normal_distribution<double> normal;
    Eigen::MatrixXd m(n, n);
    double det = 0.0;
    do {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) = normal(rng) + (r == c ? 1.5 : 0.0);
        det = m.determinant();
    } while (std::abs(det) < 0.1);
    m /= std::pow(std::abs(det), 1.0 / n);
    if (uniform(rng, 0.0, 1.0) < 0.5) m.row(0) *= -1.0;
    return m;
}

Eigen::MatrixXd random_gaussian_matrix(Rng& rng, int n)
{
    std::normal_distribution<double> normal;
    Eigen::MatrixXd g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::VectorXd d(n);
    for (int k = 0; k < n; ++k) d(k) = log_uniform(rng, 0.5, 2.0);
    return q * d.asDiagonal();
}

}  // namespace orlicz::random
