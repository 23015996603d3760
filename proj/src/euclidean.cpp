#include "orlicz/euclidean.hpp"

#include "orlicz/error.hpp"
#include "orlicz/kernels.hpp"
#include "orlicz/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace orlicz {

EuclideanField::EuclideanField(int n, double half_width, std::size_t resolution, std::vector<double> values)
    : n_(n), r_(half_width), res_(resolution), values_(std::move(values))
{
    require(n == 1 || n == 2, ErrorKind::InvalidParameter, "Euclidean fields support n = 1 or n = 2");
    require(half_width > 0.0 && std::isfinite(half_width), ErrorKind::InvalidParameter, "box half-width must be positive");
    require(resolution >= 6, ErrorKind::InvalidParameter, "Euclidean grids need at least 6 nodes per axis");
    const std::size_t expected = n == 1 ? resolution : resolution * resolution;
    require(values_.size() == expected, ErrorKind::InvalidParameter, "field size does not match the grid");
    for (double v : values_)
        require(v > 0.0 && std::isfinite(v), ErrorKind::DomainViolation, "Euclidean fields must be positive and finite");
}

EuclideanField EuclideanField::from_function(int n, double half_width, std::size_t resolution,
                                             const std::function<double(std::span<const double>)>& p)
{
    require(n == 1 || n == 2, ErrorKind::InvalidParameter, "Euclidean fields support n = 1 or n = 2");
    const std::vector<double> ax = linspace(-half_width, half_width, resolution);
    std::vector<double> v;
    if (n == 1) {
        for (double x : ax) v.push_back(p(std::span<const double>(&x, 1)));
    } else {
        for (double x : ax)
            for (double y : ax) {
                const double pt[2] = {x, y};
                v.push_back(p(pt));
            }
    }
    return EuclideanField(n, half_width, resolution, std::move(v));
}

double EuclideanField::spacing() const
{
    return 2.0 * r_ / static_cast<double>(res_ - 1);
}

std::vector<double> EuclideanField::axis() const
{
    return linspace(-r_, r_, res_);
}

std::vector<double> EuclideanField::coords() const
{
    const auto ax = axis();
    if (n_ == 1) return ax;
    std::vector<double> c;
    c.reserve(2 * values_.size());
    for (double x : ax)
        for (double y : ax) {
            c.push_back(x);
            c.push_back(y);
        }
    return c;
}

std::vector<double> EuclideanField::weights() const
{
    const double h = spacing();
    std::vector<double> w1(res_, h);
    w1.front() = w1.back() = 0.5 * h;
    if (n_ == 1) return w1;
    std::vector<double> w;
    w.reserve(values_.size());
    for (double a : w1)
        for (double b : w1) w.push_back(a * b);
    return w;
}

double EuclideanField::max_value() const
{
    return *std::max_element(values_.begin(), values_.end());
}

double EuclideanField::tail_ratio() const
{
    double edge = 0.0;
    if (n_ == 1) {
        edge = std::max(values_.front(), values_.back());
    } else {
        for (std::size_t k = 0; k < res_; ++k) {
            edge = std::max({edge, values_[k], values_[(res_ - 1) * res_ + k], values_[k * res_],
                             values_[k * res_ + res_ - 1]});
        }
    }
    return edge / max_value();
}

DensityField EuclideanField::as_measure() const
{
    auto space = std::make_shared<const MeasureSpace>(static_cast<std::size_t>(n_), coords(), weights(),
                                                      EuclideanBox{n_, r_});
    return DensityField(std::move(space), values_);
}

double mass(const EuclideanField& p)
{
    const auto w = p.weights();
    std::vector<double> terms(p.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = p[i] * w[i];
    return pairwise_sum(terms);
}

namespace {

EuclideanField polar_impl(const EuclideanField& p, LegendreMode mode, double out_r, std::size_t out_n, bool parallel)
{
    require(out_r > 0.0 && out_n >= 6, ErrorKind::InvalidParameter, "polar output grid is invalid");
    const int n = p.dim();
    std::vector<double> psi(p.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = -std::log(p[i]);

    const std::vector<double> yax = linspace(-out_r, out_r, out_n);
    const std::size_t out_size = n == 1 ? out_n : out_n * out_n;
    std::vector<double> conj(out_size);

    if (mode == LegendreMode::Discrete) {
        const std::vector<double> x = p.coords();
        std::vector<double> y;
        if (n == 1) {
            y = yax;
        } else {
            for (double a : yax)
                for (double b : yax) {
                    y.push_back(a);
                    y.push_back(b);
                }
        }
        if (parallel) kernels::legendre_parallel(static_cast<std::size_t>(n), x, psi, y, conj);
        else kernels::legendre_serial(static_cast<std::size_t>(n), x, psi, y, conj);
    } else {
        const double x0 = -p.half_width();
        const double h = p.spacing();
        auto refined = parallel ? kernels::legendre_refined_parallel : kernels::legendre_refined_serial;
        if (n == 1) {
            refined(x0, h, psi, yax, conj);
        } else {
            const std::size_t nin = p.resolution();
            // inner transform along the second coordinate, one row per x1 node
            std::vector<double> inner(nin * out_n);
            for (std::size_t i = 0; i < nin; ++i)
                refined(x0, h, std::span<const double>(psi).subspan(i * nin, nin), yax,
                        std::span<double>(inner).subspan(i * out_n, out_n));
            std::vector<double> col(nin), res(out_n);
            for (std::size_t j = 0; j < out_n; ++j) {
                for (std::size_t i = 0; i < nin; ++i) col[i] = -inner[i * out_n + j];
                refined(x0, h, col, yax, res);
                for (std::size_t k = 0; k < out_n; ++k) conj[k * out_n + j] = res[k];
            }
        }
    }
    for (auto& v : conj) v = std::exp(-v);
    return EuclideanField(n, out_r, out_n, std::move(conj));
}

}  // namespace

EuclideanField polar_dual(const EuclideanField& p, LegendreMode mode)
{
    return polar_impl(p, mode, p.half_width(), p.resolution(), true);
}

EuclideanField polar_dual(const EuclideanField& p, LegendreMode mode, double out_half_width,
                          std::size_t out_resolution)
{
    return polar_impl(p, mode, out_half_width, out_resolution, true);
}

EuclideanField polar_dual_serial(const EuclideanField& p, LegendreMode mode, double out_half_width,
                                 std::size_t out_resolution)
{
    return polar_impl(p, mode, out_half_width, out_resolution, false);
}

ClassDReport in_class_D(const EuclideanField& p, double tolerance)
{
    constexpr double kTail = 1e-12;
    ClassDReport rep;
    rep.mass = mass(p);
    rep.bound = std::pow(2.0 * std::numbers::pi, p.dim());

    const int max_factor = p.dim() == 1 ? 16 : 8;
    for (int k = 1;; k *= 2) {
        const double out_r = p.half_width() * k;
        const std::size_t out_n = (p.resolution() - 1) * static_cast<std::size_t>(k) + 1;
        const EuclideanField polar = polar_dual(p, LegendreMode::Refined, out_r, out_n);
        rep.polar_mass = mass(polar);
        rep.polar_half_width = out_r;
        if (polar.tail_ratio() < kTail) break;
        if (k >= max_factor) {
            rep.truncated = true;
            break;
        }
    }
    rep.product = rep.mass * rep.polar_mass;
    rep.margin = rep.bound - rep.product;
    rep.in_class = rep.margin >= -tolerance * rep.bound;

    const auto w = p.weights();
    const auto x = p.coords();
    const std::size_t n = static_cast<std::size_t>(p.dim());
    rep.barycenter.assign(n, 0.0);
    for (std::size_t d = 0; d < n; ++d) {
        std::vector<double> terms(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) terms[i] = x[i * n + d] * p[i] * w[i];
        rep.barycenter[d] = pairwise_sum(terms) / rep.mass;
        if (std::abs(rep.barycenter[d]) > 1e-8 * p.half_width()) rep.off_center = true;
    }
    return rep;
}

namespace {

// Six-point Lagrange stencil on the uniform axis for coordinate z.
void stencil(double z, double r, double h, std::size_t n, std::size_t& first, double (&w)[6])
{
    const double u = (z + r) / h;
    const double base = std::floor(u) - 2.0;
    const double hi = static_cast<double>(n) - 6.0;
    const double start = std::clamp(base, 0.0, hi);
    first = static_cast<std::size_t>(start);
    for (int a = 0; a < 6; ++a) {
        double l = 1.0;
        for (int b = 0; b < 6; ++b)
            if (b != a) l *= (u - (start + b)) / static_cast<double>(a - b);
        w[a] = l;
    }
}

}  // namespace

LinearMapResult apply_linear_map(const EuclideanField& p, const Eigen::MatrixXd& t)
{
    const int n = p.dim();
    require(t.rows() == n && t.cols() == n, ErrorKind::InvalidParameter, "linear map has the wrong size");
    require(std::abs(std::abs(t.determinant()) - 1.0) <= 1e-12, ErrorKind::InvalidParameter,
            "linear map must have |det T| = 1");
    const double r = p.half_width();
    const double h = p.spacing();
    const std::size_t nn = p.resolution();
    std::vector<double> lg(p.size());
    for (std::size_t i = 0; i < lg.size(); ++i) lg[i] = std::log(p[i]);
    const double significant = 1e-12 * p.max_value();

    const std::vector<double> x = p.coords();
    std::vector<double> out(p.size());
    bool truncated = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double z[2] = {0.0, 0.0};
        bool outside = false;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) z[a] += t(a, b) * x[i * n + b];
            if (std::abs(z[a]) > r) {
                outside = true;
                z[a] = std::clamp(z[a], -r, r);
            }
        }
        double value;
        if (n == 1) {
            std::size_t f;
            double w[6];
            stencil(z[0], r, h, nn, f, w);
            double acc = 0.0;
            for (int a = 0; a < 6; ++a) acc += w[a] * lg[f + a];
            value = std::exp(acc);
        } else {
            std::size_t f0, f1;
            double w0[6], w1[6];
            stencil(z[0], r, h, nn, f0, w0);
            stencil(z[1], r, h, nn, f1, w1);
            double acc = 0.0;
            for (int a = 0; a < 6; ++a) {
                double row = 0.0;
                for (int b = 0; b < 6; ++b) row += w1[b] * lg[(f0 + a) * nn + f1 + b];
                acc += w0[a] * row;
            }
            value = std::exp(acc);
        }
        if (outside && value > significant) truncated = true;
        out[i] = value;
    }
    EuclideanField mapped(n, r, nn, std::move(out));
    const double m0 = mass(p);
    const double m1 = mass(mapped);
    return LinearMapResult{std::move(mapped), std::abs(m1 - m0) / m0, truncated};
}

}  // namespace orlicz
