#include "orlicz/kernels.hpp"

#include "orlicz/error.hpp"
#include "orlicz/orlicz_add.hpp"
#include "orlicz/parallel.hpp"

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <vector>

namespace orlicz::kernels {

namespace {

using Index = std::ptrdiff_t;

// Keeps the exception raised at the smallest index so that a failing
// parallel run reports the same error as the serial one.
class FirstError {
public:
    void capture(Index i)
    {
        ORLICZ_OMP("omp critical(orlicz_first_error)")
        {
            if (!err_ || i < index_) {
                err_ = std::current_exception();
                index_ = i;
            }
        }
    }
    void rethrow() const
    {
        if (err_) std::rethrow_exception(err_);
    }

private:
    std::exception_ptr err_;
    Index index_ = std::numeric_limits<Index>::max();
};

void check_columns(std::span<const std::span<const double>> fields, std::size_t n, std::size_t arity)
{
    require(fields.size() == arity, ErrorKind::InvalidParameter, "field count does not match the compositor arity");
    for (const auto& f : fields)
        require(f.size() == n, ErrorKind::InvalidParameter, "field length does not match the output length");
}

inline double solve_at(const OrliczSolver& solver, std::span<const std::span<const double>> fields, std::size_t i,
                       std::vector<double>& vals, std::vector<double>& scratch)
{
    for (std::size_t j = 0; j < fields.size(); ++j) vals[j] = fields[j][i];
    return solver.solve(vals, scratch);
}

inline double legendre_at(std::size_t dim, std::span<const double> x, std::span<const double> psi, const double* y)
{
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const double* xk = x.data() + k * dim;
        double dot = 0.0;
        for (std::size_t d = 0; d < dim; ++d) dot += xk[d] * y[d];
        const double v = dot - psi[k];
        if (v > best) best = v;
    }
    return best;
}

inline double refined_at(double x0, double h, std::span<const double> psi, double y)
{
    const std::size_t n = psi.size();
    std::size_t kbest = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double v = (x0 + static_cast<double>(k) * h) * y - psi[k];
        if (v > best) {
            best = v;
            kbest = k;
        }
    }
    if (kbest == 0 || kbest + 1 >= n || !std::isfinite(best)) return best;
    const double fm = (x0 + static_cast<double>(kbest - 1) * h) * y - psi[kbest - 1];
    const double fp = (x0 + static_cast<double>(kbest + 1) * h) * y - psi[kbest + 1];
    const double curv = 2.0 * best - fm - fp;
    if (!(curv > 0.0)) return best;
    const double lift = (fm - fp) * (fm - fp) / (8.0 * curv);
    return best + lift;
}

}  // namespace

void orlicz_add_serial(const OrliczSolver& solver, std::span<const std::span<const double>> fields,
                       std::span<double> out)
{
    check_columns(fields, out.size(), solver.arity());
    std::vector<double> vals(fields.size()), scratch(fields.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = solve_at(solver, fields, i, vals, scratch);
}

void orlicz_add_parallel(const OrliczSolver& solver, std::span<const std::span<const double>> fields,
                         std::span<double> out)
{
    check_columns(fields, out.size(), solver.arity());
    const Index n = static_cast<Index>(out.size());
    FirstError err;
    ORLICZ_OMP("omp parallel")
    {
        std::vector<double> vals(fields.size()), scratch(fields.size());
        ORLICZ_OMP("omp for schedule(static)")
        for (Index i = 0; i < n; ++i) {
            try {
                out[static_cast<std::size_t>(i)] =
                    solve_at(solver, fields, static_cast<std::size_t>(i), vals, scratch);
            } catch (...) {
                err.capture(i);
            }
        }
    }
    err.rethrow();
}

void legendre_serial(std::size_t dim, std::span<const double> x, std::span<const double> psi,
                     std::span<const double> y, std::span<double> out)
{
    require(x.size() == psi.size() * dim && y.size() == out.size() * dim, ErrorKind::InvalidParameter,
            "Legendre transform: coordinate arrays do not match");
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = legendre_at(dim, x, psi, y.data() + j * dim);
}

void legendre_parallel(std::size_t dim, std::span<const double> x, std::span<const double> psi,
                       std::span<const double> y, std::span<double> out)
{
    require(x.size() == psi.size() * dim && y.size() == out.size() * dim, ErrorKind::InvalidParameter,
            "Legendre transform: coordinate arrays do not match");
    const Index n = static_cast<Index>(out.size());
    ORLICZ_OMP("omp parallel for schedule(static)")
    for (Index j = 0; j < n; ++j)
        out[static_cast<std::size_t>(j)] = legendre_at(dim, x, psi, y.data() + static_cast<std::size_t>(j) * dim);
}

void legendre_refined_serial(double x0, double h, std::span<const double> psi, std::span<const double> y,
                             std::span<double> out)
{
    require(y.size() == out.size() && !psi.empty(), ErrorKind::InvalidParameter,
            "Legendre transform: coordinate arrays do not match");
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = refined_at(x0, h, psi, y[j]);
}

void legendre_refined_parallel(double x0, double h, std::span<const double> psi, std::span<const double> y,
                               std::span<double> out)
{
    require(y.size() == out.size() && !psi.empty(), ErrorKind::InvalidParameter,
            "Legendre transform: coordinate arrays do not match");
    const Index n = static_cast<Index>(out.size());
    ORLICZ_OMP("omp parallel for schedule(static)")
    for (Index j = 0; j < n; ++j)
        out[static_cast<std::size_t>(j)] = refined_at(x0, h, psi, y[static_cast<std::size_t>(j)]);
}

void map_serial(const std::function<double(std::size_t)>& f, std::span<double> out)
{
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i);
}

void map_parallel(const std::function<double(std::size_t)>& f, std::span<double> out)
{
    const Index n = static_cast<Index>(out.size());
    FirstError err;
    ORLICZ_OMP("omp parallel for schedule(static)")
    for (Index i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
            err.capture(i);
        }
    }
    err.rethrow();
}

}  // namespace orlicz::kernels
