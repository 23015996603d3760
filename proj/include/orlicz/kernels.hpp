#pragma once

// Grid kernels in two flavours: a plain serial reference and an OpenMP
// version. Both produce bitwise identical output; the serial one is kept
// for tests and for the benchmark comparison.

#include <cstddef>
#include <functional>
#include <span>

namespace orlicz {
class OrliczSolver;
}

namespace orlicz::kernels {

/// fields[j][i] is the value of field j at point i; out[i] receives the
/// Orlicz sum at point i.
void orlicz_add_serial(const OrliczSolver& solver, std::span<const std::span<const double>> fields,
                       std::span<double> out);
void orlicz_add_parallel(const OrliczSolver& solver, std::span<const std::span<const double>> fields,
                         std::span<double> out);

/// Discrete Legendre transform by exhaustive search:
///   out[j] = max_k ( <x_k, y_j> - psi[k] ),
/// with x (size psi.size()*dim) and y (size out.size()*dim) row-major.
void legendre_serial(std::size_t dim, std::span<const double> x, std::span<const double> psi,
                     std::span<const double> y, std::span<double> out);
void legendre_parallel(std::size_t dim, std::span<const double> x, std::span<const double> psi,
                       std::span<const double> y, std::span<double> out);

/// One-dimensional transform over the uniform grid x_k = x0 + k h with a
/// parabolic correction around the discrete maximiser, exact for
/// quadratic psi. Rows of a 2-D transform are processed independently.
void legendre_refined_serial(double x0, double h, std::span<const double> psi, std::span<const double> y,
                             std::span<double> out);
void legendre_refined_parallel(double x0, double h, std::span<const double> psi, std::span<const double> y,
                               std::span<double> out);

/// out[i] = f(i) for i < out.size().
void map_serial(const std::function<double(std::size_t)>& f, std::span<double> out);
void map_parallel(const std::function<double(std::size_t)>& f, std::span<double> out);

}  // namespace orlicz::kernels
