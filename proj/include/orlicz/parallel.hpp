#pragma once

// OpenMP shims. Kernels are written against ORLICZ_OMP(...) so the library
// still builds (serially) when OpenMP is unavailable.

#ifdef ORLICZ_HAVE_OPENMP
#include <omp.h>
#define ORLICZ_OMP(content) _Pragma(content)
#else
#define ORLICZ_OMP(content)
#endif

namespace orlicz::parallel {

int max_threads();

/// Cap the worker count; non-positive values leave the runtime default.
void set_max_threads(int n);

/// Applies the ORLICZ_THREADS environment variable, if set. Returns the
/// effective thread cap.
int apply_thread_env();

}  // namespace orlicz::parallel
