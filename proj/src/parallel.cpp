#include "orlicz/parallel.hpp"

#include <cstdlib>
#include <string>

namespace orlicz::parallel {

int max_threads()
{
#ifdef ORLICZ_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_max_threads([[maybe_unused]] int n)
{
#ifdef ORLICZ_HAVE_OPENMP
    if (n > 0) omp_set_num_threads(n);
#endif
}

int apply_thread_env()
{
    if (const char* env = std::getenv("ORLICZ_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0 && n < max_threads()) set_max_threads(n);
        } catch (const std::exception&) {
            // malformed value: keep the runtime default
        }
    }
    return max_threads();
}

}  // namespace orlicz::parallel
