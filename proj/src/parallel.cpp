#include "tatebv/parallel.hpp"

#include <atomic>

namespace tbv {

namespace {
int default_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}
std::atomic<int> g_threads{default_threads()};
} // namespace

void set_threads(int t) { g_threads = t < 1 ? 1 : t; }
int threads() { return g_threads; }

} // namespace tbv
