#include "nws/parallel.hpp"

#include <cstdlib>
#include <thread>

namespace nws {

int max_threads() {
    static const int cap = [] {
        if (const char* env = std::getenv("NWS_LAB_THREADS")) {
            const int v = std::atoi(env);
            if (v > 0) {
                return v;
            }
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? static_cast<int>(hw) : 1;
    }();
    return cap;
}

void apply_thread_cap() {
#ifdef _OPENMP
    omp_set_num_threads(max_threads());
#endif
}

} // namespace nws
