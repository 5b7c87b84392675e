#include "qldm/threading.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qldm {

void apply_thread_cap_from_env() {
#ifdef _OPENMP
    const char* env = std::getenv("QLDM_THREADS");
    if (env == nullptr || *env == '\0') return;
    try {
        const int cap = std::stoi(env);
        if (cap >= 1) omp_set_num_threads(cap);
    } catch (...) {
        // unparsable value: leave the runtime default alone
    }
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace qldm
