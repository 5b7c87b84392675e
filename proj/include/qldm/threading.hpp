#pragma once

namespace qldm {

// Applies the QLDM_THREADS environment cap to the OpenMP runtime. Call once
// at process start; a no-op in serial builds or when the variable is unset.
void apply_thread_cap_from_env();

int max_threads();

}  // namespace qldm
