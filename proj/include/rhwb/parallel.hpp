#pragma once

namespace rhwb {

/// Selects between the OpenMP kernel and its serial reference.
enum class Execution { serial, parallel };

/// Caps the number of OpenMP worker threads; no-op without OpenMP.
void set_thread_limit(int threads);

/// Number of worker threads a parallel region would use.
int thread_limit();

}  // namespace rhwb
