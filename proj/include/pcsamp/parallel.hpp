#pragma once

namespace pcsamp {

/// Selects the serial reference loop or the OpenMP kernel for sweeps and
/// grid searches. Both produce identical results, including witnesses.
enum class Execution { Serial, Parallel };

/// Threads the OpenMP kernels will use (1 when built without OpenMP).
int max_threads();

}  // namespace pcsamp
