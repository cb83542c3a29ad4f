#pragma once

namespace gesturegate {

/// Selects between the serial reference implementation of a kernel and the
/// OpenMP one. Both must produce bitwise-identical results; the serial path
/// is kept as the test oracle for the parallel path.
enum class Execution { serial, parallel };

/// Number of workers parallel kernels may use: the OpenMP thread limit,
/// capped by the GESTURE_GATE_THREADS environment variable when set.
/// Returns 1 when built without OpenMP.
int worker_count();

}  // namespace gesturegate
