#pragma once

namespace fdsmc {

/// Execution policy for the data-parallel kernels. `serial` runs the plain
/// reference loop, `parallel` the OpenMP version. Both produce bit-identical
/// results; the serial path is kept as the reference for tests and benchmarks.
enum class Exec { serial, parallel };

}  // namespace fdsmc
