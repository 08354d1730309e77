#pragma once

namespace period_lab {

/// Selects the kernel flavour. `serial` is the reference implementation kept
/// for testing; `parallel` runs the same arithmetic under OpenMP and must
/// produce identical results.
enum class Exec { serial, parallel };

}  // namespace period_lab
