//! Fixed problem instances shared by the benchmarks.

use ptwell_core::WellConfig;

/// The reference configuration `L = 1, l = 0.5, g = 2`.
pub fn reference() -> WellConfig {
    WellConfig::new(1.0, 0.5, 2.0).expect("valid configuration")
}

/// The narrow-barrier, strong-coupling configuration `L = 1, l = 0.04, g = 650`.
pub fn narrow_barrier() -> WellConfig {
    WellConfig::new(1.0, 0.04, 650.0).expect("valid configuration")
}
