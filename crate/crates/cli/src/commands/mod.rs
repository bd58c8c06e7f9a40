pub mod critical;
pub mod ovals;
pub mod spectrum;
pub mod susy;
pub mod verify;

use clap::Args;
use ptwell_core::WellConfig;

use crate::manifest::RunManifest;
use crate::Failure;

/// The box, barrier and coupling shared by most subcommands.
#[derive(Debug, Clone, Args)]
pub struct WellArgs {
    /// Box half-width L.
    #[arg(long = "L", default_value_t = 1.0)]
    pub box_half_width: f64,
    /// Barrier half-width l, 0 < l < L.
    #[arg(long = "l")]
    pub barrier_half_width: f64,
    /// Coupling g >= 0.
    #[arg(long = "g")]
    pub coupling: f64,
}

impl WellArgs {
    pub fn config(&self) -> Result<WellConfig, Failure> {
        Ok(WellConfig::new(
            self.box_half_width,
            self.barrier_half_width,
            self.coupling,
        )?)
    }

    pub fn record(&self, m: &mut RunManifest) {
        m.param("L", self.box_half_width)
            .param("l", self.barrier_half_width)
            .param("g", self.coupling);
    }
}
