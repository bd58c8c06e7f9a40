//! Problem definition: the box, the imaginary barrier and the complex potential.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The physical problem `(L, l, g)`: a hard box on `(-L, L)` with the
/// imaginary barrier `-i g` on `(-l, 0)` and `+i g` on `(0, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellConfig {
    box_half_width: f64,
    barrier_half_width: f64,
    coupling: f64,
}

impl WellConfig {
    pub fn new(box_half_width: f64, barrier_half_width: f64, coupling: f64) -> Result<Self> {
        if !(box_half_width.is_finite() && box_half_width > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "box half-width L must be positive and finite, got {box_half_width}"
            )));
        }
        if !(barrier_half_width.is_finite() && barrier_half_width > 0.0 && barrier_half_width < box_half_width) {
            return Err(Error::InvalidConfig(format!(
                "barrier half-width must satisfy 0 < l < L = {box_half_width}, got l = {barrier_half_width}"
            )));
        }
        if !(coupling.is_finite() && coupling >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "coupling g must be non-negative and finite, got {coupling}"
            )));
        }
        Ok(Self {
            box_half_width,
            barrier_half_width,
            coupling,
        })
    }

    /// Geometry only; the coupling is set to zero.
    pub fn geometry(box_half_width: f64, barrier_half_width: f64) -> Result<Self> {
        Self::new(box_half_width, barrier_half_width, 0.0)
    }

    /// `L`
    pub fn box_half_width(&self) -> f64 {
        self.box_half_width
    }

    /// `l`
    pub fn barrier_half_width(&self) -> f64 {
        self.barrier_half_width
    }

    /// `g`
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Same geometry with a different barrier strength.
    pub fn with_coupling(&self, coupling: f64) -> Result<Self> {
        Self::new(self.box_half_width, self.barrier_half_width, coupling)
    }

    /// Width `L - l` of each outer free region.
    pub fn outer_width(&self) -> f64 {
        self.box_half_width - self.barrier_half_width
    }

    /// The three interior points where the potential jumps, in increasing order.
    pub fn matching_points(&self) -> [f64; 3] {
        let l = self.barrier_half_width;
        [-l, 0.0, l]
    }

    /// Open interval `(a, b)` covered by `region`.
    pub fn region_bounds(&self, region: Region) -> (f64, f64) {
        let (big, l) = (self.box_half_width, self.barrier_half_width);
        match region {
            Region::L2 => (-big, -l),
            Region::L1 => (-l, 0.0),
            Region::R1 => (0.0, l),
            Region::R2 => (l, big),
        }
    }

    /// Constant value of the potential on the open region.
    pub fn region_potential(&self, region: Region) -> Complex64 {
        match region {
            Region::L2 | Region::R2 => Complex64::new(0.0, 0.0),
            Region::L1 => Complex64::new(0.0, -self.coupling),
            Region::R1 => Complex64::new(0.0, self.coupling),
        }
    }

    pub(crate) fn check_closed(&self, x: f64) -> Result<()> {
        if x.is_nan() || x.abs() > self.box_half_width {
            return Err(Error::OutsideBox {
                x,
                half_width: self.box_half_width,
            });
        }
        Ok(())
    }

    pub(crate) fn check_open(&self, x: f64) -> Result<()> {
        if x.is_nan() || x.abs() >= self.box_half_width {
            return Err(Error::OutsideBox {
                x,
                half_width: self.box_half_width,
            });
        }
        Ok(())
    }

    /// Region whose branch formula is used at `x` on the closed box:
    /// interior points map to their region, matching points to the region on
    /// their right, and `x = L` to `R2`.
    pub(crate) fn right_region(&self, x: f64) -> Region {
        let l = self.barrier_half_width;
        if x < -l {
            Region::L2
        } else if x < 0.0 {
            Region::L1
        } else if x < l {
            Region::R1
        } else {
            Region::R2
        }
    }
}

/// The four open intervals between the walls and the matching points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    /// `(-L, -l)`
    L2,
    /// `(-l, 0)`
    L1,
    /// `(0, l)`
    R1,
    /// `(l, L)`
    R2,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::L2, Region::L1, Region::R1, Region::R2];

    /// PT image of the region (`x -> -x`).
    pub fn mirror(self) -> Region {
        match self {
            Region::L2 => Region::R2,
            Region::L1 => Region::R1,
            Region::R1 => Region::L1,
            Region::R2 => Region::L2,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Region::L2 => "L2",
            Region::L1 => "L1",
            Region::R1 => "R1",
            Region::R2 => "R2",
        };
        f.write_str(name)
    }
}

/// The three interior jump points `-l`, `0`, `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatchingPoint {
    MinusL,
    Origin,
    PlusL,
}

impl MatchingPoint {
    pub const ALL: [MatchingPoint; 3] = [MatchingPoint::MinusL, MatchingPoint::Origin, MatchingPoint::PlusL];

    pub fn position(self, cfg: &WellConfig) -> f64 {
        match self {
            MatchingPoint::MinusL => -cfg.barrier_half_width(),
            MatchingPoint::Origin => 0.0,
            MatchingPoint::PlusL => cfg.barrier_half_width(),
        }
    }

    /// Regions on the left and right of the point.
    pub fn sides(self) -> (Region, Region) {
        match self {
            MatchingPoint::MinusL => (Region::L2, Region::L1),
            MatchingPoint::Origin => (Region::L1, Region::R1),
            MatchingPoint::PlusL => (Region::R1, Region::R2),
        }
    }
}

impl fmt::Display for MatchingPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MatchingPoint::MinusL => "-l",
            MatchingPoint::Origin => "0",
            MatchingPoint::PlusL => "+l",
        };
        f.write_str(name)
    }
}

/// One real bound state of the well, expressed through the secular variables.
///
/// `kappa = s + i t` is the complex wavenumber inside the barrier,
/// `k = sqrt(t² - s²)` the real wavenumber outside, and `E = k²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralRoot {
    pub s: f64,
    pub t: f64,
    pub k: f64,
    pub energy: f64,
    /// Position in the list of real levels, ascending in energy from 0.
    pub index: usize,
}

impl SpectralRoot {
    /// `kappa = s + i t`.
    pub fn kappa(&self) -> Complex64 {
        Complex64::new(self.s, self.t)
    }

    /// Mismatch `2st - g` of the hyperbola constraint.
    pub fn constraint_residual(&self, cfg: &WellConfig) -> f64 {
        2.0 * self.s * self.t - cfg.coupling()
    }
}

/// Complex potential `V(x) = V^r(x) + i V^i(x)` inside the box.
///
/// At the jump points the average of the one-sided limits is returned
/// (`0` at the origin and `∓ i g / 2` at `∓ l`).
pub fn potential_value(cfg: &WellConfig, x: f64) -> Result<Complex64> {
    cfg.check_open(x)?;
    let l = cfg.barrier_half_width();
    let g = cfg.coupling();
    let v = if x == 0.0 {
        0.0
    } else if x == l {
        0.5 * g
    } else if x == -l {
        -0.5 * g
    } else if x > 0.0 && x < l {
        g
    } else if x < 0.0 && x > -l {
        -g
    } else {
        0.0
    };
    Ok(Complex64::new(0.0, v))
}

/// The region whose open interval contains `x`.
pub fn classify_region(cfg: &WellConfig, x: f64) -> Result<Region> {
    cfg.check_open(x)?;
    if cfg.matching_points().contains(&x) {
        return Err(Error::AtMatchingPoint { x });
    }
    Ok(cfg.right_region(x))
}

/// `count` first-kind Chebyshev nodes on `(a + margin, b - margin)`, ascending.
pub fn chebyshev_nodes(a: f64, b: f64, margin: f64, count: usize) -> Vec<f64> {
    let (lo, hi) = (a + margin, b - margin);
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..count)
        .rev()
        .map(|j| {
            let theta = std::f64::consts::PI * (2 * j + 1) as f64 / (2 * count) as f64;
            mid + half * theta.cos()
        })
        .collect()
}
