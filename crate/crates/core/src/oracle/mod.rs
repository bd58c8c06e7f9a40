//! Independent finite-difference check of the spectrum.
//!
//! `-d²/dx² + V` on `(-L_eff, L_eff)` with Dirichlet ends is discretized by
//! the three-point stencil on `n` interior nodes. The resulting matrix is
//! complex symmetric and tridiagonal; all its eigenvalues are computed.
//! Halving the spacing and combining `(4 E_fine - E_coarse) / 3` removes the
//! leading `h²` error.

pub mod tridiag;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::well::{potential_value, WellConfig};

pub use tridiag::{refine_eigenvalue, symmetric_tridiagonal_eigenvalues};

/// Smallest grid accepted by [`fd_spectrum`].
pub const MIN_GRID: usize = 200;

/// Number of lowest eigenvalues polished by inverse iteration after the QL
/// solve. The non-unitary rotations of QL lose several digits on large
/// grids; refinement brings these levels back to rounding level.
pub const REFINED_LEVELS: usize = 64;

/// Default bound on `|Im E|` for an eigenvalue to count as real.
pub const DEFAULT_IMAG_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSpectrum {
    /// Interior nodes of the (finest) grid.
    pub grid_size: usize,
    pub half_width: f64,
    /// Every eigenvalue of the finest grid, ascending in real part; the
    /// lowest [`REFINED_LEVELS`] are refined.
    pub eigenvalues: Vec<Complex64>,
    /// Interior nodes of the coarse grid when two grids were combined.
    pub coarse_grid_size: Option<usize>,
    /// Extrapolated lowest levels, present only when two grids were combined.
    pub richardson_eigenvalues: Option<Vec<Complex64>>,
    pub imag_threshold: f64,
}

impl OracleSpectrum {
    /// Best available estimate of the lowest `n` levels.
    pub fn best(&self, n: usize) -> Vec<Complex64> {
        match &self.richardson_eigenvalues {
            Some(r) => r.iter().take(n).copied().collect(),
            None => self.eigenvalues.iter().take(n).copied().collect(),
        }
    }

    /// Levels among [`OracleSpectrum::best`] with `|Im E|` below the threshold.
    pub fn near_real(&self, n: usize) -> Vec<f64> {
        self.best(n)
            .into_iter()
            .filter(|z| z.im.abs() < self.imag_threshold)
            .map(|z| z.re)
            .collect()
    }
}

fn sort_levels(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Interior nodes `x_j = -L_eff + j h`, `h = 2 L_eff / (n + 1)`.
///
/// Computed as `h (j - (n+1)/2)` so that `x_(n+1-j) = -x_j` holds exactly
/// and the centre node of an odd grid is exactly 0. Otherwise rounding
/// puts that node a few ulps off the jump at the origin and the discrete
/// operator loses its PT symmetry at first order in `h`.
pub fn grid_nodes(half_width: f64, n: usize) -> Vec<f64> {
    let h = 2.0 * half_width / (n + 1) as f64;
    let centre = (n + 1) as f64 / 2.0;
    (1..=n).map(|j| h * (j as f64 - centre)).collect()
}

/// All eigenvalues of the discretized operator on `n` interior nodes,
/// ascending in real part.
pub fn fd_spectrum<F>(potential: F, half_width: f64, n: usize) -> Result<OracleSpectrum>
where
    F: Fn(f64) -> Complex64,
{
    if n < MIN_GRID {
        return Err(Error::GridTooSmall { n, min: MIN_GRID });
    }
    if !(half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "half width must be positive, got {half_width}"
        )));
    }
    let h = 2.0 * half_width / (n + 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let diag: Vec<Complex64> = grid_nodes(half_width, n)
        .into_iter()
        .map(|x| Complex64::new(2.0 * inv_h2, 0.0) + potential(x))
        .collect();
    let off = vec![Complex64::new(-inv_h2, 0.0); n - 1];
    let mut eigenvalues = symmetric_tridiagonal_eigenvalues(&diag, &off)?;
    sort_levels(&mut eigenvalues);
    let rough = eigenvalues.clone();
    for (i, z) in eigenvalues.iter_mut().enumerate().take(REFINED_LEVELS) {
        let gap = rough
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, w)| (w - *z).norm())
            .fold(f64::INFINITY, f64::min);
        if let Some(r) = refine_eigenvalue(&diag, &off, *z, 0.25 * gap) {
            *z = r;
        }
    }
    sort_levels(&mut eigenvalues);
    Ok(OracleSpectrum {
        grid_size: n,
        half_width,
        eigenvalues,
        coarse_grid_size: None,
        richardson_eigenvalues: None,
        imag_threshold: DEFAULT_IMAG_THRESHOLD,
    })
}

/// Spectra on `n` and `2n + 1` interior nodes (spacing exactly halved) and
/// the Richardson combination of the lowest `n_levels`.
///
/// Each coarse level is paired with the nearest fine eigenvalue; the pair is
/// rejected unless that distance is below a tenth of the gap to the
/// neighbouring coarse levels.
pub fn fd_spectrum_extrapolated<F>(potential: F, half_width: f64, n: usize, n_levels: usize) -> Result<OracleSpectrum>
where
    F: Fn(f64) -> Complex64,
{
    let coarse = fd_spectrum(&potential, half_width, n)?;
    let fine = fd_spectrum(&potential, half_width, 2 * n + 1)?;
    let n_levels = n_levels.min(n);
    let mut extrapolated = Vec::with_capacity(n_levels);
    let mut used = vec![false; fine.eigenvalues.len()];
    for i in 0..n_levels {
        let ec = coarse.eigenvalues[i];
        let gap = coarse
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, z)| (z - ec).norm())
            .fold(f64::INFINITY, f64::min);
        let (j, dist) = fine
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|&(j, _)| !used[j])
            .map(|(j, z)| (j, (z - ec).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or(Error::LevelPairing { index: i })?;
        if dist > 0.1 * gap {
            return Err(Error::LevelPairing { index: i });
        }
        used[j] = true;
        extrapolated.push((4.0 * fine.eigenvalues[j] - ec) / 3.0);
    }
    sort_levels(&mut extrapolated);
    Ok(OracleSpectrum {
        coarse_grid_size: Some(n),
        richardson_eigenvalues: Some(extrapolated),
        ..fine
    })
}

/// Potential of the well for the grid: the jump points use the average of
/// the one-sided limits, and nodes within `1e-9 h` of a jump are snapped.
pub fn well_sampler(cfg: &WellConfig, n: usize) -> impl Fn(f64) -> Complex64 + '_ {
    let big_l = cfg.box_half_width();
    let h = 2.0 * big_l / (n + 1) as f64;
    move |x: f64| {
        let snapped = cfg
            .matching_points()
            .into_iter()
            .find(|p| (x - p).abs() < 1e-9 * h)
            .unwrap_or(x);
        potential_value(cfg, snapped).unwrap_or(Complex64::new(0.0, 0.0))
    }
}

/// Smallest interval count `>= min_intervals` that puts every point of
/// `jumps` on a node of the uniform grid over `(-half_width, half_width)`.
/// Searches up to `max_intervals`.
pub fn exact_fit_intervals(
    half_width: f64,
    jumps: &[f64],
    min_intervals: usize,
    max_intervals: usize,
) -> Option<usize> {
    (min_intervals.max(2)..=max_intervals).find(|&m| {
        jumps.iter().all(|&p| {
            let pos = (p + half_width) / (2.0 * half_width) * m as f64;
            (pos - pos.round()).abs() < 1e-9 * m as f64
        })
    })
}

/// Interior node count of the smallest grid of at least `min_intervals`
/// intervals on which the well's three jumps fall on nodes.
pub fn exact_fit_grid(cfg: &WellConfig, min_intervals: usize) -> Option<usize> {
    exact_fit_intervals(
        cfg.box_half_width(),
        &cfg.matching_points(),
        min_intervals,
        64 * min_intervals.max(16),
    )
    .map(|m| m - 1)
}

/// Oracle spectrum of the well on `n` and `2n + 1` interior nodes, with
/// Richardson extrapolation of the lowest `n_levels`.
pub fn well_spectrum(cfg: &WellConfig, n: usize, n_levels: usize) -> Result<OracleSpectrum> {
    let sampler = well_sampler(cfg, 2 * n + 1);
    fd_spectrum_extrapolated(sampler, cfg.box_half_width(), n, n_levels)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealityCensus {
    pub grid_size: usize,
    pub imag_threshold: f64,
    pub levels_examined: usize,
    pub near_real: usize,
    /// Complex levels as `(E, conj-partner)`, `Im E > 0` first.
    pub complex_pairs: Vec<(Complex64, Complex64)>,
    /// Complex levels whose conjugate partner was not found.
    pub unpaired: Vec<Complex64>,
    /// Levels with `|Im E|` within a factor 10 of the threshold, whose
    /// classification is unreliable.
    pub borderline: Vec<Complex64>,
}

impl RealityCensus {
    pub fn is_unbroken(&self) -> bool {
        self.complex_pairs.is_empty() && self.unpaired.is_empty()
    }
}

/// Classify the lowest `n_levels` oracle eigenvalues of the well as real or
/// complex on a single grid of `n` interior nodes. A level cut off from its
/// conjugate partner by the `n_levels` boundary pulls the partner in.
pub fn oracle_reality_census(
    cfg: &WellConfig,
    n: usize,
    imag_threshold: f64,
    n_levels: usize,
) -> Result<RealityCensus> {
    let fd = fd_spectrum(well_sampler(cfg, n), cfg.box_half_width(), n)?;
    let all = &fd.eigenvalues;
    let mut take = n_levels.min(all.len());
    let pair_tol = |z: Complex64| 1e-6 * z.norm().max(1.0);
    let partner_of = |z: Complex64, pool: &[Complex64]| pool.iter().position(|w| (w - z.conj()).norm() < pair_tol(z));
    while take < all.len() {
        let open = all[..take]
            .iter()
            .filter(|z| z.im.abs() >= imag_threshold)
            .any(|z| partner_of(*z, &all[..take]).is_none() && partner_of(*z, &all[take..]).is_some());
        if !open {
            break;
        }
        take += 1;
    }
    let levels = &all[..take];
    let mut near_real = 0;
    let mut borderline = Vec::new();
    let mut complex: Vec<Complex64> = Vec::new();
    for &z in levels {
        let a = z.im.abs();
        if a < imag_threshold {
            near_real += 1;
        } else {
            complex.push(z);
        }
        if a < 10.0 * imag_threshold && a > 0.1 * imag_threshold {
            borderline.push(z);
        }
    }
    let mut complex_pairs = Vec::new();
    let mut unpaired = Vec::new();
    let mut taken = vec![false; complex.len()];
    for i in 0..complex.len() {
        if taken[i] || complex[i].im < 0.0 {
            continue;
        }
        let z = complex[i];
        let partner = (0..complex.len())
            .filter(|&j| !taken[j] && j != i && complex[j].im < 0.0)
            .min_by(|&a, &b| {
                (complex[a] - z.conj())
                    .norm()
                    .total_cmp(&(complex[b] - z.conj()).norm())
            })
            .filter(|&j| (complex[j] - z.conj()).norm() < pair_tol(z));
        if let Some(j) = partner {
            taken[i] = true;
            taken[j] = true;
            complex_pairs.push((z, complex[j]));
        }
    }
    for (i, z) in complex.iter().enumerate() {
        if !taken[i] {
            unpaired.push(*z);
        }
    }
    Ok(RealityCensus {
        grid_size: n,
        imag_threshold,
        levels_examined: take,
        near_real,
        complex_pairs,
        unpaired,
        borderline,
    })
}
