//! Energy levels, their high-level asymptotics and the critical coupling.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::secular::{roots_below_wavenumber, ScanOptions};
use crate::well::{SpectralRoot, WellConfig};

/// The lowest real levels of a configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevels {
    pub requested: usize,
    pub roots: Vec<SpectralRoot>,
}

impl EnergyLevels {
    pub fn energies(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.energy).collect()
    }

    /// How many of the requested levels are not real.
    pub fn missing(&self) -> usize {
        self.requested.saturating_sub(self.roots.len())
    }

    pub fn is_complete(&self) -> bool {
        self.missing() == 0
    }
}

/// The `n_levels` lowest real energies, ascending.
///
/// Levels that have paired off into complex values are skipped, so above the
/// critical coupling the list starts higher up. The scan extends past the
/// requested count far enough to cover every pair the barrier can have
/// broken; fewer levels than requested is reported through
/// [`EnergyLevels::missing`], not as an error.
pub fn energies(cfg: &WellConfig, n_levels: usize) -> Result<EnergyLevels> {
    energies_with(cfg, n_levels, &ScanOptions::default())
}

/// [`energies`] with explicit scan controls.
pub fn energies_with(cfg: &WellConfig, n_levels: usize, opts: &ScanOptions) -> Result<EnergyLevels> {
    if n_levels == 0 {
        return Err(Error::InvalidArgument("n_levels must be positive".into()));
    }
    let big_l = cfg.box_half_width();
    let pair_end = |n: usize| (2.0 * n.div_ceil(2) as f64 + 0.5) * PI / (2.0 * big_l);
    let g = cfg.coupling();
    let reach = (g * g * cfg.barrier_half_width() * big_l.powi(3)).cbrt();
    let n_cap = n_levels + 2 * (reach.ceil() as usize) + 2;

    let mut n_window = n_levels;
    loop {
        let mut roots = roots_below_wavenumber(cfg, pair_end(n_window), opts);
        if roots.len() >= n_levels || n_window >= n_cap {
            roots.truncate(n_levels);
            return Ok(EnergyLevels {
                requested: n_levels,
                roots,
            });
        }
        n_window = (n_window + 2 * (n_levels - roots.len())).min(n_cap);
    }
}

/// High-level wavenumber `k_n ≈ nπ/2L + (-1)^(n+1) 2g²lL²/(π³n³)`, `n >= 1`.
pub fn asymptotic_wavenumber(cfg: &WellConfig, n: usize) -> f64 {
    let (big_l, l, g) = (cfg.box_half_width(), cfg.barrier_half_width(), cfg.coupling());
    let nf = n as f64;
    nf * PI / (2.0 * big_l) + parity(n) * 2.0 * g * g * l * big_l * big_l / (PI.powi(3) * nf.powi(3))
}

/// High-level energy `E_n ≈ (nπ/2L)² + (-1)^(n+1) 2g²lL/(π²n²)`, `n >= 1`.
pub fn asymptotic_energy(cfg: &WellConfig, n: usize) -> f64 {
    let (big_l, l, g) = (cfg.box_half_width(), cfg.barrier_half_width(), cfg.coupling());
    let nf = n as f64;
    let free = nf * PI / (2.0 * big_l);
    free * free + parity(n) * 2.0 * g * g * l * big_l / (PI * PI * nf * nf)
}

fn parity(n: usize) -> f64 {
    if n % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalCoupling {
    pub barrier_half_width: f64,
    pub box_half_width: f64,
    pub g_c: f64,
    /// Mean of the two lowest energies at the unbroken end of the bracket.
    pub merge_energy: f64,
    pub bracket_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalOptions {
    /// Relative width of the final coupling bracket; at least `1e-6`.
    pub tol_rel: f64,
    /// Largest coupling tried before giving up; `None` picks a bound well
    /// above the expected `g_c`.
    pub g_upper: Option<f64>,
    /// Two roots closer than this in `t` count as merged.
    pub merge_separation: f64,
}

impl Default for CriticalOptions {
    fn default() -> Self {
        Self {
            tol_rel: 1e-5,
            g_upper: None,
            merge_separation: 1e-6,
        }
    }
}

/// The two lowest real roots, if both exist and are distinct.
fn lowest_pair(cfg: &WellConfig, separation: f64) -> Option<(SpectralRoot, SpectralRoot)> {
    // The window ends midway between the second and third free levels, so
    // it holds exactly the lowest pair while that pair is real.
    let k_window = 5.0 * PI / (4.0 * cfg.box_half_width());
    let roots = roots_below_wavenumber(cfg, k_window, &ScanOptions::default());
    match roots.as_slice() {
        [a, b, ..] if (b.t - a.t).abs() > separation => Some((*a, *b)),
        _ => None,
    }
}

/// Coupling at which the two lowest levels coalesce, by bisection on `g`.
pub fn critical_coupling(
    barrier_half_width: f64,
    box_half_width: f64,
    opts: &CriticalOptions,
) -> Result<CriticalCoupling> {
    if !(opts.tol_rel >= 1e-6 && opts.tol_rel < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "tol_rel must lie in [1e-6, 1), got {}",
            opts.tol_rel
        )));
    }
    let geom = WellConfig::geometry(box_half_width, barrier_half_width)?;
    let unbroken = |g: f64| -> Result<Option<(SpectralRoot, SpectralRoot)>> {
        Ok(lowest_pair(&geom.with_coupling(g)?, opts.merge_separation))
    };

    let scale =
        (box_half_width / barrier_half_width.max(1e-3 * box_half_width)).powf(1.2) / (box_half_width * box_half_width);
    let mut lo = scale;
    let mut hi = 8.0 * scale;
    let g_upper = opts.g_upper.unwrap_or(4096.0 * hi);

    let mut lo_pair = unbroken(lo)?;
    let mut halvings = 0;
    while lo_pair.is_none() {
        hi = lo;
        lo *= 0.5;
        halvings += 1;
        if halvings > 60 {
            return Err(Error::BrokenAtLowerBound { coupling: lo });
        }
        lo_pair = unbroken(lo)?;
    }
    if hi > g_upper {
        hi = g_upper;
    }
    while unbroken(hi)?.is_some() {
        if hi >= g_upper {
            return Err(Error::NoMerge {
                barrier_half_width,
                g_upper,
            });
        }
        lo = hi;
        hi = (2.0 * hi).min(g_upper);
    }
    lo_pair = unbroken(lo)?;

    while (hi - lo) > opts.tol_rel * hi {
        let mid = 0.5 * (lo + hi);
        match unbroken(mid)? {
            Some(pair) => {
                lo = mid;
                lo_pair = Some(pair);
            }
            None => hi = mid,
        }
    }
    let (a, b) = lo_pair.expect("lower bracket end is unbroken");
    Ok(CriticalCoupling {
        barrier_half_width,
        box_half_width,
        g_c: 0.5 * (lo + hi),
        merge_energy: 0.5 * (a.energy + b.energy),
        bracket_width: hi - lo,
    })
}

/// [`critical_coupling`] for each barrier width, in input order. A failure
/// for one entry does not stop the others.
pub fn gc_sweep(
    box_half_width: f64,
    barrier_half_widths: &[f64],
    opts: &CriticalOptions,
) -> Vec<Result<CriticalCoupling>> {
    barrier_half_widths
        .par_iter()
        .map(|&l| critical_coupling(l, box_half_width, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secular::{trace_semi_ovals, OvalOptions};

    fn cfg(l: f64, g: f64) -> WellConfig {
        WellConfig::new(1.0, l, g).unwrap()
    }

    #[test]
    fn hermitian_limit_levels() {
        let lv = energies(&cfg(0.5, 1e-9), 3).unwrap();
        assert!(lv.is_complete());
        let e = lv.energies();
        for (n, want) in [2.4674, 9.8696, 22.2066].iter().enumerate() {
            assert!((e[n] - want).abs() < 1e-4, "{e:?}");
        }
    }

    #[test]
    fn single_discontinuity_limit_is_nearly_degenerate() {
        let e = energies(&cfg(1.0 - 1e-9, 4.475), 2).unwrap().energies();
        assert_eq!(e.len(), 2);
        assert!((e[1] - e[0]) / e[0] < 0.05, "{e:?}");
        let free_gap = (PI * PI) - (PI * PI / 4.0);
        assert!(e[1] - e[0] < 0.05 * free_gap);
    }

    #[test]
    fn broken_pairs_are_skipped_and_reported() {
        // g_c(0.5) ≈ 6.44, so the lowest pair is complex at g = 8.
        let lv = energies(&cfg(0.5, 8.0), 4).unwrap();
        assert!(lv.is_complete());
        assert!(lv.roots[0].energy > 15.0, "{:?}", lv.energies());
        assert!(energies(&cfg(0.5, 8.0), 0).is_err());
    }

    #[test]
    fn asymptotic_examples() {
        assert!((asymptotic_wavenumber(&cfg(0.3, 0.0), 5) - 2.5 * PI).abs() < 1e-15);
        let want = 10.0 * PI - 2.0 * 100.0 * 0.04 / (PI.powi(3) * 8000.0);
        assert!((asymptotic_wavenumber(&cfg(0.04, 10.0), 20) - want).abs() < 1e-14);
        assert!((asymptotic_energy(&cfg(0.3, 0.0), 3) - 9.0 * PI * PI / 4.0).abs() < 1e-13);
    }

    // The closed forms miss a parity-independent shift: the exact levels
    // sit below them by g²lL²/(π³n³) in k and g²lL/(π²n²) in E.
    #[test]
    fn wavenumber_error_is_a_third_order_shift() {
        let c = cfg(0.3, 5.0);
        let lv = energies(&c, 128).unwrap();
        let missing = -25.0 * 0.3 / PI.powi(3);
        for n in [32usize, 33, 64, 65, 128] {
            let scaled = (lv.roots[n - 1].k - asymptotic_wavenumber(&c, n)) * (n as f64).powi(3);
            assert!((scaled / missing - 1.0).abs() < 0.15, "n = {n}: {scaled} vs {missing}");
        }
    }

    #[test]
    fn energy_error_is_second_order_and_shift_alternates() {
        let c = cfg(0.3, 5.0);
        let lv = energies(&c, 128).unwrap();
        let missing = -25.0 * 0.3 / (PI * PI);
        for n in [32usize, 33, 64, 65, 128] {
            let scaled = (lv.roots[n - 1].energy - asymptotic_energy(&c, n)) * (n as f64).powi(2);
            assert!((scaled / missing - 1.0).abs() < 0.15, "n = {n}: {scaled} vs {missing}");
        }
        for n in 10..128 {
            let free = (n as f64 * PI / 2.0).powi(2);
            let shift = lv.roots[n - 1].energy - free;
            assert_eq!(shift > 0.0, n % 2 == 1, "n = {n}: {shift}");
        }
    }

    #[test]
    fn weak_coupling_shift_is_second_order() {
        let shift = |g: f64| {
            let e = energies(&cfg(0.3, g), 1).unwrap().energies()[0];
            e - PI * PI / 4.0
        };
        let (a, b) = (shift(1e-2), shift(2e-2));
        let ratio = b / a;
        assert!((ratio - 4.0).abs() < 0.05, "{a} {b} {ratio}");
    }

    #[test]
    fn critical_coupling_table_entry() {
        let c = critical_coupling(0.5, 1.0, &CriticalOptions::default()).unwrap();
        assert!((c.g_c - 6.4364).abs() < 1e-3 * 6.4364, "{c:?}");
        assert!(c.bracket_width <= 1e-5 * c.g_c);
        assert!(c.merge_energy > PI * PI / 4.0 && c.merge_energy < PI * PI);
    }

    #[test]
    fn critical_coupling_equals_first_oval_height() {
        for l in [0.5, 0.3] {
            let gc = critical_coupling(l, 1.0, &CriticalOptions::default()).unwrap().g_c;
            let geom = WellConfig::geometry(1.0, l).unwrap();
            let ovals = trace_semi_ovals(
                &geom,
                6.0,
                4.0,
                &OvalOptions {
                    s_cells: 600,
                    t_cells: 600,
                },
            );
            let first = ovals
                .iter()
                .find(|p| p[0].s == 0.0 && (p[0].t - PI / 2.0).abs() < 1e-6)
                .expect("oval rooted at π/2");
            let top = first.iter().map(|v| v.u).fold(0.0, f64::max);
            assert!((2.0 * top - gc).abs() < 2e-3 * gc, "l = {l}: {} vs {gc}", 2.0 * top);
        }
    }

    #[test]
    fn merging_is_sequential_from_below() {
        for l in [0.7, 0.5, 0.3] {
            let gc = critical_coupling(l, 1.0, &CriticalOptions::default()).unwrap().g_c;
            let k_max = 6.5 * PI / 2.0;
            let opts = ScanOptions::default();
            let below = roots_below_wavenumber(&cfg(l, 0.98 * gc), k_max, &opts);
            let above = roots_below_wavenumber(&cfg(l, 1.02 * gc), k_max, &opts);
            assert_eq!(below.len(), 6, "l = {l}");
            assert_eq!(above.len(), 4, "l = {l}");
            for (a, b) in above.iter().zip(&below[2..]) {
                assert!((a.energy - b.energy).abs() < 0.1 * b.energy);
            }
        }
    }

    #[test]
    fn no_merge_below_upper_bound_is_an_error() {
        let opts = CriticalOptions {
            g_upper: Some(3.0),
            ..CriticalOptions::default()
        };
        assert!(matches!(critical_coupling(0.5, 1.0, &opts), Err(Error::NoMerge { .. })));
        let bad = CriticalOptions {
            tol_rel: 1e-9,
            ..CriticalOptions::default()
        };
        assert!(critical_coupling(0.5, 1.0, &bad).is_err());
    }

    #[test]
    fn sweep_keeps_order_and_decreases_with_l() {
        let ls = [0.2, 0.3, 0.4, 0.5, 0.7];
        let out = gc_sweep(1.0, &ls, &CriticalOptions::default());
        let gcs: Vec<f64> = out.iter().map(|r| r.as_ref().unwrap().g_c).collect();
        for (r, l) in out.iter().zip(ls) {
            assert_eq!(r.as_ref().unwrap().barrier_half_width, l);
        }
        assert!(gcs.windows(2).all(|w| w[1] < w[0]), "{gcs:?}");
        let ratio = gcs[0] / gcs[2];
        assert!((ratio - 27.273 / 8.6011).abs() < 5e-3 * ratio);
        // g_c grows faster than 1/l for narrow barriers.
        let products: Vec<f64> = gcs[..4].iter().zip(ls).map(|(g, l)| g * l).collect();
        assert!(products.windows(2).all(|w| w[1] < w[0]), "{products:?}");
    }
}
