//! The trigonometric secular equation in the variables `(s, t)`.
//!
//! With `kappa = s + i t`, `k = sqrt(t² - s²)` and `a = L - l`, the residual
//!
//! ```text
//! F(s, t) = k sin(2ka) [s² cosh(2sl) + t² cos(2tl)]
//!         - cos(2ka) [s³ sinh(2sl) - t³ sin(2tl)]
//!         + s t² sinh(2sl) - s² t sin(2tl)
//! ```
//!
//! vanishes exactly at the real bound states once the hyperbola `2st = g` is
//! imposed. `F` also vanishes identically on the diagonal `s = t` (`k = 0`),
//! which carries no wavefunction. `F` depends on `k` only through `k²`, so it
//! continues analytically below the diagonal, and `F / k²` is regular there.
//! The root scan and the curve tracer work with that reduced form.

mod ovals;

pub use ovals::{hyperbola_intersections, trace_semi_ovals, OvalOptions, OvalPoint};

use crate::error::{Error, Result};
use crate::roots::{scan_roots, ScanSettings};
use crate::well::{SpectralRoot, WellConfig};

/// Raw secular residual `F(s, t)` for `t >= s > 0`. The coupling stored in
/// `cfg` is not used; only `L` and `l` enter.
pub fn secular_residual(cfg: &WellConfig, s: f64, t: f64) -> Result<f64> {
    if !(s > 0.0) || !(t >= s) || !t.is_finite() {
        return Err(Error::SecularDomain { s, t });
    }
    let q = (t - s) * (t + s);
    Ok(residual_terms(cfg, s, t, q).0)
}

/// Sum of the absolute values of the six terms of `F(s, t)`; the natural
/// scale for judging how small a residual is.
pub fn secular_residual_scale(cfg: &WellConfig, s: f64, t: f64) -> f64 {
    let q = (t - s) * (t + s);
    residual_terms(cfg, s, t, q).1
}

/// `(F, Σ|terms|)` with `q = k²`, continued to `q < 0` through `k = i√(-q)`.
pub(crate) fn residual_terms(cfg: &WellConfig, s: f64, t: f64, q: f64) -> (f64, f64) {
    let l = cfg.barrier_half_width();
    let a = cfg.outer_width();
    let (k_sin, cos_) = if q >= 0.0 {
        let k = q.sqrt();
        (k * (2.0 * k * a).sin(), (2.0 * k * a).cos())
    } else {
        let kk = (-q).sqrt();
        (-kk * (2.0 * kk * a).sinh(), (2.0 * kk * a).cosh())
    };
    let (sh, ch) = ((2.0 * s * l).sinh(), (2.0 * s * l).cosh());
    let (sn, cs) = ((2.0 * t * l).sin(), (2.0 * t * l).cos());
    let terms = [
        k_sin * s * s * ch,
        k_sin * t * t * cs,
        -cos_ * s * s * s * sh,
        cos_ * t * t * t * sn,
        s * t * t * sh,
        -s * s * t * sn,
    ];
    let value = terms.iter().sum();
    let scale = terms.iter().map(|v| v.abs()).sum();
    (value, scale)
}

/// `F / (k² · N(s, t))` with a positive normalisation `N`; same zero set as
/// `F` away from the diagonal, finite on it.
pub(crate) fn reduced_residual(cfg: &WellConfig, s: f64, t: f64, q: f64) -> f64 {
    let (value, _) = residual_terms(cfg, s, t, q);
    let l = cfg.barrier_half_width();
    let norm = (2.0 * s * l).cosh() * (1.0 + s + t).powi(3);
    value / (q * norm)
}

/// Point `(s, t)` on `2st = g` with `t² - s² = k²`.
pub fn hyperbola_point(coupling: f64, k: f64) -> (f64, f64) {
    let k2 = k * k;
    let t = (0.5 * (k2 + k2.hypot(coupling))).sqrt();
    let s = if t > 0.0 { 0.5 * coupling / t } else { 0.0 };
    (s, t)
}

/// Wavenumber `k` at which the hyperbola reaches `t`.
pub fn hyperbola_wavenumber(coupling: f64, t: f64) -> f64 {
    let s = 0.5 * coupling / t;
    ((t - s) * (t + s)).max(0.0).sqrt()
}

/// Controls for the hyperbola root scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Sampling step in `k`; `None` means `min(0.05, π / 8L)`.
    pub step: Option<f64>,
    /// Absolute bracket width at which refinement stops.
    pub tol: f64,
    pub tangency: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            step: None,
            tol: 1e-12,
            tangency: true,
        }
    }
}

impl ScanOptions {
    pub fn step_for(&self, cfg: &WellConfig) -> f64 {
        self.step
            .unwrap_or_else(|| (std::f64::consts::PI / (8.0 * cfg.box_half_width())).min(0.05))
    }
}

/// Real roots of the secular system with `t <= t_max`, ascending in energy.
///
/// The hyperbola is parametrised by `k`, so the excluded `s = t` point sits
/// at `k = 0` and never enters the scan. An empty result means no real level
/// lies in the window.
pub fn find_roots_on_hyperbola(cfg: &WellConfig, t_max: f64) -> Result<Vec<SpectralRoot>> {
    find_roots_on_hyperbola_with(cfg, t_max, &ScanOptions::default())
}

pub fn find_roots_on_hyperbola_with(cfg: &WellConfig, t_max: f64, opts: &ScanOptions) -> Result<Vec<SpectralRoot>> {
    let g = cfg.coupling();
    let t_min = (0.5 * g).sqrt();
    if !(t_max > t_min) {
        return Err(Error::EmptyScanWindow { t_max, t_min });
    }
    Ok(roots_below_wavenumber(cfg, hyperbola_wavenumber(g, t_max), opts))
}

/// Real roots with `0 < k <= k_max`, ascending.
pub fn roots_below_wavenumber(cfg: &WellConfig, k_max: f64, opts: &ScanOptions) -> Vec<SpectralRoot> {
    let g = cfg.coupling();
    let step = opts.step_for(cfg);
    let k_lo = 0.25 * step;
    if !(k_max > k_lo) {
        return Vec::new();
    }
    let f = |k: f64| {
        let (s, t) = hyperbola_point(g, k);
        reduced_residual(cfg, s, t, k * k)
    };
    let settings = ScanSettings {
        step,
        tol: opts.tol,
        tangency: opts.tangency,
    };
    scan_roots(f, k_lo, k_max, settings)
        .into_iter()
        .enumerate()
        .map(|(index, k)| {
            let (s, t) = hyperbola_point(g, k);
            SpectralRoot {
                s,
                t,
                k,
                energy: k * k,
                index,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn geom(l: f64) -> WellConfig {
        WellConfig::geometry(1.0, l).unwrap()
    }

    #[test]
    fn diagonal_is_a_trivial_zero() {
        let c = geom(0.3);
        assert_eq!(secular_residual(&c, 2.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn domain_errors() {
        let c = geom(0.3);
        assert!(matches!(
            secular_residual(&c, 2.0, 1.0),
            Err(Error::SecularDomain { .. })
        ));
        assert!(secular_residual(&c, 0.0, 1.0).is_err());
        assert!(secular_residual(&c, -1.0, 1.0).is_err());
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn residual_matches_extended_precision() {
        // Frozen from tests/oracles/secular_mp.py (50 digits).
        let cases = [
            (1.0, 0.04, 1.0, 10.0, 871.896175082777482843356051036),
            (1.0, 0.3, 0.7, 2.5, -14.9082406049791458273523444354),
            (1.0, 0.5, 0.25, 3.75, 50.1453650271303868741681236996),
            (2.0, 0.1, 3.0, 20.0, -3704.60651239140677266746588045),
        ];
        for (big_l, l, s, t, expected) in cases {
            let c = WellConfig::geometry(big_l, l).unwrap();
            let got = secular_residual(&c, s, t).unwrap();
            let scale = secular_residual_scale(&c, s, t);
            assert!(
                (got - expected).abs() <= 1e-14 * scale,
                "({big_l}, {l}, {s}, {t}): {got} vs {expected}"
            );
        }
    }

    #[test]
    fn small_barrier_limit_reduces_to_free_well() {
        let c = geom(1e-12);
        for &(s, t) in &[(0.3f64, 2.0f64), (1.0, 4.5), (0.05, 7.0)] {
            let k = ((t - s) * (t + s)).sqrt();
            let expected = k * (s * s + t * t) * (2.0 * k).sin();
            let got = secular_residual(&c, s, t).unwrap();
            assert!(
                (got - expected).abs() < 1e-9 * (1.0 + expected.abs()),
                "{got} vs {expected}"
            );
        }
    }

    #[test]
    fn hyperbola_point_round_trips() {
        for &(g, k) in &[(2.0, 1.3), (650.0, 25.0), (1e6, 3.1), (0.0, 4.0)] {
            let (s, t) = hyperbola_point(g, k);
            assert!((2.0 * s * t - g).abs() <= 1e-12 * g.max(1.0));
            assert!(((t - s) * (t + s) - k * k).abs() <= 1e-9 * k * k);
            assert!((hyperbola_wavenumber(g, t) - k).abs() <= 1e-8 * k);
        }
    }

    #[test]
    fn hermitian_limit_gives_free_levels() {
        let c = WellConfig::new(1.0, 0.3, 1e-9).unwrap();
        let roots = find_roots_on_hyperbola(&c, 10.0).unwrap();
        assert_eq!(roots.len(), 6);
        for (n, r) in roots.iter().enumerate() {
            let kn = (n + 1) as f64 * PI / 2.0;
            assert!((r.k - kn).abs() < 1e-6, "level {n}: {}", r.k);
            assert_eq!(r.index, n);
        }
        assert!((roots[0].energy - 2.4674011002723395).abs() < 1e-6);
    }

    #[test]
    fn zero_coupling_is_exactly_the_free_well() {
        let c = WellConfig::new(1.0, 0.5, 0.0).unwrap();
        let roots = find_roots_on_hyperbola(&c, 8.0).unwrap();
        assert_eq!(roots.len(), 5);
        for (n, r) in roots.iter().enumerate() {
            assert!((r.k - (n + 1) as f64 * PI / 2.0).abs() < 1e-11);
            assert_eq!(r.s, 0.0);
        }
    }

    #[test]
    fn roots_satisfy_the_secular_system() {
        for &(l, g) in &[(0.5, 2.0), (0.3, 10.0), (0.04, 650.0), (0.999, 4.0)] {
            let c = WellConfig::new(1.0, l, g).unwrap();
            let roots = find_roots_on_hyperbola(&c, 30.0).unwrap();
            assert!(!roots.is_empty());
            for r in &roots {
                let res = secular_residual(&c, r.s, r.t).unwrap();
                let scale = secular_residual_scale(&c, r.s, r.t);
                assert!(res.abs() < 1e-9 * scale, "l={l} g={g} E={}: {res} / {scale}", r.energy);
                assert!(r.constraint_residual(&c).abs() < 1e-12 * g);
                assert!(r.t - r.s > 1e-3, "spurious s = t root leaked");
                assert!((r.k * r.k - (r.t * r.t - r.s * r.s)).abs() < 1e-9 * r.energy);
            }
            assert!(roots.windows(2).all(|w| w[0].energy < w[1].energy));
        }
    }

    #[test]
    fn spurious_root_never_appears_at_scan_start() {
        // Window barely above the diagonal point t = sqrt(g/2) = 1.
        let c = WellConfig::new(1.0, 0.5, 2.0).unwrap();
        let roots = find_roots_on_hyperbola(&c, 1.0 + 1e-6).unwrap();
        assert!(roots.is_empty());
        assert!(matches!(
            find_roots_on_hyperbola(&c, 1.0),
            Err(Error::EmptyScanWindow { .. })
        ));
    }

    #[test]
    fn roots_scale_with_the_box() {
        let lambda = 2.5;
        let base = WellConfig::new(1.0, 0.3, 5.0).unwrap();
        let scaled = WellConfig::new(lambda, 0.3 * lambda, 5.0 / (lambda * lambda)).unwrap();
        let a = find_roots_on_hyperbola(&base, 12.0).unwrap();
        let b = find_roots_on_hyperbola(&scaled, 12.0 / lambda).unwrap();
        assert!(a.len() >= 3);
        for (ra, rb) in a.iter().zip(&b).take(3) {
            assert!((rb.s - ra.s / lambda).abs() < 1e-10);
            assert!((rb.t - ra.t / lambda).abs() < 1e-10);
        }
    }

    #[test]
    fn full_barrier_limit_matches_single_discontinuity_equation() {
        let big_l = 1.0;
        let c = WellConfig::new(big_l, 1.0 - 1e-9, 3.0).unwrap();
        let roots = find_roots_on_hyperbola(&c, 12.0).unwrap();
        assert!(roots.len() >= 4);
        let g = c.coupling();
        let limit = |k: f64| {
            let (s, t) = hyperbola_point(g, k);
            s * (2.0 * s * big_l).sinh() + t * (2.0 * t * big_l).sin()
        };
        for r in &roots {
            let k = crate::roots::bisect(limit, r.k - 0.01, r.k + 0.01, 1e-14, 200).unwrap();
            assert!((k - r.k).abs() < 1e-6 * r.k, "{k} vs {}", r.k);
        }
    }
}
