//! First SUSY partner of the well, factorized at the ground-state energy.
//!
//! The superpotential is `W = -psi0'/psi0`, so `A = d/dx + W` annihilates the
//! ground state and `V⁻ = W² + W' + E0`. Region by region:
//!
//! ```text
//! L2:  W = -k0 cot[k0(x + L)]                     V⁻ = 2k0² csc²[k0(x + L)]
//! L1:  W = -kappa0* tanh[kappa0*(x + x_L1)]        V⁻ = -2kappa0*² sech²[..] - i g
//! R1:  W = -kappa0 tanh[kappa0(x - x_R1)]          V⁻ = -2kappa0² sech²[..] + i g
//! R2:  W = -k0 cot[k0(x - L)]                     V⁻ = 2k0² csc²[k0(x - L)]
//! ```
//!
//! with complex `x_R1` fixed by the ground-state slope at the origin and
//! `x_L1 = conj(x_R1)`. Partner eigenfunctions are `i (psi' + W psi)` for the
//! excited states `psi` of the original well.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wavefunction::{branch_derivative, coefficients, WaveCoefficients};
use crate::well::{chebyshev_nodes, MatchingPoint, Region, SpectralRoot, WellConfig};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Distance from the walls, in units of `L`, inside which `W` and `V⁻` are
/// reported as poles.
pub const POLE_GUARD: f64 = 1e-8;

/// Tolerance on the real and imaginary split of the `x_R1` condition.
pub const SPLIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SusyParameters {
    pub k0: f64,
    pub kappa0: Complex64,
    /// Factorization energy `E0 = k0²`.
    pub e0: f64,
    pub x_l2: f64,
    pub x_r2: f64,
    pub x_r1: Complex64,
    pub x_l1: Complex64,
    /// Residuals of the real and imaginary split equations at `x_R1`.
    pub split_residuals: [f64; 2],
    /// Neighbouring branches `x_R1 ∓ iπ/kappa0`, which satisfy the same
    /// condition.
    pub branch_alternatives: [Complex64; 2],
}

/// Real and imaginary parts of the `x_R1` condition,
/// `tanh(kappa0 x_R1) = (N^r + i N^i) / D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSystem {
    pub n_r: f64,
    pub n_i: f64,
    pub d: f64,
    /// Sum of the magnitudes of the terms of `D`.
    pub d_scale: f64,
}

impl SplitSystem {
    pub fn new(cfg: &WellConfig, ground: &SpectralRoot) -> Self {
        let l = cfg.barrier_half_width();
        let (s0, t0, k0) = (ground.s, ground.t, ground.k);
        let (sn2, cs2) = (2.0 * k0 * cfg.outer_width()).sin_cos();
        let (sh, ch) = ((2.0 * s0 * l).sinh(), (2.0 * s0 * l).cosh());
        let (st, ct) = (2.0 * t0 * l).sin_cos();
        let p = -s0 * s0 * cs2 + t0 * t0;
        let q = s0 * s0 - t0 * t0 * cs2;
        let d_terms = [p * ch, q * ct, k0 * sn2 * s0 * sh, k0 * sn2 * t0 * st];
        Self {
            n_r: p * sh + k0 * s0 * sn2 * ch,
            n_i: q * st - k0 * t0 * sn2 * ct,
            d: d_terms.iter().sum(),
            d_scale: d_terms.iter().map(|v| v.abs()).sum(),
        }
    }

    /// `(lhs_r - N^r/D, lhs_i - N^i/D)` with `kappa0 x_R1 = X + iY`.
    pub fn residuals(&self, kappa0: Complex64, x_r1: Complex64) -> [f64; 2] {
        let z = kappa0 * x_r1;
        let (x, y) = (z.re, z.im);
        let den = x.cosh().powi(2) * y.cos().powi(2) + x.sinh().powi(2) * y.sin().powi(2);
        [
            x.sinh() * x.cosh() / den - self.n_r / self.d,
            y.sin() * y.cos() / den - self.n_i / self.d,
        ]
    }
}

/// Integration constants of the superpotential built on `ground`.
pub fn susy_parameters(cfg: &WellConfig, ground: &SpectralRoot) -> Result<SusyParameters> {
    let big_l = cfg.box_half_width();
    let l = cfg.barrier_half_width();
    let k0 = ground.k;
    let kappa0 = ground.kappa();
    let split = SplitSystem::new(cfg, ground);
    if split.d.abs() <= 1e-12 * split.d_scale {
        return Err(Error::VanishingDenominator { value: split.d });
    }

    // Right side of the condition, multiplied through by sin(ka) sinh(kappa l).
    let (sn, cs) = (k0 * cfg.outer_width()).sin_cos();
    let (sh, ch) = ((kappa0 * l).sinh(), (kappa0 * l).cosh());
    let rhs = (k0 * cs * ch + kappa0 * sn * sh) / (k0 * cs * sh + kappa0 * sn * ch);
    let principal = rhs.atanh();

    let candidates: Vec<(i32, Complex64, [f64; 2])> = [-1, 0, 1]
        .into_iter()
        .map(|m| {
            let x = (principal + I * PI * f64::from(m)) / kappa0;
            (m, x, split.residuals(kappa0, x))
        })
        .collect();
    let accepted = candidates
        .iter()
        .filter(|c| c.2[0].abs().max(c.2[1].abs()) <= SPLIT_TOLERANCE)
        .min_by(|a, b| (kappa0 * a.1).im.abs().total_cmp(&(kappa0 * b.1).im.abs()));
    let Some(&(_, x_r1, split_residuals)) = accepted else {
        let best = candidates
            .iter()
            .map(|c| c.2[0].abs().max(c.2[1].abs()))
            .fold(f64::INFINITY, f64::min);
        return Err(Error::NoBranch { residual: best });
    };
    let shift = I * PI / kappa0;
    Ok(SusyParameters {
        k0,
        kappa0,
        e0: k0 * k0,
        x_l2: big_l + PI / (2.0 * k0),
        x_r2: big_l - PI / (2.0 * k0),
        x_r1,
        x_l1: x_r1.conj(),
        split_residuals,
        branch_alternatives: [x_r1 - shift, x_r1 + shift],
    })
}

fn check_pole(cfg: &WellConfig, x: f64) -> Result<()> {
    let big_l = cfg.box_half_width();
    cfg.check_closed(x)?;
    if big_l - x.abs() < POLE_GUARD * big_l {
        return Err(Error::Pole { x });
    }
    Ok(())
}

/// `[W, W', W'']` from the branch formula of `region`, evaluated
/// analytically at `x` (one-sided limits at region ends).
pub fn superpotential_branch(p: &SusyParameters, cfg: &WellConfig, region: Region, x: f64) -> [Complex64; 3] {
    let big_l = cfg.box_half_width();
    match region {
        Region::L2 | Region::R2 => {
            let k0 = p.k0;
            let v = if region == Region::L2 {
                k0 * (x + big_l)
            } else {
                k0 * (x - big_l)
            };
            let cot = v.cos() / v.sin();
            let csc2 = 1.0 / v.sin().powi(2);
            [
                Complex64::from(-k0 * cot),
                Complex64::from(k0 * k0 * csc2),
                Complex64::from(-2.0 * k0.powi(3) * csc2 * cot),
            ]
        }
        Region::R1 | Region::L1 => {
            let (kap, u) = if region == Region::R1 {
                (p.kappa0, p.kappa0 * (x - p.x_r1))
            } else {
                let kc = p.kappa0.conj();
                (kc, kc * (x + p.x_l1))
            };
            let th = u.tanh();
            let sech2 = 1.0 / u.cosh().powi(2);
            [-kap * th, -kap * kap * sech2, 2.0 * kap.powi(3) * sech2 * th]
        }
    }
}

/// `W(x)` for `-L < x < L`. The superpotential is continuous at the jumps,
/// where the branch on the right is used.
pub fn superpotential_value(p: &SusyParameters, cfg: &WellConfig, x: f64) -> Result<Complex64> {
    check_pole(cfg, x)?;
    Ok(superpotential_branch(p, cfg, cfg.right_region(x), x)[0])
}

/// `V⁻` from the branch formula of `region` at `x`.
pub fn partner_potential_branch(p: &SusyParameters, cfg: &WellConfig, region: Region, x: f64) -> Complex64 {
    let [_, dw, _] = superpotential_branch(p, cfg, region, x);
    match region {
        Region::L2 | Region::R2 => dw + dw,
        _ => {
            // -2 kappa² sech² u ± i g, written through W' = -kappa² sech² u.
            let g = cfg.coupling();
            let sign = if region == Region::R1 { 1.0 } else { -1.0 };
            2.0 * dw + Complex64::new(0.0, sign * g)
        }
    }
}

/// `V⁻(x)` for `-L < x < L`; at the jumps the average of the one-sided
/// limits is returned.
pub fn partner_potential_value(p: &SusyParameters, cfg: &WellConfig, x: f64) -> Result<Complex64> {
    check_pole(cfg, x)?;
    if let Some(mp) = MatchingPoint::ALL.iter().find(|mp| mp.position(cfg) == x) {
        let (left, right) = mp.sides();
        let a = partner_potential_branch(p, cfg, left, x);
        let b = partner_potential_branch(p, cfg, right, x);
        return Ok(0.5 * (a + b));
    }
    Ok(partner_potential_branch(p, cfg, cfg.right_region(x), x))
}

/// `order`-th derivative (`0..=2`) of the partner eigenfunction
/// `i (psi' + W psi)` built from the branch formulas of `region`.
pub fn partner_eigenfunction_branch(
    cfg: &WellConfig,
    p: &SusyParameters,
    coeffs: &WaveCoefficients,
    region: Region,
    x: f64,
    order: u8,
) -> Complex64 {
    let d = |n: u8| branch_derivative(cfg, coeffs, region, x, n);
    let [w, dw, ddw] = superpotential_branch(p, cfg, region, x);
    let inner = match order {
        0 => d(1) + w * d(0),
        1 => d(2) + dw * d(0) + w * d(1),
        _ => d(3) + ddw * d(0) + 2.0 * dw * d(1) + w * d(2),
    };
    I * inner
}

/// Partner eigenfunction `psi⁻(x)` on the closed box, built on the excited
/// state described by `coeffs`. It vanishes at both walls.
pub fn partner_eigenfunction_value(
    cfg: &WellConfig,
    p: &SusyParameters,
    coeffs: &WaveCoefficients,
    x: f64,
) -> Result<Complex64> {
    cfg.check_closed(x)?;
    if x.abs() == cfg.box_half_width() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(partner_eigenfunction_branch(cfg, p, coeffs, cfg.right_region(x), x, 0))
}

/// The two witnesses that `V⁻` cannot be continuous: at `x = l` the
/// mismatch `(-kappa0² + ig/2) - k0²`, at `x = 0` the mismatch
/// `(-kappa0² + ig/2) - (-conj(kappa0)² - ig/2)`. With `kappa0² = ig - k0²`
/// they reduce to `-ig/2` and `-ig`.
pub fn noncontinuity_certificates(p: &SusyParameters, cfg: &WellConfig) -> [Complex64; 2] {
    let half_ig = Complex64::new(0.0, 0.5 * cfg.coupling());
    let k2 = p.kappa0 * p.kappa0;
    let kc2 = p.kappa0.conj() * p.kappa0.conj();
    [(-k2 + half_ig) - p.e0, (-k2 + half_ig) - (-kc2 - half_ig)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SusyVerificationReport {
    /// `max |psi0' + W psi0|` over the samples.
    pub annihilation_residual: f64,
    /// `max |psi0'|` over the same samples.
    pub annihilation_scale: f64,
    /// `max |(H⁺ - E0) psi - Ā A psi|`, relative to the size of the terms.
    pub factorization_residual: f64,
    /// `max |A H⁺ psi - H⁻ A psi|`, relative to the size of the terms.
    pub intertwining_residual: f64,
    /// `max |(H⁻ - E_(n+1)) psi⁻_n|`, relative to the size of the terms.
    pub isospectral_residual: f64,
    /// Value and slope mismatch of the partner eigenfunctions, relative to
    /// `max |psi⁻_n|`, worst over `n`.
    pub partner_matching_residuals: BTreeMap<MatchingPoint, f64>,
    /// `V⁻(x⁺) - V⁻(x⁻)`.
    pub discontinuity_jumps: BTreeMap<MatchingPoint, Complex64>,
    pub partner_levels: usize,
    /// Levels whose matching coefficients could not be formed.
    pub skipped_levels: Vec<usize>,
    pub samples_per_region: usize,
}

impl SusyVerificationReport {
    pub fn worst_matching_residual(&self) -> f64 {
        self.partner_matching_residuals.values().copied().fold(0.0, f64::max)
    }
}

/// Number of Chebyshev samples per region used by [`verify_susy`].
pub const SAMPLES_PER_REGION: usize = 64;

fn relative(terms: &[Complex64]) -> f64 {
    let sum: Complex64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|z| z.norm()).sum();
    if scale == 0.0 {
        0.0
    } else {
        sum.norm() / scale
    }
}

/// Sample points per region: Chebyshev nodes kept `1e-6 L` away from the
/// jumps and the walls.
pub fn sample_points(cfg: &WellConfig, count: usize) -> Vec<(Region, f64)> {
    let margin = 1e-6 * cfg.box_half_width();
    Region::ALL
        .iter()
        .flat_map(|&r| {
            let (a, b) = cfg.region_bounds(r);
            chebyshev_nodes(a, b, margin, count).into_iter().map(move |x| (r, x))
        })
        .collect()
}

/// Check the SUSY construction on the validated spectrum `roots` (ground
/// state first). Every check is evaluated from the analytic branch formulas.
pub fn verify_susy(cfg: &WellConfig, p: &SusyParameters, roots: &[SpectralRoot]) -> SusyVerificationReport {
    let samples = sample_points(cfg, SAMPLES_PER_REGION);
    let mut skipped = Vec::new();
    let states: Vec<(usize, WaveCoefficients)> = roots
        .iter()
        .enumerate()
        .filter_map(|(i, r)| match coefficients(cfg, r) {
            Ok(c) => Some((i, c)),
            Err(_) => {
                skipped.push(i);
                None
            }
        })
        .collect();
    let e0 = p.e0;

    let mut annihilation = 0.0f64;
    let mut annihilation_scale = 0.0f64;
    if let Some((0, ground)) = states.first() {
        for &(r, x) in &samples {
            let w = superpotential_branch(p, cfg, r, x)[0];
            let d0 = branch_derivative(cfg, ground, r, x, 0);
            let d1 = branch_derivative(cfg, ground, r, x, 1);
            annihilation = annihilation.max((d1 + w * d0).norm());
            annihilation_scale = annihilation_scale.max(d1.norm());
        }
    }

    let mut factorization = 0.0f64;
    let mut intertwining = 0.0f64;
    let mut isospectral = 0.0f64;
    let mut matching: BTreeMap<MatchingPoint, f64> = MatchingPoint::ALL.iter().map(|&m| (m, 0.0)).collect();
    let mut partner_levels = 0;
    for (i, c) in &states {
        for &(r, x) in &samples {
            let v = cfg.region_potential(r);
            let d: Vec<Complex64> = (0..4).map(|n| branch_derivative(cfg, c, r, x, n)).collect();
            let [w, dw, ddw] = superpotential_branch(p, cfg, r, x);
            // (H⁺ - E0) psi - Ā A psi = (V⁺ - E0 - W² + W') psi
            factorization = factorization.max(relative(&[v * d[0], -e0 * d[0], -w * w * d[0], dw * d[0]]));
            if *i == 0 {
                continue;
            }
            let vm = partner_potential_branch(p, cfg, r, x);
            // A (H⁺ psi) with H⁺ psi = -psi'' + V⁺ psi inside the region.
            let a_h = [-d[3], v * d[1], -w * d[2], w * v * d[0]];
            // H⁻ (A psi) = -(A psi)'' + V⁻ A psi
            let h_a = [
                -d[3],
                -ddw * d[0],
                -2.0 * dw * d[1],
                -w * d[2],
                vm * d[1],
                vm * w * d[0],
            ];
            let mut all: Vec<Complex64> = a_h.to_vec();
            all.extend(h_a.iter().map(|z| -z));
            intertwining = intertwining.max(relative(&all));

            let e = c.root.energy;
            let raw0 = [I * d[1], I * w * d[0]];
            let raw2 = [I * d[3], I * ddw * d[0], 2.0 * I * dw * d[1], I * w * d[2]];
            let psi: Complex64 = raw0.iter().sum();
            let psi2: Complex64 = raw2.iter().sum();
            let res = -psi2 + vm * psi - e * psi;
            let scale = raw2.iter().map(|z| z.norm()).sum::<f64>()
                + (vm.norm() + e) * raw0.iter().map(|z| z.norm()).sum::<f64>();
            isospectral = isospectral.max(res.norm() / scale);
        }
        if *i == 0 {
            continue;
        }
        partner_levels += 1;
        let peak = samples
            .iter()
            .map(|&(r, x)| partner_eigenfunction_branch(cfg, p, c, r, x, 0).norm())
            .fold(0.0, f64::max);
        for mp in MatchingPoint::ALL {
            let x = mp.position(cfg);
            let (left, right) = mp.sides();
            let mut worst = 0.0f64;
            for order in 0..2 {
                let a = partner_eigenfunction_branch(cfg, p, c, left, x, order);
                let b = partner_eigenfunction_branch(cfg, p, c, right, x, order);
                worst = worst.max((a - b).norm() / peak);
            }
            let entry = matching.get_mut(&mp).expect("all points present");
            *entry = entry.max(worst);
        }
    }

    let discontinuity_jumps = MatchingPoint::ALL
        .iter()
        .map(|&mp| {
            let x = mp.position(cfg);
            let (left, right) = mp.sides();
            (
                mp,
                partner_potential_branch(p, cfg, right, x) - partner_potential_branch(p, cfg, left, x),
            )
        })
        .collect();

    SusyVerificationReport {
        annihilation_residual: annihilation,
        annihilation_scale,
        factorization_residual: factorization,
        intertwining_residual: intertwining,
        isospectral_residual: isospectral,
        partner_matching_residuals: matching,
        discontinuity_jumps,
        partner_levels,
        skipped_levels: skipped,
        samples_per_region: SAMPLES_PER_REGION,
    }
}
