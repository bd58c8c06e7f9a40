//! Closed-form piecewise eigenfunctions of the well.
//!
//! With `kappa = s + i t` and `a = L - l` the bound state reads
//!
//! ```text
//! L2:  A* sin[k(L + x)]
//! L1:  B cosh(kappa* x) + i C/(kappa* l) sinh(kappa* x)
//! R1:  B cosh(kappa x)  + i C/(kappa l)  sinh(kappa x)
//! R2:  A  sin[k(L - x)]
//! ```
//!
//! with real `B`, `C`. Matching value and slope at `x = l` fixes `B` and `C`
//! in terms of `A`; the mirror conditions at `-l` follow from PT symmetry.
//! States that turn odd as `g -> 0` have `B -> 0`, so the larger of `B` and
//! `C/(|kappa| l)` is the one set to 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::well::{Region, SpectralRoot, WellConfig};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveCoefficients {
    pub a: Complex64,
    pub b: f64,
    pub c: f64,
    /// Imaginary part discarded when making the coefficient that is not
    /// fixed by the normalisation real; zero for an exact root.
    pub imag_residual: f64,
    pub root: SpectralRoot,
}

/// `B` and `C` per unit `A`, from the transfer matrix across `x = l`. Its
/// determinant is 1, so this stays well conditioned at every root.
fn per_unit_amplitude(cfg: &WellConfig, root: &SpectralRoot) -> (Complex64, Complex64) {
    let l = cfg.barrier_half_width();
    let k = root.k;
    let kappa = root.kappa();
    let (sn, cs) = (k * cfg.outer_width()).sin_cos();
    let (sh, ch) = ((kappa * l).sinh(), (kappa * l).cosh());
    // R1 written as B cosh + D sinh/kappa with D = iC/l.
    let b = ch * sn + sh * k * cs / kappa;
    let d = -(kappa * sh * sn + ch * k * cs);
    (b, -I * l * d)
}

/// Matching coefficients, normalised so that `B = 1`, or `C = 1` for states
/// whose value at the origin is small.
pub fn coefficients(cfg: &WellConfig, root: &SpectralRoot) -> Result<WaveCoefficients> {
    let (b, c) = per_unit_amplitude(cfg, root);
    let c_weight = c.norm() / (root.kappa().norm() * cfg.barrier_half_width());
    if b.norm() >= c_weight {
        let c = c / b;
        Ok(WaveCoefficients {
            a: 1.0 / b,
            b: 1.0,
            c: c.re,
            imag_residual: c.im.abs(),
            root: *root,
        })
    } else {
        let b = b / c;
        Ok(WaveCoefficients {
            a: 1.0 / c,
            b: b.re,
            c: 1.0,
            imag_residual: b.im.abs(),
            root: *root,
        })
    }
}

/// Matching coefficients for a given real `B`.
///
/// Fails when `B` is negligible against `C`, where fixing `B` would blow up
/// the other coefficients.
pub fn coefficients_with_scale(cfg: &WellConfig, root: &SpectralRoot, b: f64) -> Result<WaveCoefficients> {
    let (b1, c1) = per_unit_amplitude(cfg, root);
    let c_weight = c1.norm() / (root.kappa().norm() * cfg.barrier_half_width());
    if b1.norm() <= 1e-12 * c_weight {
        return Err(Error::DegenerateMatching {
            magnitude: b1.norm() / c_weight,
            energy: root.energy,
        });
    }
    let c = b * c1 / b1;
    Ok(WaveCoefficients {
        a: b / b1,
        b,
        c: c.re,
        imag_residual: c.im.abs(),
        root: *root,
    })
}

/// `order`-th derivative (`0..=3`) of the branch formula of `region` at `x`.
///
/// The formula is evaluated as an analytic function, so `x` may sit on the
/// region's end points; this gives the one-sided limits there.
pub fn branch_derivative(cfg: &WellConfig, coeffs: &WaveCoefficients, region: Region, x: f64, order: u8) -> Complex64 {
    let big_l = cfg.box_half_width();
    let l = cfg.barrier_half_width();
    let k = coeffs.root.k;
    match region {
        Region::R2 | Region::L2 => {
            let (amp, arg, dir) = if region == Region::R2 {
                (coeffs.a, k * (big_l - x), -1.0)
            } else {
                (coeffs.a.conj(), k * (big_l + x), 1.0)
            };
            let (sn, cs) = arg.sin_cos();
            let kd = dir * k;
            match order {
                0 => amp * sn,
                1 => amp * kd * cs,
                2 => -amp * kd * kd * sn,
                _ => -amp * kd * kd * kd * cs,
            }
        }
        Region::R1 | Region::L1 => {
            let kappa = if region == Region::R1 {
                coeffs.root.kappa()
            } else {
                coeffs.root.kappa().conj()
            };
            let (sh, ch) = ((kappa * x).sinh(), (kappa * x).cosh());
            let b = coeffs.b;
            let c = coeffs.c;
            let base = match order {
                0 | 2 => b * ch + I * c / (kappa * l) * sh,
                _ => kappa * b * sh + I * c / l * ch,
            };
            match order {
                0 | 1 => base,
                _ => kappa * kappa * base,
            }
        }
    }
}

/// `psi(x)` on the closed box; matching points use the branch on their right.
pub fn eigenfunction_value(cfg: &WellConfig, coeffs: &WaveCoefficients, x: f64) -> Result<Complex64> {
    cfg.check_closed(x)?;
    Ok(branch_derivative(cfg, coeffs, cfg.right_region(x), x, 0))
}

/// `psi'(x)` on the closed box; matching points use the branch on their right.
pub fn eigenfunction_derivative(cfg: &WellConfig, coeffs: &WaveCoefficients, x: f64) -> Result<Complex64> {
    cfg.check_closed(x)?;
    Ok(branch_derivative(cfg, coeffs, cfg.right_region(x), x, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::energies;
    use crate::well::{potential_value, MatchingPoint};
    use rand::{Rng, SeedableRng};

    fn states(l: f64, g: f64, n: usize) -> (WellConfig, Vec<WaveCoefficients>) {
        let cfg = WellConfig::new(1.0, l, g).unwrap();
        let lv = energies(&cfg, n).unwrap();
        assert!(lv.is_complete());
        let cs = lv.roots.iter().map(|r| coefficients(&cfg, r).unwrap()).collect();
        (cfg, cs)
    }

    fn max_abs(cfg: &WellConfig, c: &WaveCoefficients) -> f64 {
        (0..=400)
            .map(|i| -1.0 + 2.0 * i as f64 / 400.0)
            .map(|x| eigenfunction_value(cfg, c, x).unwrap().norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn reality_of_c_holds_at_roots() {
        let (_, cs) = states(0.5, 2.0, 4);
        assert!(cs[0].imag_residual < 1e-10, "{}", cs[0].imag_residual);
        for c in &cs {
            assert!(c.imag_residual < 1e-8 * c.c.abs().max(c.b.abs()));
        }
    }

    #[test]
    fn odd_states_stay_finite_in_the_hermitian_limit() {
        for g in [0.0, 1e-9, 1e-3] {
            let (cfg, cs) = states(0.5, g, 4);
            for (n, c) in cs.iter().enumerate() {
                assert!(c.a.norm() < 10.0, "g={g} level {n}: A = {}", c.a);
                if n % 2 == 1 {
                    assert_eq!(c.c, 1.0);
                    assert!(c.b.abs() < 1e-3);
                }
                let scale = max_abs(&cfg, c);
                for order in 0..2 {
                    let a = branch_derivative(&cfg, c, Region::R1, 0.5, order);
                    let b = branch_derivative(&cfg, c, Region::R2, 0.5, order);
                    assert!(
                        (a - b).norm() < 1e-12 * scale * c.root.k.powi(order as i32),
                        "g={g} level {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn scaling_b_scales_a_and_c() {
        let (cfg, cs) = states(0.5, 2.0, 2);
        for c in cs {
            let d = coefficients_with_scale(&cfg, &c.root, 2.0).unwrap();
            let ratio = 2.0 / c.b;
            assert_eq!(d.b, 2.0);
            assert!((d.a - ratio * c.a).norm() <= 1e-13 * d.a.norm());
            assert!((d.c - ratio * c.c).abs() <= 1e-13 * d.c.abs());
        }
    }

    #[test]
    fn walls_and_origin() {
        let (cfg, cs) = states(0.5, 2.0, 3);
        for c in &cs {
            assert_eq!(eigenfunction_value(&cfg, c, 1.0).unwrap(), Complex64::new(0.0, 0.0));
            assert_eq!(eigenfunction_value(&cfg, c, -1.0).unwrap().norm(), 0.0);
            assert_eq!(eigenfunction_value(&cfg, c, 0.0).unwrap(), Complex64::new(c.b, 0.0));
            let d0 = eigenfunction_derivative(&cfg, c, 0.0).unwrap();
            assert_eq!(d0.re, 0.0);
            assert!((d0.im - c.c / 0.5).abs() < 1e-14 * d0.im.abs().max(1.0));
        }
        assert!(eigenfunction_value(&cfg, &cs[0], 1.0 + 1e-12).is_err());
    }

    #[test]
    fn fixing_b_on_an_odd_state_is_refused() {
        let (cfg, cs) = states(0.5, 0.0, 2);
        assert!(coefficients_with_scale(&cfg, &cs[0].root, 1.0).is_ok());
        assert!(matches!(
            coefficients_with_scale(&cfg, &cs[1].root, 1.0),
            Err(Error::DegenerateMatching { .. })
        ));
    }

    #[test]
    fn pt_symmetry_of_states() {
        let (cfg, cs) = states(0.3, 10.0, 4);
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for c in &cs {
            let scale = max_abs(&cfg, c);
            for _ in 0..100 {
                let x: f64 = rng.random_range(-1.0..1.0);
                let a = eigenfunction_value(&cfg, c, -x).unwrap();
                let b = eigenfunction_value(&cfg, c, x).unwrap().conj();
                assert!((a - b).norm() < 1e-10 * scale, "x = {x}");
            }
        }
    }

    #[test]
    fn branches_match_at_every_jump() {
        for (l, g) in [(0.5, 2.0), (0.3, 10.0), (0.04, 650.0)] {
            let (cfg, cs) = states(l, g, 5);
            for c in &cs {
                let scale = max_abs(&cfg, c);
                for p in MatchingPoint::ALL {
                    let x = p.position(&cfg);
                    let (left, right) = p.sides();
                    for order in 0..2 {
                        let a = branch_derivative(&cfg, c, left, x, order);
                        let b = branch_derivative(&cfg, c, right, x, order);
                        let dscale = if order == 0 {
                            scale
                        } else {
                            scale * c.root.t.max(c.root.k)
                        };
                        assert!(
                            (a - b).norm() < 1e-9 * dscale,
                            "l={l} g={g} {p} order {order}: {a} vs {b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn schrodinger_equation_holds_on_each_region() {
        let (cfg, cs) = states(0.5, 2.0, 4);
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for c in &cs {
            for _ in 0..50 {
                let x: f64 = rng.random_range(-0.999..0.999);
                if cfg.matching_points().contains(&x) {
                    continue;
                }
                let region = cfg.right_region(x);
                let psi = branch_derivative(&cfg, c, region, x, 0);
                let d2 = branch_derivative(&cfg, c, region, x, 2);
                let v = potential_value(&cfg, x).unwrap();
                let terms = [-d2, v * psi, -c.root.energy * psi];
                let res: Complex64 = terms.iter().sum();
                let scale: f64 = terms.iter().map(|z| z.norm()).sum();
                assert!(res.norm() < 1e-10 * scale, "x = {x}: {res}");
            }
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let (cfg, cs) = states(0.5, 2.0, 2);
        let h = 1e-5;
        for c in &cs {
            for &x in &[-0.8, -0.3, 0.2, 0.7] {
                let fd = (eigenfunction_value(&cfg, c, x + h).unwrap() - eigenfunction_value(&cfg, c, x - h).unwrap())
                    / (2.0 * h);
                let d = eigenfunction_derivative(&cfg, c, x).unwrap();
                assert!((fd - d).norm() < 1e-6 * d.norm().max(1.0), "{fd} vs {d}");
            }
        }
    }

    #[test]
    fn hermitian_limit_is_a_sine_across_the_box() {
        let (cfg, cs) = states(0.5, 1e-9, 3);
        for c in &cs {
            for i in 1..50 {
                let x = i as f64 / 50.0;
                let psi = eigenfunction_value(&cfg, c, x).unwrap() / c.a;
                let want = (c.root.k * (1.0 - x)).sin();
                assert!((psi - want).norm() < 1e-5, "x = {x}: {psi} vs {want}");
            }
        }
    }

    #[test]
    fn hermitian_limit_zero_count() {
        let (cfg, cs) = states(0.3, 1e-6, 6);
        for (n, c) in cs.iter().enumerate() {
            // With B = 1 odd states are almost purely imaginary; rotate to
            // the phase of the largest sample before counting.
            let xs: Vec<f64> = (1..4000).map(|i| -1.0 + i as f64 / 2000.0).collect();
            let vals: Vec<Complex64> = xs.iter().map(|&x| eigenfunction_value(&cfg, c, x).unwrap()).collect();
            let peak = vals
                .iter()
                .copied()
                .fold(Complex64::new(0.0, 0.0), |m, z| if z.norm() > m.norm() { z } else { m });
            let phase = peak.conj() / peak.norm();
            let re: Vec<f64> = vals.iter().map(|z| (z * phase).re).collect();
            let zeros = re.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
            assert_eq!(zeros, n, "level {n}");
        }
    }
}
