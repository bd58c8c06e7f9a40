//! Eigenvalues of complex symmetric tridiagonal matrices.
//!
//! Implicit QL with Wilkinson shifts, as for the real symmetric case, but
//! with complex orthogonal rotations (`c² + s² = 1`, not unitary). The
//! matrix stays complex symmetric and tridiagonal, so a full solve costs
//! `O(n²)`. A rotation breaks down when `f² + g²` vanishes for nonzero
//! `f`, `g`; the sweep is then undone and retried with a perturbed shift.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITER: usize = 120;

fn csqrt_sum_sq(f: Complex64, g: Complex64) -> Complex64 {
    // sqrt(f² + g²) with scaling against overflow.
    let scale = f.norm().max(g.norm());
    if scale == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let (fs, gs) = (f / scale, g / scale);
    scale * (fs * fs + gs * gs).sqrt()
}

/// All eigenvalues of the complex symmetric tridiagonal matrix with
/// diagonal `diag` and sub/super-diagonal `off` (`off.len() == diag.len() - 1`).
///
/// Eigenvalues are returned unordered.
pub fn symmetric_tridiagonal_eigenvalues(diag: &[Complex64], off: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "off-diagonal length {} does not match diagonal length {n}",
            off.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<Complex64> = off.to_vec();
    e.push(Complex64::new(0.0, 0.0));
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut saved_d = Vec::new();
    let mut saved_e = Vec::new();

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].norm() + d[m + 1].norm();
                if e[m].norm() <= f64::EPSILON * dd {
                    e[m] = zero;
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: MAX_ITER,
                });
            }
            saved_d.clear();
            saved_d.extend_from_slice(&d[l..=m]);
            saved_e.clear();
            saved_e.extend_from_slice(&e[l..=m]);

            // Wilkinson shift from the leading 2x2 block; exceptional shifts
            // every 10 iterations and after a breakdown.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = csqrt_sum_sq(g, one);
            if (g - r).norm() > (g + r).norm() {
                r = -r;
            }
            let mut shift_g = d[m] - d[l] + e[l] / (g + r);
            if iter % 10 == 0 {
                shift_g += Complex64::new(0.75, 0.43) * e[l].norm();
            }
            let mut attempt = 0;
            'sweep: loop {
                g = shift_g;
                let mut s = one;
                let mut c = one;
                let mut p = zero;
                let mut underflow = false;
                let mut i = m;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
                    let b = c * e[i];
                    r = csqrt_sum_sq(f, g);
                    let size = f.norm() + g.norm();
                    if size > 0.0 && r.norm() <= 1e-8 * size {
                        // Isotropic rotation: restore and retry.
                        d[l..=m].copy_from_slice(&saved_d);
                        e[l..=m].copy_from_slice(&saved_e);
                        attempt += 1;
                        if attempt > 8 {
                            return Err(Error::NoConvergence {
                                index: l,
                                iterations: iter,
                            });
                        }
                        let bump = e[l].norm().max(f64::MIN_POSITIVE) * 0.1 * attempt as f64;
                        shift_g += Complex64::new(0.31, 0.87) * bump;
                        continue 'sweep;
                    }
                    e[i + 1] = r;
                    if r == zero {
                        d[i + 1] -= p;
                        e[m] = zero;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if !underflow {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = zero;
                }
                break;
            }
        }
    }
    Ok(d)
}

/// Solve `(T - sigma) w = v` by Gaussian elimination with partial pivoting
/// (the factors fill in one extra super-diagonal). Exactly zero pivots are
/// replaced by `tiny`, as usual for inverse iteration.
fn shifted_solve(
    diag: &[Complex64],
    off: &[Complex64],
    sigma: Complex64,
    v: &[Complex64],
    tiny: f64,
) -> Vec<Complex64> {
    let n = diag.len();
    let zero = Complex64::new(0.0, 0.0);
    // Row i of U holds (u0, u1, u2) in columns i, i+1, i+2.
    let mut u = vec![[zero; 3]; n];
    let mut rhs = v.to_vec();
    let mut cur = [diag[0] - sigma, if n > 1 { off[0] } else { zero }, zero];
    let mut cur_rhs = rhs[0];
    for i in 0..n {
        if i + 1 == n {
            if cur[0].norm() == 0.0 {
                cur[0] = Complex64::new(tiny, 0.0);
            }
            u[i] = cur;
            rhs[i] = cur_rhs;
            break;
        }
        let next = [off[i], diag[i + 1] - sigma, if i + 2 < n { off[i + 1] } else { zero }];
        let next_rhs = rhs[i + 1];
        // Pivot between the current row (starting at column i) and the next.
        let (mut piv, piv_rhs, other, other_rhs) = if next[0].norm() > cur[0].norm() {
            ([next[0], next[1], next[2]], next_rhs, [cur[0], cur[1], cur[2]], cur_rhs)
        } else {
            (cur, cur_rhs, next, next_rhs)
        };
        if piv[0].norm() == 0.0 {
            piv[0] = Complex64::new(tiny, 0.0);
        }
        let m = other[0] / piv[0];
        u[i] = piv;
        rhs[i] = piv_rhs;
        cur = [other[1] - m * piv[1], other[2] - m * piv[2], zero];
        cur_rhs = other_rhs - m * piv_rhs;
    }
    let mut w = vec![zero; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s -= u[i][1] * w[i + 1];
        }
        if i + 2 < n {
            s -= u[i][2] * w[i + 2];
        }
        w[i] = s / u[i][0];
    }
    w
}

/// Polish an eigenvalue estimate `lambda0` of the complex symmetric
/// tridiagonal matrix by inverse iteration with the complex symmetric
/// Rayleigh quotient `wᵀTw / wᵀw`.
///
/// Returns `None` when the iteration wanders further than `max_move` from
/// `lambda0` or the quotient is undefined (`wᵀw ≈ 0`, at an exceptional
/// point); the caller then keeps the unrefined value.
pub fn refine_eigenvalue(
    diag: &[Complex64],
    off: &[Complex64],
    lambda0: Complex64,
    max_move: f64,
) -> Option<Complex64> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return None;
    }
    let norm =
        diag.iter().map(|z| z.norm()).fold(0.0, f64::max) + 2.0 * off.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tiny = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
    // Deterministic start with no special symmetry.
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| {
            Complex64::new(
                1.0 + 0.5 * ((i as f64) * 0.7548776662).fract(),
                0.25 * ((i as f64) * 0.5698402910).fract(),
            )
        })
        .collect();
    let mut sigma = lambda0;
    for it in 0..8 {
        let w = shifted_solve(diag, off, sigma, &v, tiny);
        let wv: Complex64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        let ww: Complex64 = w.iter().map(|a| a * a).sum();
        let wn: f64 = w.iter().map(|a| a.norm_sqr()).sum();
        if !(wn.is_finite() && wn > 0.0) || ww.norm() < 1e-10 * wn {
            return None;
        }
        let scale = 1.0 / wn.sqrt();
        v = w.iter().map(|a| a * scale).collect();
        // Fixed shift for the first steps so the vector settles on the
        // eigenvalue nearest lambda0 before the shift starts moving.
        if it < 2 {
            continue;
        }
        let step = wv / ww;
        let next = sigma + step;
        if (next - lambda0).norm() > max_move {
            return None;
        }
        let done = step.norm() <= 4.0 * f64::EPSILON * norm;
        sigma = next;
        if done {
            break;
        }
    }
    Some(sigma)
}
