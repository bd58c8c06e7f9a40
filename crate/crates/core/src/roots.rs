//! One-dimensional root bracketing and refinement.
//!
//! The scan samples a function on a uniform grid and reports every bracket
//! where it changes sign. Same-sign triples whose middle sample is a local
//! minimum of `|f|` are searched for an interior extremum; if the extremum
//! crosses zero the pair of nearby roots is split into two brackets.

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Bisection on a sign-changing bracket, finished with one secant step when
/// it stays inside the final bracket.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return None;
    }
    for _ in 0..max_iter {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Some(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }
    let secant = lo - flo * (hi - lo) / (fhi - flo);
    if secant.is_finite() && secant >= lo && secant <= hi {
        Some(secant)
    } else {
        Some(0.5 * (lo + hi))
    }
}

/// Golden-section search for the minimum of `f` on `[a, b]`.
///
/// Returns `(x_min, f(x_min))`.
pub fn golden_minimum<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    pub step: f64,
    pub tol: f64,
    /// Search for close root pairs hidden inside same-sign samples.
    pub tangency: bool,
}

/// All roots of `f` on `[lo, hi]` found by a uniform sign scan, ascending.
pub fn scan_roots<F>(f: F, lo: f64, hi: f64, settings: ScanSettings) -> Vec<f64>
where
    F: Fn(f64) -> f64,
{
    if !(hi > lo) || !(settings.step > 0.0) {
        return Vec::new();
    }
    let cells = ((hi - lo) / settings.step).ceil().max(1.0) as usize;
    let h = (hi - lo) / cells as f64;
    let xs: Vec<f64> = (0..=cells).map(|i| lo + h * i as f64).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    let mut roots = Vec::new();
    for i in 0..=cells {
        if fs[i] == 0.0 {
            roots.push(xs[i]);
        }
    }
    for i in 0..cells {
        if fs[i] * fs[i + 1] < 0.0 {
            if let Some(r) = bisect(&f, xs[i], xs[i + 1], settings.tol, 200) {
                roots.push(r);
            }
        }
    }
    if settings.tangency {
        for i in 1..cells {
            let (a, m, b) = (fs[i - 1], fs[i], fs[i + 1]);
            if a * m <= 0.0 || m * b <= 0.0 {
                continue;
            }
            if !(m.abs() < a.abs() && m.abs() <= b.abs()) {
                continue;
            }
            let sign = m.signum();
            let (xm, fm) = golden_minimum(|x| sign * f(x), xs[i - 1], xs[i + 1], 1e-13 * (1.0 + xs[i].abs()));
            if fm < 0.0 {
                if let Some(r) = bisect(&f, xs[i - 1], xm, settings.tol, 200) {
                    roots.push(r);
                }
                if let Some(r) = bisect(&f, xm, xs[i + 1], settings.tol, 200) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup_by(|a, b| (*a - *b).abs() <= settings.tol.max(1e-14 * a.abs()));
    roots
}
