//! `ptwell verify`: secular energies against the finite-difference oracle.

use std::fmt::Write as _;
use std::path::Path;

use clap::Args;
use ptwell_core::oracle::well_spectrum;
use ptwell_core::{energies, oracle_reality_census, Complex64, RealityCensus};
use serde::Serialize;

use super::WellArgs;
use crate::manifest::{OutDir, RunManifest};
use crate::Failure;

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub well: WellArgs,
    /// Grid intervals on the coarse grid; the fine grid has twice as many.
    #[arg(long = "N", default_value_t = 4000)]
    pub intervals: usize,
    /// Number of real levels compared.
    #[arg(long = "n", default_value_t = 5)]
    pub n_levels: usize,
    /// Bound on |E_secular - Re E_oracle| / E_secular.
    #[arg(long, default_value_t = 1e-4)]
    pub rel_tol: f64,
    /// Bound on |Im E_oracle| for a level to count as real.
    #[arg(long, default_value_t = 1e-6)]
    pub imag_tol: f64,
    #[arg(long, default_value = "verify")]
    pub name: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub n: usize,
    pub secular: f64,
    pub oracle: Complex64,
    pub rel_delta: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub coarse_intervals: usize,
    pub fine_intervals: usize,
    pub comparisons: Vec<Comparison>,
    /// Extrapolated oracle levels examined, ascending in real part.
    pub oracle_levels: Vec<Complex64>,
    /// Real oracle levels with no secular counterpart among those compared.
    pub unmatched_oracle_levels: Vec<f64>,
    pub census: RealityCensus,
    pub pt_broken: bool,
    pub max_rel_delta: f64,
    pub pass: bool,
}

pub fn build(args: &VerifyArgs) -> Result<VerifyReport, Failure> {
    let cfg = args.well.config()?;
    if args.n_levels == 0 {
        return Err(Failure::Domain("need at least one level".into()));
    }
    let secular = energies(&cfg, args.n_levels)?;
    if secular.roots.is_empty() {
        return Err(Failure::Domain("no real secular levels to compare".into()));
    }
    let n_secular = secular.roots.len();
    let interior = args.intervals.saturating_sub(1);
    // Room for the broken pairs skipped by the secular list.
    let n_oracle = n_secular + 2 * secular.missing() + 6;
    let oracle = well_spectrum(&cfg, interior, n_oracle)?;
    let levels = oracle.best(n_oracle);
    let census = oracle_reality_census(&cfg, interior, args.imag_tol, n_oracle)?;

    let real: Vec<Complex64> = levels.iter().copied().filter(|z| z.im.abs() < args.imag_tol).collect();
    let mut comparisons = Vec::new();
    for (i, r) in secular.roots.iter().enumerate() {
        // Nearest oracle level overall, so a complex oracle value in place of
        // a real secular one fails rather than being skipped.
        let z = levels
            .iter()
            .copied()
            .min_by(|a, b| (a.re - r.energy).abs().total_cmp(&(b.re - r.energy).abs()))
            .expect("oracle returned levels");
        let rel_delta = (z.re - r.energy).abs() / r.energy.abs().max(f64::MIN_POSITIVE);
        comparisons.push(Comparison {
            n: i + 1,
            secular: r.energy,
            oracle: z,
            rel_delta,
            pass: rel_delta <= args.rel_tol && z.im.abs() < args.imag_tol,
        });
    }
    let top = secular.roots.last().map(|r| r.energy).unwrap_or(0.0);
    let unmatched: Vec<f64> = real
        .iter()
        .filter(|z| z.re <= top * (1.0 + args.rel_tol))
        .filter(|z| comparisons.iter().all(|c| c.oracle != **z))
        .map(|z| z.re)
        .collect();
    let max_rel_delta = comparisons.iter().map(|c| c.rel_delta).fold(0.0, f64::max);
    let pass = comparisons.iter().all(|c| c.pass) && unmatched.is_empty();
    Ok(VerifyReport {
        coarse_intervals: args.intervals,
        fine_intervals: 2 * args.intervals,
        comparisons,
        oracle_levels: levels,
        unmatched_oracle_levels: unmatched,
        pt_broken: !census.is_unbroken(),
        census,
        max_rel_delta,
        pass,
    })
}

pub fn run(args: &VerifyArgs, out_dir: &Path) -> Result<(), Failure> {
    let report = build(args)?;
    let mut csv = String::from("n,secular_E,oracle_re,oracle_im,rel_delta,pass\n");
    for c in &report.comparisons {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            c.n, c.secular, c.oracle.re, c.oracle.im, c.rel_delta, c.pass
        );
    }
    let mut m = RunManifest::new("verify");
    args.well.record(&mut m);
    m.param("N", args.intervals)
        .param("n_levels", args.n_levels)
        .param("grids_interior_points", [args.intervals - 1, 2 * args.intervals - 1]);
    m.tolerance("rel_delta", args.rel_tol)
        .tolerance("oracle_im", args.imag_tol)
        .tolerance("secular_E", 1e-11);

    let out = OutDir::create(out_dir)?;
    out.write(&mut m, &format!("{}.csv", args.name), &csv)?;
    let mut body = serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?;
    body.push('\n');
    out.write(&mut m, &format!("{}.json", args.name), &body)?;
    out.finish(&m, &args.name)?;
    if report.pt_broken {
        eprintln!(
            "PT symmetry broken: {} complex pair(s) among the oracle levels",
            report.census.complex_pairs.len()
        );
    }
    if !report.pass {
        return Err(Failure::Validation(format!(
            "max relative delta {:e} (tolerance {:e}), {} unmatched oracle level(s)",
            report.max_rel_delta,
            args.rel_tol,
            report.unmatched_oracle_levels.len()
        )));
    }
    Ok(())
}
