//! `ptwell spectrum`: the lowest real levels as a table.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, ValueEnum};
use ptwell_core::secular::{secular_residual_scale, ScanOptions};
use ptwell_core::spectrum::energies_with;
use ptwell_core::{secular_residual, SpectralRoot, WellConfig};
use serde::Serialize;

use super::WellArgs;
use crate::manifest::{OutDir, RunManifest};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub well: WellArgs,
    /// Number of real levels.
    #[arg(long = "n", default_value_t = 6)]
    pub n_levels: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Bracket width in k at which root refinement stops.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Scan step in k; defaults to min(0.05, π/8L).
    #[arg(long)]
    pub step: Option<f64>,
    /// Stem of the output file names.
    #[arg(long, default_value = "spectrum")]
    pub name: String,
}

/// One table row. `n` counts the real levels from 1.
#[derive(Debug, Clone, Serialize)]
pub struct LevelRow {
    pub n: usize,
    pub s: f64,
    pub t: f64,
    pub k: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    /// Undefined at `s = 0`, i.e. for `g = 0`.
    pub secular_residual: Option<f64>,
    /// `|secular_residual|` over the size of its terms.
    pub secular_residual_relative: Option<f64>,
    pub constraint_residual: f64,
}

impl LevelRow {
    pub fn new(cfg: &WellConfig, n: usize, r: &SpectralRoot) -> Self {
        let res = if r.s > 0.0 {
            secular_residual(cfg, r.s, r.t).ok()
        } else {
            None
        };
        Self {
            n,
            s: r.s,
            t: r.t,
            k: r.k,
            energy: r.energy,
            secular_residual: res,
            secular_residual_relative: res.map(|v| v.abs() / secular_residual_scale(cfg, r.s, r.t)),
            constraint_residual: r.constraint_residual(cfg),
        }
    }
}

#[derive(Serialize)]
struct SpectrumReport<'a> {
    requested: usize,
    missing: usize,
    levels: &'a [LevelRow],
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv(rows: &[LevelRow]) -> String {
    let mut out = String::from("n,s,t,k,E,secular_residual,secular_residual_relative,constraint_residual\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n,
            r.s,
            r.t,
            r.k,
            r.energy,
            opt(r.secular_residual),
            opt(r.secular_residual_relative),
            r.constraint_residual
        );
    }
    out
}

pub fn run(args: &SpectrumArgs, out_dir: &Path) -> Result<(), Failure> {
    let cfg = args.well.config()?;
    let opts = ScanOptions {
        step: args.step,
        tol: args.tol,
        tangency: true,
    };
    let levels = energies_with(&cfg, args.n_levels, &opts)?;
    if levels.roots.is_empty() {
        return Err(Failure::Domain(format!(
            "no real levels found for L = {}, l = {}, g = {}",
            cfg.box_half_width(),
            cfg.barrier_half_width(),
            cfg.coupling()
        )));
    }
    if levels.missing() > 0 {
        eprintln!(
            "warning: only {} of {} requested levels are real",
            levels.roots.len(),
            levels.requested
        );
    }
    let rows: Vec<LevelRow> = levels
        .roots
        .iter()
        .enumerate()
        .map(|(i, r)| LevelRow::new(&cfg, i + 1, r))
        .collect();

    let mut m = RunManifest::new("spectrum");
    args.well.record(&mut m);
    m.param("n_levels", args.n_levels)
        .param("format", args.format)
        .param("step", opts.step_for(&cfg))
        .param("scan_tol", args.tol);
    let k_max = rows.iter().map(|r| r.k).fold(0.0, f64::max);
    m.tolerance("k", args.tol)
        .tolerance("t", args.tol)
        .tolerance("s", args.tol)
        .tolerance("E", 2.0 * k_max * args.tol)
        .tolerance("secular_residual_relative", 1e-9)
        .tolerance("constraint_residual", 1e-12 * cfg.coupling().max(1.0));

    let out = OutDir::create(out_dir)?;
    let (file, body) = match args.format {
        Format::Csv => (format!("{}.csv", args.name), to_csv(&rows)),
        Format::Json => {
            let report = SpectrumReport {
                requested: levels.requested,
                missing: levels.missing(),
                levels: &rows,
            };
            let mut s = serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?;
            s.push('\n');
            (format!("{}.json", args.name), s)
        }
    };
    out.write(&mut m, &file, &body)?;
    out.finish(&m, &args.name)?;
    Ok(())
}
