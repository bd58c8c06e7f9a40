//! `ptwell critical`: critical couplings for one or many barrier widths.

use std::fmt::Write as _;
use std::path::Path;

use clap::{ArgGroup, Args};
use ptwell_core::gc_sweep;
use ptwell_core::spectrum::CriticalOptions;

use crate::manifest::{csv_field, OutDir, RunManifest};
use crate::Failure;

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("widths").required(true).args(["barrier_half_width", "l_list", "figure3"])))]
pub struct CriticalArgs {
    /// Box half-width L.
    #[arg(long = "L", default_value_t = 1.0)]
    pub box_half_width: f64,
    /// A single barrier half-width.
    #[arg(long = "l")]
    pub barrier_half_width: Option<f64>,
    /// Comma-separated barrier half-widths.
    #[arg(long, value_delimiter = ',')]
    pub l_list: Option<Vec<f64>>,
    /// Log-spaced sweep of `--count` widths over [l-min, l-max].
    #[arg(long)]
    pub figure3: bool,
    #[arg(long, default_value_t = 1e-3)]
    pub l_min: f64,
    #[arg(long, default_value_t = 0.999)]
    pub l_max: f64,
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    /// Relative width of the final coupling bracket.
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    /// Largest coupling tried before reporting no merge.
    #[arg(long)]
    pub g_upper: Option<f64>,
    /// Roots closer than this in t count as merged.
    #[arg(long, default_value_t = 1e-6)]
    pub merge_separation: f64,
    #[arg(long, default_value = "critical")]
    pub name: String,
}

/// `count` values from `lo` to `hi`, evenly spaced in `log l`.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| {
                let f = i as f64 / (count - 1) as f64;
                // Pin the ends exactly.
                if i + 1 == count {
                    hi
                } else {
                    lo * (hi / lo).powf(f)
                }
            })
            .collect(),
    }
}

impl CriticalArgs {
    fn widths(&self) -> Result<Vec<f64>, Failure> {
        if let Some(l) = self.barrier_half_width {
            return Ok(vec![l]);
        }
        if let Some(list) = &self.l_list {
            return Ok(list.clone());
        }
        if !(self.l_min > 0.0 && self.l_max > self.l_min) {
            return Err(Failure::Domain(format!(
                "need 0 < l-min < l-max, got {} and {}",
                self.l_min, self.l_max
            )));
        }
        Ok(log_spaced(self.l_min, self.l_max, self.count))
    }
}

pub fn run(args: &CriticalArgs, out_dir: &Path) -> Result<(), Failure> {
    let widths = args.widths()?;
    if widths.is_empty() {
        return Err(Failure::Domain("no barrier widths given".into()));
    }
    let opts = CriticalOptions {
        tol_rel: args.tol,
        g_upper: args.g_upper,
        merge_separation: args.merge_separation,
    };
    let results = gc_sweep(args.box_half_width, &widths, &opts);

    let mut csv = String::from("l,g_c,merge_energy,bracket_width,error\n");
    let mut failed = 0;
    for (l, r) in widths.iter().zip(&results) {
        match r {
            Ok(c) => {
                let _ = writeln!(csv, "{l},{},{},{},", c.g_c, c.merge_energy, c.bracket_width);
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(csv, "{l},,,,{}", csv_field(&e.to_string()));
            }
        }
    }

    let mut m = RunManifest::new("critical");
    m.param("L", args.box_half_width).param("l", &widths);
    if args.figure3 {
        m.param("figure3", true)
            .param("l_min", args.l_min)
            .param("l_max", args.l_max)
            .param("count", args.count);
    }
    m.param("g_upper", args.g_upper)
        .param("merge_separation", args.merge_separation);
    m.tolerance("g_c_relative", args.tol)
        .tolerance("merge_energy_relative", 1e-12)
        .tolerance("bracket_width_relative", args.tol);

    let out = OutDir::create(out_dir)?;
    out.write(&mut m, &format!("{}.csv", args.name), &csv)?;
    out.finish(&m, &args.name)?;
    if failed > 0 {
        eprintln!(
            "warning: {failed} of {} widths failed; see the error column",
            widths.len()
        );
    }
    if failed == widths.len() {
        return Err(Failure::Domain("every width failed".into()));
    }
    Ok(())
}
