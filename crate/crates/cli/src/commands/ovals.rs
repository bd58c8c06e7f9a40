//! `ptwell ovals`: plot data for the zero curves of the secular residual.
//!
//! Polylines are written as whitespace-separated columns, one vertex per
//! line and a blank line between curves; `st` gives `s t`, `uk` gives
//! `k u` so that the hyperbola `u = g/2` is a horizontal line.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, ValueEnum};
use ptwell_core::secular::{hyperbola_intersections, hyperbola_point, OvalOptions};
use ptwell_core::{trace_semi_ovals, OvalPoint};
use serde::Serialize;

use super::WellArgs;
use crate::manifest::{OutDir, RunManifest};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coords {
    St,
    Uk,
}

#[derive(Debug, Clone, Args)]
pub struct OvalsArgs {
    #[command(flatten)]
    pub well: WellArgs,
    #[arg(long, default_value_t = 20.0)]
    pub s_max: f64,
    #[arg(long, default_value_t = 40.0)]
    pub t_max: f64,
    #[arg(long, value_enum, default_value_t = Coords::St)]
    pub coords: Coords,
    /// Grid cells per axis for the contour tracer.
    #[arg(long, default_value_t = 600)]
    pub cells: usize,
    /// Vertices of the sampled hyperbola.
    #[arg(long, default_value_t = 400)]
    pub hyperbola_points: usize,
    #[arg(long, default_value = "ovals")]
    pub name: String,
}

fn columns(p: &OvalPoint, coords: Coords) -> (f64, f64) {
    match coords {
        Coords::St => (p.s, p.t),
        Coords::Uk => (p.k, p.u),
    }
}

fn polylines_text(lines: &[Vec<OvalPoint>], coords: Coords) -> String {
    let mut out = String::new();
    for (i, line) in lines.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for p in line {
            let (a, b) = columns(p, coords);
            let _ = writeln!(out, "{a} {b}");
        }
    }
    out
}

/// The part of `2st = g` with `t >= s` inside the window.
fn hyperbola(g: f64, s_max: f64, t_max: f64, count: usize) -> Vec<OvalPoint> {
    let count = count.max(2);
    let t_min = (0.5 * g).sqrt();
    if t_max <= t_min {
        return Vec::new();
    }
    let k_max = ((t_max - t_min) * (t_max + t_min) * (t_max * t_max + t_min * t_min)).sqrt() / t_max;
    (0..count)
        .map(|i| k_max * i as f64 / (count - 1) as f64)
        .map(|k| {
            let (s, t) = hyperbola_point(g, k);
            OvalPoint::new(s, t)
        })
        .filter(|p| p.s <= s_max && p.t <= t_max)
        .collect()
}

pub fn run(args: &OvalsArgs, out_dir: &Path) -> Result<(), Failure> {
    let cfg = args.well.config()?;
    if !(args.s_max > 0.0 && args.t_max > 0.0) {
        return Err(Failure::Domain("s_max and t_max must be positive".into()));
    }
    if args.cells < 2 {
        return Err(Failure::Domain("need at least 2 grid cells per axis".into()));
    }
    let opts = OvalOptions {
        s_cells: args.cells,
        t_cells: args.cells,
    };
    let lines = trace_semi_ovals(&cfg, args.s_max, args.t_max, &opts);
    let g = cfg.coupling();
    let curve = hyperbola(g, args.s_max, args.t_max, args.hyperbola_points);
    let hyperbola_text = match args.coords {
        Coords::St => polylines_text(&[curve], Coords::St),
        Coords::Uk => {
            let k_end = curve.last().map(|p| p.k).unwrap_or(0.0);
            if curve.is_empty() {
                String::new()
            } else {
                format!("0 {}\n{k_end} {}\n", 0.5 * g, 0.5 * g)
            }
        }
    };
    let mut crossings = String::from("s,t,u,k,E\n");
    for p in hyperbola_intersections(&lines, g) {
        let _ = writeln!(crossings, "{},{},{},{},{}", p.s, p.t, p.u, p.k, p.energy());
    }

    let tag = match args.coords {
        Coords::St => "st",
        Coords::Uk => "uk",
    };
    let stem = format!("{}_{tag}", args.name);
    let mut m = RunManifest::new("ovals");
    args.well.record(&mut m);
    m.param("s_max", args.s_max)
        .param("t_max", args.t_max)
        .param("coords", args.coords)
        .param("cells", args.cells)
        .param("hyperbola_points", args.hyperbola_points)
        .param(
            "columns",
            match args.coords {
                Coords::St => "s t",
                Coords::Uk => "k u",
            },
        )
        .param("curves", lines.len());
    // Vertices are bisected onto the zero set along grid edges; between
    // vertices the polyline is linear, so a curve is good to a cell.
    let cell = (args.s_max / args.cells as f64).max(args.t_max / args.cells as f64);
    m.tolerance("vertex_edge_position", 1e-12 * args.s_max.max(args.t_max))
        .tolerance("polyline_position", cell)
        .tolerance("intersection_E_relative", 1e-3);

    let out = OutDir::create(out_dir)?;
    out.write(&mut m, &format!("{stem}.dat"), &polylines_text(&lines, args.coords))?;
    out.write(&mut m, &format!("{stem}_hyperbola.dat"), &hyperbola_text)?;
    out.write(&mut m, &format!("{stem}_intersections.csv"), &crossings)?;
    out.finish(&m, &stem)?;
    Ok(())
}
