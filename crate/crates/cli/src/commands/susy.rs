//! `ptwell susy`: the SUSY partner built on the ground state, sampled and
//! checked against its defining identities.

use std::collections::BTreeMap;
use std::path::Path;

use clap::Args;
use ptwell_core::susy::{
    noncontinuity_certificates, partner_eigenfunction_value, partner_potential_value, superpotential_value,
};
use ptwell_core::{
    coefficients, energies, susy_parameters, verify_susy, Complex64, SusyParameters, SusyVerificationReport,
};
use serde::Serialize;

use super::WellArgs;
use crate::manifest::{OutDir, RunManifest};
use crate::Failure;

#[derive(Debug, Clone, Args)]
pub struct SusyArgs {
    #[command(flatten)]
    pub well: WellArgs,
    /// Number of partner states, built on levels 1..=n.
    #[arg(long = "n", default_value_t = 4)]
    pub n_levels: usize,
    /// Sample points for W, V⁻ and the partner states (cell midpoints).
    #[arg(long, default_value_t = 401)]
    pub sample_points: usize,
    /// Bound on max|psi0' + W psi0| / max|psi0'|.
    #[arg(long, default_value_t = 1e-8)]
    pub annihilation_tol: f64,
    /// Bound on the split-equation residuals at x_R1.
    #[arg(long, default_value_t = 1e-9)]
    pub split_tol: f64,
    /// Bound on the relative factorization, intertwining and partner
    /// Schrödinger residuals.
    #[arg(long, default_value_t = 1e-8)]
    pub identity_tol: f64,
    /// Bound on the partner value and slope mismatch at the jumps.
    #[arg(long, default_value_t = 1e-9)]
    pub matching_tol: f64,
    /// Bound on the certificate identity residuals.
    #[arg(long, default_value_t = 1e-10)]
    pub certificate_tol: f64,
    #[arg(long, default_value = "susy")]
    pub name: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn below(value: f64, tolerance: f64) -> Self {
        Self {
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Samples {
    pub x: Vec<f64>,
    pub superpotential: Vec<Complex64>,
    pub partner_potential: Vec<Complex64>,
    /// One row per partner state `n = 0, 1, ...`.
    pub partner_states: Vec<Vec<Complex64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SusyOutput {
    pub energies: Vec<f64>,
    pub parameters: SusyParameters,
    /// At `x = l` and at `x = 0`.
    pub certificates: [Complex64; 2],
    pub samples: Samples,
    pub report: SusyVerificationReport,
    pub checks: BTreeMap<String, Check>,
    pub pass: bool,
}

pub fn build(args: &SusyArgs) -> Result<SusyOutput, Failure> {
    let cfg = args.well.config()?;
    let levels = energies(&cfg, args.n_levels + 1)?;
    if !levels.is_complete() {
        return Err(Failure::Domain(format!(
            "only {} of {} levels are real; the partner needs an unbroken spectrum",
            levels.roots.len(),
            levels.requested
        )));
    }
    let roots = &levels.roots;
    let p = susy_parameters(&cfg, &roots[0])?;
    let report = verify_susy(&cfg, &p, roots);
    let certificates = noncontinuity_certificates(&p, &cfg);

    let big_l = cfg.box_half_width();
    let m = args.sample_points.max(1);
    let x: Vec<f64> = (0..m).map(|j| -big_l + big_l * (2 * j + 1) as f64 / m as f64).collect();
    let superpotential = x
        .iter()
        .map(|&x| superpotential_value(&p, &cfg, x))
        .collect::<Result<Vec<_>, _>>()?;
    let partner_potential = x
        .iter()
        .map(|&x| partner_potential_value(&p, &cfg, x))
        .collect::<Result<Vec<_>, _>>()?;
    let mut partner_states = Vec::new();
    for r in &roots[1..] {
        let c = coefficients(&cfg, r)?;
        let row = x
            .iter()
            .map(|&x| partner_eigenfunction_value(&cfg, &p, &c, x))
            .collect::<Result<Vec<_>, _>>()?;
        partner_states.push(row);
    }

    let g = cfg.coupling();
    let mut checks = BTreeMap::new();
    let ann = if report.annihilation_scale > 0.0 {
        report.annihilation_residual / report.annihilation_scale
    } else {
        report.annihilation_residual
    };
    checks.insert("annihilation".into(), Check::below(ann, args.annihilation_tol));
    checks.insert(
        "split_equations".into(),
        Check::below(
            p.split_residuals[0].abs().max(p.split_residuals[1].abs()),
            args.split_tol,
        ),
    );
    checks.insert(
        "factorization".into(),
        Check::below(report.factorization_residual, args.identity_tol),
    );
    checks.insert(
        "intertwining".into(),
        Check::below(report.intertwining_residual, args.identity_tol),
    );
    checks.insert(
        "partner_schrodinger".into(),
        Check::below(report.isospectral_residual, args.identity_tol),
    );
    checks.insert(
        "partner_matching".into(),
        Check::below(report.worst_matching_residual(), args.matching_tol),
    );
    checks.insert(
        "skipped_levels".into(),
        Check::below(report.skipped_levels.len() as f64, 0.0),
    );
    let scale = g.max(p.e0).max(1.0);
    checks.insert(
        "certificate_l".into(),
        Check::below(
            (certificates[0] - Complex64::new(0.0, -0.5 * g)).norm() / scale,
            args.certificate_tol,
        ),
    );
    checks.insert(
        "certificate_0".into(),
        Check::below(
            (certificates[1] - Complex64::new(0.0, -g)).norm() / scale,
            args.certificate_tol,
        ),
    );
    if g > 0.0 {
        // A real barrier makes V⁻ jump; the certificates must not vanish.
        let smallest = certificates.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        checks.insert(
            "certificates_nonzero".into(),
            Check {
                value: smallest,
                tolerance: 0.0,
                pass: smallest > 0.0,
            },
        );
    }
    let pass = checks.values().all(|c| c.pass);
    Ok(SusyOutput {
        energies: levels.energies(),
        parameters: p,
        certificates,
        samples: Samples {
            x,
            superpotential,
            partner_potential,
            partner_states,
        },
        report,
        checks,
        pass,
    })
}

pub fn run(args: &SusyArgs, out_dir: &Path) -> Result<(), Failure> {
    let result = build(args)?;
    let mut m = RunManifest::new("susy");
    args.well.record(&mut m);
    m.param("n_levels", args.n_levels)
        .param("sample_points", args.sample_points)
        .param("samples_per_region_in_report", result.report.samples_per_region);
    m.tolerance("annihilation_relative", args.annihilation_tol)
        .tolerance("split_equations", args.split_tol)
        .tolerance("factorization_relative", args.identity_tol)
        .tolerance("intertwining_relative", args.identity_tol)
        .tolerance("partner_schrodinger_relative", args.identity_tol)
        .tolerance("partner_matching_relative", args.matching_tol)
        .tolerance("certificates_relative", args.certificate_tol)
        .tolerance("samples_relative", 1e-12);

    let out = OutDir::create(out_dir)?;
    let mut body = serde_json::to_string_pretty(&result).map_err(anyhow::Error::from)?;
    body.push('\n');
    out.write(&mut m, &format!("{}.json", args.name), &body)?;
    out.finish(&m, &args.name)?;
    if !result.pass {
        let failed: Vec<&str> = result
            .checks
            .iter()
            .filter(|(_, c)| !c.pass)
            .map(|(k, _)| k.as_str())
            .collect();
        return Err(Failure::Validation(format!("checks failed: {}", failed.join(", "))));
    }
    Ok(())
}
