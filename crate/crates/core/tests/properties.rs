//! Property tests for the structural invariants of the well, its spectrum,
//! eigenfunctions and SUSY partner.

use proptest::prelude::*;
use ptwell_core::oracle::{fd_spectrum, well_sampler};
use ptwell_core::secular::{secular_residual_scale, OvalPoint};
use ptwell_core::susy::{partner_potential_value, superpotential_value};
use ptwell_core::wavefunction::eigenfunction_value;
use ptwell_core::{
    classify_region, coefficients, energies, find_roots_on_hyperbola, potential_value, secular_residual,
    susy_parameters, verify_susy, Region, WellConfig,
};

fn config() -> impl Strategy<Value = (f64, f64, f64)> {
    // (L, l/L, g L²) kept well inside the unbroken phase.
    (0.5f64..3.0, 0.2f64..0.8, 0.0f64..3.0).prop_map(|(big_l, frac, g)| (big_l, frac * big_l, g / (big_l * big_l)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn potential_is_pt_symmetric((big_l, l, g) in config(), u in -0.999f64..0.999) {
        let cfg = WellConfig::new(big_l, l, g).unwrap();
        let x = u * big_l;
        let a = potential_value(&cfg, -x).unwrap();
        let b = potential_value(&cfg, x).unwrap().conj();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn potential_is_constant_on_each_region((big_l, l, g) in config(), u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let cfg = WellConfig::new(big_l, l, g).unwrap();
        for r in Region::ALL {
            let (a, b) = cfg.region_bounds(r);
            let x = a + (b - a) * (0.001 + 0.998 * u);
            let y = a + (b - a) * (0.001 + 0.998 * v);
            prop_assert_eq!(classify_region(&cfg, x).unwrap(), r);
            prop_assert_eq!(potential_value(&cfg, x).unwrap(), potential_value(&cfg, y).unwrap());
        }
    }

    #[test]
    fn oval_point_coordinates(s in 0.0f64..50.0, extra in 0.0f64..50.0) {
        let t = s + extra;
        let p = OvalPoint::new(s, t);
        prop_assert!((p.u - s * t).abs() <= 1e-15 * (s * t).max(1.0));
        prop_assert!((p.k * p.k - (t * t - s * s)).abs() <= 1e-12 * (t * t).max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn returned_roots_are_refined((big_l, l, g) in config()) {
        let cfg = WellConfig::new(big_l, l, g).unwrap();
        let t_max = (0.5 * g).sqrt() + 12.0 / big_l;
        let roots = find_roots_on_hyperbola(&cfg, t_max).unwrap();
        prop_assert!(!roots.is_empty());
        for (i, r) in roots.iter().enumerate() {
            prop_assert_eq!(r.index, i);
            prop_assert!(r.t > r.s && r.s >= 0.0);
            prop_assert!((r.t - r.s) > 1e-6);
            prop_assert!((r.k * r.k - (r.t * r.t - r.s * r.s)).abs() < 1e-10 * r.energy.max(1.0));
            prop_assert!((2.0 * r.s * r.t - g).abs() < 1e-12 * g.max(1.0));
            if r.s > 0.0 {
                let res = secular_residual(&cfg, r.s, r.t).unwrap();
                prop_assert!(res.abs() < 1e-9 * secular_residual_scale(&cfg, r.s, r.t), "{res}");
            }
        }
        prop_assert!(roots.windows(2).all(|w| w[0].energy < w[1].energy));
    }

    #[test]
    fn schrodinger_scaling((big_l, l, g) in config(), lambda in 0.5f64..2.0) {
        let a = energies(&WellConfig::new(big_l, l, g).unwrap(), 3).unwrap();
        let b = energies(&WellConfig::new(lambda * big_l, lambda * l, g / (lambda * lambda)).unwrap(), 3).unwrap();
        prop_assert!(a.is_complete() && b.is_complete());
        for (x, y) in a.roots.iter().zip(&b.roots) {
            prop_assert!((y.s - x.s / lambda).abs() < 1e-9 * x.t, "{x:?} {y:?}");
            prop_assert!((y.t - x.t / lambda).abs() < 1e-9 * x.t, "{x:?} {y:?}");
        }
    }

    #[test]
    fn eigenfunctions_are_pt_symmetric((big_l, l, g) in config(), u in -1.0f64..1.0) {
        let cfg = WellConfig::new(big_l, l, g).unwrap();
        let x = u * big_l;
        for r in energies(&cfg, 3).unwrap().roots {
            let c = coefficients(&cfg, &r).unwrap();
            let a = eigenfunction_value(&cfg, &c, -x).unwrap();
            let b = eigenfunction_value(&cfg, &c, x).unwrap().conj();
            let scale = c.a.norm() + c.b.abs() + c.c.abs();
            prop_assert!((a - b).norm() < 1e-10 * scale, "x = {x}: {a} vs {b}");
            prop_assert!(c.imag_residual < 1e-7 * c.c.abs().max(c.b.abs()));
        }
    }

    #[test]
    fn susy_structure((big_l, l, g) in config(), u in -0.99f64..0.99) {
        let g = g.max(1e-3);
        let cfg = WellConfig::new(big_l, l, g).unwrap();
        let roots = energies(&cfg, 4).unwrap().roots;
        let p = susy_parameters(&cfg, &roots[0]).unwrap();
        prop_assert_eq!(p.x_l1, p.x_r1.conj());
        let k2 = p.kappa0 * p.kappa0;
        prop_assert!((k2 - (ptwell_core::Complex64::new(-p.e0, g))).norm() < 1e-10 * (p.e0 + g));
        let x = u * big_l;
        if cfg.matching_points().iter().all(|m| (x - m).abs() > 1e-9 * big_l) {
            let w = superpotential_value(&p, &cfg, x).unwrap();
            let wm = superpotential_value(&p, &cfg, -x).unwrap();
            prop_assert!((wm + w.conj()).norm() < 1e-10 * w.norm().max(1.0), "{w} {wm}");
            let v = partner_potential_value(&p, &cfg, x).unwrap();
            let vm = partner_potential_value(&p, &cfg, -x).unwrap();
            prop_assert!((vm - v.conj()).norm() < 1e-10 * v.norm().max(1.0), "{v} {vm}");
        }
        let report = verify_susy(&cfg, &p, &roots);
        for v in [report.annihilation_residual, report.factorization_residual, report.intertwining_residual,
                  report.isospectral_residual, report.worst_matching_residual()] {
            prop_assert!(v >= 0.0 && v.is_finite());
        }
        prop_assert!(report.intertwining_residual < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn oracle_spectrum_is_closed_under_conjugation(l in 0.1f64..0.9, g in 0.0f64..200.0, n in 200usize..400) {
        let cfg = WellConfig::new(1.0, l, g).unwrap();
        let fd = fd_spectrum(well_sampler(&cfg, n), 1.0, n).unwrap();
        prop_assert_eq!(fd.eigenvalues.len(), n);
        let scale = fd.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for z in &fd.eigenvalues {
            let d = fd.eigenvalues.iter().map(|w| (w - z.conj()).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d < 1e-9 * scale, "{z}: {d}");
        }
    }
}
