use std::f64::consts::PI;

use ricci_lab::immersion::{
    detect_closure, profile_simple_check, solve_for_ell, ClosureResult, ThetaProfile, CLOSURE_TOL,
};
use ricci_lab::mesh_io::{
    build_profile, build_surface_mesh, export_csv, export_json, export_obj, scan_theta, Projection,
    ScanConfig, Vertices,
};
use ricci_lab::phase_portrait::{
    conformal_profile_check, energy, integrate_orbit, orbit_period_numeric, period_integral,
    potential, turning_points, OrbitTolerances, RicciParams,
};
use ricci_lab::spherical_family::SphericalParams;

fn embedded() -> (SphericalParams, ClosureResult) {
    let sol = solve_for_ell(1.0, 0.51, 1, 1).unwrap();
    (SphericalParams::new(1.0, 0.51, sol.ell).unwrap(), sol.closure)
}

/// (m, ell) on a 5x5 grid inside the admissible window.
fn window_grid(a: f64, c: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..5 {
        let m = 0.2 + 0.3 * i as f64;
        let p = RicciParams::new(a, c, m, f64::MAX).map(|p| p.window()).ok();
        let lower = match p {
            Some(w) => w.lower,
            None => continue,
        };
        for j in 0..5 {
            out.push((m, lower * (1.05 + 0.4 * j as f64)));
        }
    }
    out
}

#[test]
fn period_methods_agree() {
    for a in [2.0, 3.0, 4.0, 6.0] {
        let grid = window_grid(a, 1.0);
        assert_eq!(grid.len(), 25, "a = {a}");
        for (m, ell) in grid {
            let t = period_integral(a, 1.0, m, ell).unwrap();
            let o = orbit_period_numeric(a, 1.0, m, ell).unwrap();
            assert!((t - o).abs() <= 1e-8 * (1.0 + t), "a={a} m={m} ell={ell}: {t} vs {o}");
        }
    }
}

#[test]
fn quartic_period_is_constant() {
    for c in [0.5, 1.0, 2.0] {
        for (m, ell) in window_grid(4.0, c) {
            let t = period_integral(4.0, c, m, ell).unwrap();
            assert!((t - PI / c.sqrt()).abs() <= 1e-10, "c={c} m={m} ell={ell}: {t}");
        }
    }
}

#[test]
fn small_oscillation_law() {
    for a in [2.0, 3.0, 4.0] {
        let p = RicciParams::new(a, 1.0, 0.7, f64::MAX).unwrap();
        let lower = p.window().lower;
        let t = period_integral(a, 1.0, 0.7, lower + 1e-6).unwrap();
        assert!((t - p.small_oscillation_period()).abs() <= 1e-3, "a={a}: {t}");
    }
}

#[test]
fn turning_points_are_consistent() {
    for a in [2.0, 3.0, 4.0] {
        for (m, ell) in window_grid(a, 1.0) {
            let (lo, hi) = turning_points(a, 1.0, m, ell).unwrap();
            let eq = (m / 1.0f64).powf(1.0 / a);
            assert!(lo < eq && eq < hi);
            for x in [lo, hi] {
                let p = potential(a, 1.0, m, x).unwrap();
                assert!((p - ell).abs() <= 1e-12 * ell, "a={a} P({x}) = {p} vs {ell}");
            }
        }
    }
}

#[test]
fn energy_drift_over_ten_periods() {
    for a in [2.0, 3.0, 4.0] {
        for (m, ell) in window_grid(a, 1.0).into_iter().step_by(6) {
            let (lo, _) = turning_points(a, 1.0, m, ell).unwrap();
            let t = period_integral(a, 1.0, m, ell).unwrap();
            let orbit = integrate_orbit(a, 1.0, m, lo, 0.0, (0.0, 10.0 * t), &OrbitTolerances::default()).unwrap();
            assert!(orbit.max_energy_drift() <= 1e-9, "a={a} drift {}", orbit.max_energy_drift());
            let (x, y) = orbit.sample(10.0 * t).unwrap();
            assert!((x - lo).abs() < 1e-6 * (1.0 + lo), "a={a} returned to {x} not {lo}");
            assert!((energy(a, 1.0, m, x, y).unwrap() - ell).abs() <= 1e-9 * (1.0 + ell));
        }
    }
}

#[test]
fn conformal_check_on_family() {
    let chk = conformal_profile_check(&RicciParams::new(4.0, 1.0, 0.5, 0.8).unwrap(), 256).unwrap();
    assert!(chk.max_residual < 1e-6, "{chk:?}");
    assert!(!chk.delaunay_type);
}

#[test]
fn no_embedded_examples_below_half() {
    for i in 1..=10 {
        for j in 1..=10 {
            let m = 0.24 * i as f64 / 10.0 * 0.999;
            let root = m.sqrt();
            let ell = root + (0.5 - root) * j as f64 / 10.0;
            let tp = ThetaProfile::new(&SphericalParams::new(1.0, m, ell).unwrap()).unwrap();
            let th = tp.big_theta();
            assert!(th > PI && th < PI / (1.0 - ell).sqrt(), "m={m} ell={ell}: {th}");
            if let Some(cl) = detect_closure(th, 50, CLOSURE_TOL) {
                assert!(!cl.embedded, "m={m} ell={ell}");
            }
        }
    }
}

#[test]
fn minimal_slice_theta_increasing() {
    let thetas: Vec<f64> = (0..6)
        .map(|k| {
            let m = 0.02 + 0.04 * k as f64;
            ThetaProfile::new(&SphericalParams::new(1.0, m, 0.5).unwrap()).unwrap().big_theta()
        })
        .collect();
    assert!(thetas.windows(2).all(|w| w[1] > w[0]), "{thetas:?}");
}

#[test]
fn induced_metric_is_warped_product() {
    let (p, _) = embedded();
    let tp = ThetaProfile::new(&p).unwrap();
    let h = 1e-5;
    let x = |s: f64, t: f64| tp.surface_point_at(s, tp.theta(s).unwrap(), t);
    let dot = |u: [f64; 4], v: [f64; 4]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    for i in 0..12 {
        let s = 0.1 + 0.25 * i as f64;
        let t = 0.4 * i as f64;
        let xs: Vec<f64> = (0..4).map(|k| (x(s + h, t)[k] - x(s - h, t)[k]) / (2.0 * h)).collect();
        let xt: Vec<f64> = (0..4).map(|k| (x(s, t + h)[k] - x(s, t - h)[k]) / (2.0 * h)).collect();
        let xs = [xs[0], xs[1], xs[2], xs[3]];
        let xt = [xt[0], xt[1], xt[2], xt[3]];
        let f = tp.profile().jet(s).0;
        assert!((dot(xs, xs) - 1.0).abs() < 1e-7, "E at s={s}");
        assert!(dot(xs, xt).abs() < 1e-7, "F at s={s}");
        assert!((dot(xt, xt) - f * f).abs() < 1e-7, "G at s={s}");
    }
}

#[test]
fn meshes_are_watertight_tori() {
    let (p, cl) = embedded();
    for (ns, nt) in [(16, 3), (32, 8), (64, 17)] {
        for proj in [Projection::None, Projection::Stereographic] {
            let mesh = build_surface_mesh(&p, &cl, ns, nt, proj).unwrap();
            assert_eq!(mesh.vertex_count(), ns * nt);
            assert_eq!(mesh.euler_characteristic(), 0);
            assert!(mesh.is_watertight());
            mesh.validate().unwrap();
            if let Vertices::R4(vs) = &mesh.vertices {
                for v in vs {
                    let n2: f64 = v.iter().map(|x| x * x).sum();
                    assert!((n2 - 1.0).abs() <= 1e-12);
                }
            }
        }
    }
    let three_pi = solve_for_ell(1.0, 0.51, 3, 2).unwrap();
    let p3 = SphericalParams::new(1.0, 0.51, three_pi.ell).unwrap();
    let mesh = build_surface_mesh(&p3, &three_pi.closure, 64, 8, Projection::Stereographic).unwrap();
    assert_eq!(mesh.euler_characteristic(), 0);
    assert!(mesh.is_watertight());
}

#[test]
fn embeddedness_levels_agree_on_examples() {
    let (p, cl) = embedded();
    assert!(profile_simple_check(&p, Some(&cl), 2048).unwrap());
    let three_pi = solve_for_ell(1.0, 0.51, 3, 2).unwrap();
    let p3 = SphericalParams::new(1.0, 0.51, three_pi.ell).unwrap();
    assert!(!profile_simple_check(&p3, Some(&three_pi.closure), 2048).unwrap());
}

#[test]
fn exports_are_deterministic() {
    let render = || {
        let (p, cl) = embedded();
        let mesh = build_surface_mesh(&p, &cl, 32, 6, Projection::Stereographic).unwrap();
        let profile = build_profile(&p, &cl, 64).unwrap();
        let scan = scan_theta(1.0, (0.1, 0.6), (0.3, 0.8), (4, 4), &ScanConfig::default()).unwrap();
        let mut obj = Vec::new();
        let mut csv = Vec::new();
        let mut json = Vec::new();
        export_obj(&mesh, &mut obj).unwrap();
        export_csv(&profile, &mut csv).unwrap();
        export_csv(&scan, &mut csv).unwrap();
        export_json(&scan, &mut json).unwrap();
        export_json(&mesh, &mut json).unwrap();
        (obj, csv, json)
    };
    assert_eq!(render(), render());
}

#[test]
fn json_round_trips_exactly() {
    let (p, cl) = embedded();
    let profile = build_profile(&p, &cl, 64).unwrap();
    let mut buf = Vec::new();
    export_json(&profile, &mut buf).unwrap();
    let back: ricci_lab::immersion::ProfileCurve = serde_json::from_slice(&buf).unwrap();
    assert_eq!(back, profile);
}

#[test]
fn scan_never_embeds_below_half() {
    let scan = scan_theta(1.0, (0.02, 0.9), (0.1, 0.95), (12, 12), &ScanConfig::default()).unwrap();
    assert!(!scan.rows.is_empty());
    for row in &scan.rows {
        if row.ell <= 0.5 {
            assert!(row.closure.is_none_or(|c| !c.embedded), "{row:?}");
        }
        if let Some(th) = row.theta {
            assert!(th > PI, "{row:?}");
        }
    }
}
