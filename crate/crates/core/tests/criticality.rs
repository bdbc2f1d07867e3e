use std::f64::consts::FRAC_PI_2;

use phasecrit::chain::ModelSpec;
use phasecrit::criticality::{
    detect_cusp, detect_discontinuity, detect_divergence, evaluate, factorization_scan,
    find_discontinuities, finite_diff, run_sweep, Backend, DetectionKind, DetectorConfig, FnProbe,
    Observable, Probe, ScanOptions, SweepSpec, Target,
};
use phasecrit::phase_space::{AngleConfig, PhasePoint};
use phasecrit::Error;

fn point(s: &str) -> PhasePoint {
    phasecrit::parse::parse_phase_point(s).unwrap()
}

fn xy_spec(gamma: f64, lo: f64, hi: f64, points: usize, obs: Observable) -> SweepSpec {
    SweepSpec::new(ModelSpec::xy(1.0, gamma).unwrap(), lo, hi, points, obs)
}

fn xxz_spec(n: usize, lo: f64, hi: f64, points: usize, obs: Observable) -> SweepSpec {
    SweepSpec::new(ModelSpec::xxz(0.0).unwrap(), lo, hi, points, obs)
        .with_backend(Backend::ExactDiagonalization { n_sites: n })
}

#[test]
fn ising_dwf_diverges_at_the_critical_field() {
    let cfg = DetectorConfig::default();
    for pt in ["00,00", "01,01", "11,00"] {
        let obs = Observable::DwfPair {
            point: point(pt),
            m: 1,
            sqrt: false,
        };
        let probe = xy_spec(1.0, 0.5, 1.5, 256, obs).probe(0).unwrap();
        let r = detect_divergence(&probe, 0.5, 1.5, 256, 3, &cfg).unwrap();
        assert_eq!(r.kind, DetectionKind::Divergence, "{pt}: {r}");
        assert!((r.location.unwrap() - 1.0).abs() <= 0.01, "{pt}: {r}");
    }
}

#[test]
fn anisotropic_gwf_diverges_at_the_critical_field() {
    let obs = Observable::GwfPair {
        config: AngleConfig::uniform(2, FRAC_PI_2, 0.0).unwrap(),
        m: 1,
        sqrt: false,
    };
    let probe = xy_spec(0.3, 0.5, 1.5, 256, obs).probe(0).unwrap();
    let r = detect_divergence(&probe, 0.5, 1.5, 256, 3, &DetectorConfig::default()).unwrap();
    assert!((r.location.unwrap() - 1.0).abs() <= 0.01, "{r}");
}

#[test]
fn disordered_side_alone_shows_nothing() {
    let obs = Observable::DwfPair {
        point: point("00,00"),
        m: 1,
        sqrt: false,
    };
    let probe = xy_spec(0.5, 0.2, 0.8, 128, obs).probe(0).unwrap();
    let cfg = DetectorConfig::default();
    assert!(detect_divergence(&probe, 0.2, 0.8, 128, 2, &cfg)
        .unwrap()
        .is_none());
    for t in [Target::Value, Target::FirstDerivative] {
        assert!(detect_discontinuity(&probe, 0.2, 0.8, 128, 2, t, &cfg)
            .unwrap()
            .is_none());
    }
}

#[test]
fn factorization_line_found_by_spread_and_sqrt_dwf() {
    let gamma: f64 = 0.5;
    let analytic = 1.0 / (1.0 - gamma * gamma).sqrt();
    let r = factorization_scan(gamma, &ScanOptions::default()).unwrap();
    let spread = r.spread_location.unwrap();
    assert!((spread - analytic).abs() <= r.grid_spacing, "{r:?}");
    assert!(
        (r.sqrt_dwf_location.unwrap() - analytic).abs() <= r.grid_spacing,
        "{r:?}"
    );
    assert_eq!(r.detection().kind, DetectionKind::FactorizationLine);
}

#[test]
fn rho_dwf_is_smooth_across_the_factorization_line() {
    let obs = Observable::DwfPair {
        point: point("00,00"),
        m: 1,
        sqrt: false,
    };
    let probe = xy_spec(0.5, 1.02, 2.5, 256, obs).probe(0).unwrap();
    let cfg = DetectorConfig::default();
    assert!(detect_cusp(&probe, 1.02, 2.5, 256, 2, &cfg)
        .unwrap()
        .is_none());
    let jumps =
        find_discontinuities(&probe, 1.02, 2.5, 256, 2, Target::FirstDerivative, &cfg).unwrap();
    assert!(jumps.is_empty(), "{jumps:?}");
}

#[test]
fn sqrt_dwf_kinks_on_the_factorization_line() {
    let gamma: f64 = 0.8;
    let analytic = 1.0 / (1.0 - gamma * gamma).sqrt();
    let obs = Observable::DwfPair {
        point: point("00,00"),
        m: 1,
        sqrt: true,
    };
    let probe = xy_spec(gamma, 1.02, 2.5, 256, obs).probe(0).unwrap();
    let jumps = find_discontinuities(
        &probe,
        1.02,
        2.5,
        256,
        2,
        Target::FirstDerivative,
        &DetectorConfig::default(),
    )
    .unwrap();
    assert!(
        jumps
            .iter()
            .any(|j| (j.location.unwrap() - analytic).abs() <= j.coarse_spacing),
        "{jumps:?}"
    );
}

#[test]
fn xxz_corner_jumps_at_the_ferromagnetic_point() {
    let obs = Observable::DwfPair {
        point: point("00,00"),
        m: 1,
        sqrt: false,
    };
    let probe = xxz_spec(10, -2.0, 0.0, 128, obs).probe(0).unwrap();
    let cfg = DetectorConfig::default();
    let r = detect_discontinuity(&probe, -2.0, 0.0, 128, 2, Target::Value, &cfg).unwrap();
    assert_eq!(r.kind, DetectionKind::Discontinuity, "{r}");
    assert!((r.location.unwrap() + 1.0).abs() <= r.coarse_spacing, "{r}");
}

#[test]
fn xxz_extremes_have_a_cusp_at_the_isotropic_point() {
    let cfg = DetectorConfig::default();
    let obs = Observable::DwfExtremes { m: 1, sqrt: false };
    let probe = xxz_spec(10, 0.0, 2.0, 128, obs).probe(0).unwrap();
    let r = detect_cusp(&probe, 0.0, 2.0, 128, 2, &cfg).unwrap();
    assert_eq!(r.kind, DetectionKind::Cusp, "{r}");
    assert!(
        (r.location.unwrap() - 1.0).abs() <= 2.0 * r.finest_spacing,
        "{r}"
    );
}

#[test]
fn gwf_argmax_switches_branch_at_the_isotropic_point() {
    let spec = xxz_spec(8, 0.5, 1.5, 64, Observable::GwfExtremes { m: 1 });
    let res = run_sweep(&spec).unwrap();
    let col = res.column("argmax_theta").unwrap();
    for (x, t) in res.grid.iter().zip(&res.values[col]) {
        let expected = if *x < 1.0 { FRAC_PI_2 } else { FRAC_PI_2 / 2.0 };
        if (x - 1.0).abs() > 0.02 {
            assert!((t - expected).abs() < 1e-6, "Δ={x}: θ={t}");
        }
    }
}

#[test]
fn ferromagnetic_branch_is_exact() {
    let obs = Observable::DwfPair {
        point: point("00,00"),
        m: 1,
        sqrt: false,
    };
    let backend = Backend::ExactDiagonalization { n_sites: 8 };
    for delta in [-3.0, -1.5, -1.0] {
        let v = evaluate(&ModelSpec::xxz(delta).unwrap(), &obs, backend).unwrap();
        assert!((v[0] - 0.125).abs() < 1e-12, "Δ={delta}: {v:?}");
    }
}

#[test]
fn sweep_derivatives_follow_the_values() {
    let obs = Observable::DwfSingle { x: 0 };
    let res = run_sweep(&xy_spec(0.5, 0.2, 0.8, 64, obs)).unwrap();
    let d1 = finite_diff(&res, 1).unwrap();
    assert_eq!(d1[0].len(), 64);
    let h = res.spacing().unwrap();
    for (i, w) in res.values[0].windows(3).enumerate() {
        let central = (w[2] - w[0]) / (2.0 * h);
        assert!((d1[0][i + 1] - central).abs() < 1e-12);
    }
}

#[test]
fn sweep_rejects_bad_specs() {
    let obs = Observable::DwfSingle { x: 0 };
    assert!(run_sweep(&xy_spec(0.5, 1.0, 0.5, 64, obs.clone())).is_err());
    assert!(run_sweep(&xy_spec(0.5, 0.5, 1.0, 10, obs.clone())).is_err());
    let thermo_xxz = SweepSpec::new(ModelSpec::xxz(0.0).unwrap(), -1.0, 1.0, 64, obs)
        .with_backend(Backend::ThermoLimit);
    assert!(run_sweep(&thermo_xxz).is_err());
}

#[test]
fn synthetic_plants_are_classified() {
    let cfg = DetectorConfig::default();
    let log = FnProbe(|x: f64| {
        let t = x - 0.437;
        0.2 * (3.0 * x).sin() + 0.7 * t * (t.abs() + 1e-300).ln()
    });
    let kink = FnProbe(|x: f64| 0.2 * (3.0 * x).sin() + 0.4 * (x - 0.561).abs());
    let step = FnProbe(|x: f64| 0.2 * (3.0 * x).sin() + if x < 0.389 { 0.0 } else { 0.02 });

    let r = detect_divergence(&log, 0.0, 1.0, 256, 3, &cfg).unwrap();
    assert!(
        (r.location.unwrap() - 0.437).abs() <= 2.0 * r.finest_spacing,
        "{r}"
    );
    assert!(detect_divergence(&kink, 0.0, 1.0, 256, 3, &cfg)
        .unwrap()
        .is_none());
    assert!(detect_divergence(&step, 0.0, 1.0, 256, 3, &cfg)
        .unwrap()
        .is_none());

    let r = detect_cusp(&kink, 0.0, 1.0, 256, 3, &cfg).unwrap();
    assert!(
        (r.location.unwrap() - 0.561).abs() <= 2.0 * r.finest_spacing,
        "{r}"
    );
    assert!((r.strength - 0.8).abs() < 0.05, "{r}");
    assert!(detect_cusp(&step, 0.0, 1.0, 256, 3, &cfg)
        .unwrap()
        .is_none());
    assert!(detect_cusp(&log, 0.0, 1.0, 256, 3, &cfg).unwrap().is_none());

    let r = detect_discontinuity(&step, 0.0, 1.0, 256, 3, Target::Value, &cfg).unwrap();
    assert!(
        (r.location.unwrap() - 0.389).abs() <= r.finest_spacing,
        "{r}"
    );
    assert!((r.strength - 0.02).abs() < 1e-3, "{r}");
    assert!(
        detect_discontinuity(&kink, 0.0, 1.0, 256, 3, Target::Value, &cfg)
            .unwrap()
            .is_none()
    );
}

#[test]
fn probe_errors_name_the_grid_point() {
    let probe = xy_spec(0.5, 0.5, 1.5, 64, Observable::DwfSingle { x: 0 })
        .probe(0)
        .unwrap();
    match probe.sample(-1.0, 0.0, 64) {
        Err(Error::AtGridPoint { parameter, .. }) => assert_eq!(parameter, -1.0),
        other => panic!("expected a grid-point error, got {other:?}"),
    }
}
