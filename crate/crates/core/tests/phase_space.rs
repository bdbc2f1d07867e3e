use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use phasecrit::correlators::{build_rho_pair, build_rho_single, CorrelatorSet, Source};
use phasecrit::phase_space::{
    dwf, dwf_pair_closed, dwf_single_closed, extremize_gwf, gwf, gwf_pair_closed,
    gwf_single_closed, gwf_xxz_closed, matrix_sqrt, reconstruct_from_gwf, sample_gwf, AngleConfig,
    PhasePoint, SphereGrid,
};
use proptest::prelude::*;

fn pair(mz: f64, xx: f64, yy: f64, zz: f64) -> Option<CorrelatorSet> {
    let c = CorrelatorSet {
        mz,
        xx,
        yy,
        zz,
        distance: 1,
        source: Source::Synthetic,
    };
    (c.min_pair_eigenvalue() >= 0.0).then_some(c)
}

fn physical_pair() -> impl Strategy<Value = CorrelatorSet> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter_map("not a state", |(a, b, c, d)| pair(a, b, c, d))
}

fn angle() -> impl Strategy<Value = (f64, f64)> {
    (0.0..FRAC_PI_2, 0.0..2.0 * PI)
}

#[test]
fn product_state_dwf_is_a_delta() {
    // |00⟩ puts all weight on the x = 00 column, split evenly over p.
    let rho = build_rho_pair(&pair(1.0, 0.0, 0.0, 1.0).unwrap()).unwrap();
    let w = dwf(&rho).unwrap();
    for pt in PhasePoint::all(2) {
        let expected = if pt.x() == 0 { 0.25 } else { 0.0 };
        assert!((w.get(pt) - expected).abs() < 1e-14, "{pt}: {}", w.get(pt));
    }
}

#[test]
fn singlet_has_negative_dwf() {
    let rho = build_rho_pair(&pair(0.0, -1.0, -1.0, -1.0).unwrap()).unwrap();
    let w = dwf(&rho).unwrap();
    assert!(w.min() < -0.1);
    assert!((w.sum() - 1.0).abs() < 1e-14);
}

#[test]
fn single_qubit_gwf_at_the_poles() {
    let s3 = 3f64.sqrt();
    assert!((gwf_single_closed(1.0, 0.0) - (1.0 - s3) / 2.0).abs() < 1e-14);
    assert!((gwf_single_closed(1.0, FRAC_PI_2) - (1.0 + s3) / 2.0).abs() < 1e-14);
    assert!((gwf_single_closed(0.3, FRAC_PI_4) - 0.5).abs() < 1e-14);
}

#[test]
fn sqrt_squares_back() {
    let rho = build_rho_pair(&pair(0.2, 0.3, 0.1, -0.2).unwrap()).unwrap();
    let s = matrix_sqrt(&rho).unwrap();
    assert!((&s * &s - rho.matrix()).abs().max() < 1e-12);
}

#[test]
fn reconstruction_recovers_a_pair() {
    let rho = build_rho_pair(&pair(-0.1, 0.4, 0.2, 0.3).unwrap()).unwrap();
    let grid = SphereGrid::default();
    let back = reconstruct_from_gwf(&sample_gwf(&rho, &grid).unwrap(), 2, &grid).unwrap();
    assert!((back.matrix() - rho.matrix()).abs().max() < 1e-10);
}

#[test]
fn rejects_wrong_sizes() {
    let c = pair(0.0, 0.0, 0.0, 0.0).unwrap();
    assert!(gwf_pair_closed(&c, &AngleConfig::uniform(3, 0.1, 0.2).unwrap()).is_err());
    assert!(dwf_pair_closed(&c, PhasePoint::new(1, 0, 1).unwrap()).is_err());
    assert!(AngleConfig::new(vec![(0.1, -1.0)]).is_err());
}

proptest! {
    #[test]
    fn dwf_sums_to_one(c in physical_pair()) {
        let w = dwf(&build_rho_pair(&c).unwrap()).unwrap();
        prop_assert!((w.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pair_dwf_closed_form_matches_trace(c in physical_pair()) {
        let w = dwf(&build_rho_pair(&c).unwrap()).unwrap();
        for pt in PhasePoint::all(2) {
            prop_assert!((dwf_pair_closed(&c, pt).unwrap() - w.get(pt)).abs() < 1e-12);
        }
    }

    #[test]
    fn single_dwf_closed_form_matches_trace(mz in -1.0..1.0f64) {
        let w = dwf(&build_rho_single(mz).unwrap()).unwrap();
        for pt in PhasePoint::all(1) {
            prop_assert!((dwf_single_closed(mz, pt.x()) - w.get(pt)).abs() < 1e-12);
        }
    }

    #[test]
    fn pair_gwf_closed_form_matches_trace(c in physical_pair(), a in angle(), b in angle()) {
        let cfg = AngleConfig::new(vec![a, b]).unwrap();
        let trace = gwf(&build_rho_pair(&c).unwrap(), &cfg).unwrap();
        prop_assert!((gwf_pair_closed(&c, &cfg).unwrap() - trace).abs() < 1e-12);
    }

    #[test]
    fn z_rotation_shifts_phi(
        mz in -0.5..0.5f64,
        xx in -0.25..0.25f64,
        zz in -0.5..0.5f64,
        a in angle(),
        b in angle(),
        beta in 0.0..2.0 * PI,
    ) {
        // Equal xx and yy make the pair state invariant under a common
        // z-rotation, so shifting both φ by β leaves the GWF unchanged.
        let Some(c) = pair(mz, xx, xx, zz) else { return Ok(()) };
        let rho = build_rho_pair(&c).unwrap();
        let cfg = AngleConfig::new(vec![a, b]).unwrap();
        let shifted = AngleConfig::new(vec![
            (a.0, (a.1 + beta).rem_euclid(2.0 * PI)),
            (b.0, (b.1 + beta).rem_euclid(2.0 * PI)),
        ])
        .unwrap();
        prop_assert!((gwf(&rho, &cfg).unwrap() - gwf(&rho, &shifted).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn gwf_averages_to_trace(c in physical_pair()) {
        let grid = SphereGrid::default();
        let rho = build_rho_pair(&c).unwrap();
        let total: f64 = grid
            .product(2)
            .iter()
            .map(|(cfg, w)| w * gwf(&rho, cfg).unwrap())
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-10, "{total}");
    }

    #[test]
    fn symmetric_closed_form_agrees(zz in -0.9..0.9f64, xx in -0.45..0.45f64, a in angle(), b in angle()) {
        let Some(c) = pair(0.0, xx, xx, zz) else { return Ok(()) };
        let cfg = AngleConfig::new(vec![a, b]).unwrap();
        prop_assert!((gwf_xxz_closed(&c, &cfg).unwrap() - gwf_pair_closed(&c, &cfg).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn extremum_bounds_branch_values(xx in -0.45..0.45f64, zz in -0.9..0.9f64) {
        let Some(c) = pair(0.0, xx, xx, zz) else { return Ok(()) };
        let e = extremize_gwf(&c).unwrap();
        for t in [FRAC_PI_4, 3.0 * PI / 8.0, FRAC_PI_2] {
            let v = gwf_pair_closed(&c, &AngleConfig::uniform(2, t, 0.0).unwrap()).unwrap();
            prop_assert!(v <= e.max + 1e-12 && v >= e.min - 1e-12);
        }
    }
}
