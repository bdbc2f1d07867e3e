use phasecrit::chain::{
    build_hamiltonian, ground_states, lowest_states, reduce_density, FiniteChain, ModelSpec,
    Parity, Sector,
};
use std::f64::consts::PI;

fn chain(n: usize) -> FiniteChain {
    FiniteChain::new(n).unwrap()
}

/// Even-parity ground energy of the periodic XY chain from its free-fermion
/// spectrum: E0 = −Σ_k Λ(k) over the antiperiodic momenta k = (2n+1)π/N.
fn free_fermion_energy(lambda: f64, gamma: f64, n: usize) -> f64 {
    -(0..n)
        .map(|j| {
            let k = (2 * j + 1) as f64 * PI / n as f64;
            (1.0 - lambda * k.cos()).hypot(lambda * gamma * k.sin())
        })
        .sum::<f64>()
}

#[test]
fn field_only_two_sites() {
    let b = ground_states(&ModelSpec::xy(0.0, 0.5).unwrap(), &chain(2)).unwrap();
    assert!((b.energy + 2.0).abs() < 1e-12);
    assert_eq!(b.degeneracy, 1);
    assert!((b.states[0][0] - 1.0).abs() < 1e-12);
}

#[test]
fn critical_ising_matches_free_fermions() {
    for n in [6, 8, 10] {
        let b = ground_states(&ModelSpec::xy(1.0, 1.0).unwrap(), &chain(n)).unwrap();
        let exact = free_fermion_energy(1.0, 1.0, n);
        assert!(
            (b.energy - exact).abs() < 1e-10,
            "N={n}: {} vs {exact}",
            b.energy
        );
    }
}

#[test]
fn anisotropic_chain_matches_free_fermions_off_criticality() {
    for &(lambda, gamma) in &[(0.4, 0.3), (0.8, 0.5), (1.6, 0.7)] {
        let h = build_hamiltonian(
            &ModelSpec::xy(lambda, gamma).unwrap(),
            &chain(12),
            Sector::Parity(Parity::Even),
        )
        .unwrap();
        let e = lowest_states(&h, 1).unwrap()[0].0;
        let exact = free_fermion_energy(lambda, gamma, 12);
        assert!(
            (e - exact).abs() < 1e-9,
            "({lambda},{gamma}): {e} vs {exact}"
        );
    }
}

#[test]
fn ferromagnetic_xxz_is_doubly_degenerate() {
    let b = ground_states(&ModelSpec::xxz(-2.0).unwrap(), &chain(8)).unwrap();
    assert_eq!(b.degeneracy, 2);
    assert!((b.energy + 4.0).abs() < 1e-12);
    let h = build_hamiltonian(&ModelSpec::xxz(-2.0).unwrap(), &chain(8), Sector::Full).unwrap();
    let ev = h.to_dense().symmetric_eigenvalues();
    let mut ev: Vec<f64> = ev.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    assert!((ev[0] - b.energy).abs() < 1e-10 && (ev[1] - b.energy).abs() < 1e-10);
    assert!(ev[2] - ev[1] > 0.1);
}

#[test]
fn factorizing_field_closes_the_gap() {
    let gamma: f64 = 0.5;
    let lambda_f = 1.0 / (1.0 - gamma * gamma).sqrt();
    let b = ground_states(&ModelSpec::xy(lambda_f, gamma).unwrap(), &chain(10)).unwrap();
    assert!(b.gap.unwrap() < 1e-6, "gap {}", b.gap.unwrap());
    let away = ground_states(&ModelSpec::xy(0.5, gamma).unwrap(), &chain(10)).unwrap();
    assert!(away.gap.unwrap() > 1e-2);
}

#[test]
fn bundle_invariants() {
    for model in [
        ModelSpec::xy(0.9, 0.4).unwrap(),
        ModelSpec::xxz(0.3).unwrap(),
    ] {
        let c = chain(12);
        let b = ground_states(&model, &c).unwrap();
        let h = build_hamiltonian(&model, &c, Sector::Full).unwrap();
        for psi in &b.states {
            let norm: f64 = psi.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-10);
            let mut hv = vec![0.0; psi.len()];
            use phasecrit::numerics::lanczos::LinearOperator;
            h.apply(psi, &mut hv);
            let res: f64 = hv
                .iter()
                .zip(psi)
                .map(|(a, v)| (a - b.energy * v).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-8, "residual {res}");
        }
    }
}

#[test]
fn degenerate_states_are_orthogonal() {
    let gamma: f64 = 0.5;
    let lambda_f = 1.0 / (1.0 - gamma * gamma).sqrt();
    let b = ground_states(&ModelSpec::xy(lambda_f, gamma).unwrap(), &chain(8)).unwrap();
    if b.degeneracy == 2 {
        let overlap: f64 = b.states[0]
            .iter()
            .zip(&b.states[1])
            .map(|(a, c)| a * c)
            .sum();
        assert!(overlap.abs() <= 1e-8);
    }
}

#[test]
fn iterative_energy_is_variational_against_dense() {
    for model in [
        ModelSpec::xy(1.0, 0.5).unwrap(),
        ModelSpec::xxz(0.7).unwrap(),
    ] {
        let c = chain(12);
        // Full 4096-dimensional space: large enough to take the Lanczos path.
        let full = build_hamiltonian(&model, &c, Sector::Full).unwrap();
        let iterative = lowest_states(&full, 1).unwrap()[0].0;
        let dense = [Parity::Even, Parity::Odd]
            .iter()
            .map(|&p| {
                build_hamiltonian(&model, &c, Sector::Parity(p))
                    .unwrap()
                    .to_dense()
                    .symmetric_eigenvalues()
                    .min()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(iterative >= dense - 1e-8);
        assert!((iterative - dense).abs() < 1e-8);
    }
}

#[test]
fn xxz_sector_choice_agrees_with_full_spectrum() {
    for delta in [-0.9, -0.5, 0.0, 0.5, 1.0, 2.0] {
        for n in [6, 8, 10] {
            let model = ModelSpec::xxz(delta).unwrap();
            let b = ground_states(&model, &chain(n)).unwrap();
            let full = build_hamiltonian(&model, &chain(n), Sector::Full)
                .unwrap()
                .to_dense()
                .symmetric_eigenvalues()
                .min();
            assert!(
                (b.energy - full).abs() < 1e-9,
                "Δ={delta} N={n}: {} vs {full}",
                b.energy
            );
        }
    }
}

#[test]
fn xxz_free_point_two_sites() {
    let b = ground_states(&ModelSpec::xxz(0.0).unwrap(), &chain(2)).unwrap();
    assert!((b.energy + 1.0).abs() < 1e-12);
}

#[test]
fn reduced_states_are_translation_invariant() {
    let b = ground_states(&ModelSpec::xy(0.6, 0.5).unwrap(), &chain(12)).unwrap();
    for m in [1, 3] {
        let reference = reduce_density(&b, &[0, m]).unwrap();
        for i in 1..12 {
            let r = reduce_density(&b, &[i, (i + m) % 12]).unwrap();
            assert!((r.matrix() - reference.matrix()).amax() <= 1e-9);
        }
    }
}

#[test]
fn hamiltonian_is_real_symmetric() {
    let h = build_hamiltonian(&ModelSpec::xy(1.3, 0.2).unwrap(), &chain(8), Sector::Full)
        .unwrap()
        .to_dense();
    assert!((&h - h.transpose()).amax() <= 1e-12);
}
