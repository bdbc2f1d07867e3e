//! Finite-size correlators from exact diagonalization, averaged over the ring.

use crate::chain::{ground_states, pauli_expectation, FiniteChain, GroundStateBundle, ModelSpec};
use crate::correlators::set::{CorrelatorSet, Source, ThreePoint, TripleCorrelatorInput};
use crate::error::{Error, Result};
use crate::pauli::Pauli;

fn ring_average(bundle: &GroundStateBundle, pattern: &[(usize, Pauli)]) -> Result<f64> {
    let n = bundle.n_sites;
    let mut total = 0.0;
    for shift in 0..n {
        let ops: Vec<(usize, Pauli)> = pattern.iter().map(|&(s, p)| ((s + shift) % n, p)).collect();
        total += pauli_expectation(bundle, &ops)?;
    }
    Ok(total / n as f64)
}

fn check_span(span: usize, n: usize) -> Result<()> {
    if span == 0 || 2 * span >= n {
        return Err(Error::InvalidArgument(format!(
            "distance {span} must satisfy 1 <= m < N/2 = {}",
            n as f64 / 2.0
        )));
    }
    Ok(())
}

/// Ring-averaged correlators at distance `m` of an already computed ground state.
pub fn bundle_correlators(bundle: &GroundStateBundle, m: usize) -> Result<CorrelatorSet> {
    check_span(m, bundle.n_sites)?;
    let mz = ring_average(bundle, &[(0, Pauli::Z)])?;
    let pair = |p| ring_average(bundle, &[(0, p), (m, p)]);
    CorrelatorSet::new(
        mz,
        pair(Pauli::X)?,
        pair(Pauli::Y)?,
        pair(Pauli::Z)?,
        m,
        Source::FiniteEd,
    )
}

/// Ring-averaged three-site input for sites 0, m_ij, m_ij + m_jk.
pub fn bundle_triple(
    bundle: &GroundStateBundle,
    m_ij: usize,
    m_jk: usize,
) -> Result<TripleCorrelatorInput> {
    let (j, k) = (m_ij, m_ij + m_jk);
    check_span(k, bundle.n_sites)?;
    if m_ij == 0 || m_jk == 0 {
        return Err(Error::InvalidArgument(
            "triple sites must be distinct".into(),
        ));
    }
    let e = |a, b, c| ring_average(bundle, &[(0, a), (j, b), (k, c)]);
    use Pauli::{X, Y, Z};
    let three = ThreePoint {
        zzz: e(Z, Z, Z)?,
        xxz: e(X, X, Z)?,
        yyz: e(Y, Y, Z)?,
        xzx: e(X, Z, X)?,
        yzy: e(Y, Z, Y)?,
        zxx: e(Z, X, X)?,
        zyy: e(Z, Y, Y)?,
    };
    let ij = bundle_correlators(bundle, m_ij)?;
    TripleCorrelatorInput::new(
        ij.mz,
        ij,
        bundle_correlators(bundle, m_jk)?,
        bundle_correlators(bundle, k)?,
        three,
    )
}

/// Correlators at distance `m` from the ground state of `model` on `n_sites`.
pub fn ed_correlators(model: &ModelSpec, n_sites: usize, m: usize) -> Result<CorrelatorSet> {
    let chain = FiniteChain::new(n_sites)?;
    check_span(m, n_sites)?;
    bundle_correlators(&ground_states(model, &chain)?, m)
}

/// Three-site input from the ground state of `model` on `n_sites`.
pub fn ed_triple(
    model: &ModelSpec,
    n_sites: usize,
    m_ij: usize,
    m_jk: usize,
) -> Result<TripleCorrelatorInput> {
    let chain = FiniteChain::new(n_sites)?;
    check_span(m_ij + m_jk, n_sites)?;
    bundle_triple(&ground_states(model, &chain)?, m_ij, m_jk)
}

/// Equal mixture of the two polarized ferromagnets: only σ^zσ^z survives.
pub fn ferro_correlators(m: usize) -> CorrelatorSet {
    CorrelatorSet {
        mz: 0.0,
        xx: 0.0,
        yy: 0.0,
        zz: 1.0,
        distance: m,
        source: Source::FerroAnalytic,
    }
}

/// Three-site input of the polarized mixture.
pub fn ferro_triple(m_ij: usize, m_jk: usize) -> TripleCorrelatorInput {
    TripleCorrelatorInput {
        mz: 0.0,
        ij: ferro_correlators(m_ij),
        jk: ferro_correlators(m_jk),
        ik: ferro_correlators(m_ij + m_jk),
        three: ThreePoint::default(),
    }
}
