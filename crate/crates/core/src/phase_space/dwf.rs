use crate::correlators::CorrelatorSet;
use crate::error::{Error, Result};
use crate::phase_space::operator::{qubits_of, trace_product, AsOperator};
use crate::phase_space::point::{phase_point_operator, PhasePoint};

/// DWF values over the 4^n phase-space points, indexed by [`PhasePoint::index`].
#[derive(Debug, Clone, PartialEq)]
pub struct DwfGrid {
    n: usize,
    values: Vec<f64>,
    normalization_trace: f64,
}

impl DwfGrid {
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Trace of the operator the grid was computed from.
    pub fn normalization_trace(&self) -> f64 {
        self.normalization_trace
    }

    pub fn get(&self, point: PhasePoint) -> f64 {
        assert_eq!(point.n_qubits(), self.n, "point has the wrong qubit count");
        self.values[point.index()]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Σ_α W(α) Â(α).
    pub fn reconstruct(&self) -> nalgebra::DMatrix<crate::pauli::C64> {
        let dim = 1 << self.n;
        let mut out = nalgebra::DMatrix::zeros(dim, dim);
        for point in PhasePoint::all(self.n) {
            out +=
                phase_point_operator(point).matrix * crate::pauli::C64::new(self.get(point), 0.0);
        }
        out
    }
}

/// W(α) = Tr(op Â(α)) / 2^n for every phase-space point.
pub fn dwf(op: &impl AsOperator) -> Result<DwfGrid> {
    let m = op.as_complex();
    let n = qubits_of(&m)?;
    let scale = 1.0 / (1 << n) as f64;
    let values = PhasePoint::all(n)
        .map(|pt| trace_product(&m, &phase_point_operator(pt).matrix).re * scale)
        .collect();
    Ok(DwfGrid {
        n,
        values,
        normalization_trace: m.trace().re,
    })
}

/// Single-site closed form (1 + (−1)^x ⟨σ^z⟩)/4; independent of p.
pub fn dwf_single_closed(mz: f64, x: u32) -> f64 {
    let s = if x == 0 { 1.0 } else { -1.0 };
    0.25 * (1.0 + s * mz)
}

/// Two-site closed form
/// (1/16)[1 + ((−1)^{x1} + (−1)^{x2}) mz + (−1)^{p1+p2} xx + (−1)^{x1+x2} zz
/// + (−1)^{x1+x2+p1+p2} yy].
pub fn dwf_pair_closed(c: &CorrelatorSet, point: PhasePoint) -> Result<f64> {
    if point.n_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: point.n_qubits(),
        });
    }
    let sign = |b: u32| if b == 0 { 1.0 } else { -1.0 };
    let (x1, x2) = (sign(point.x_bit(0)), sign(point.x_bit(1)));
    let (p1, p2) = (sign(point.p_bit(0)), sign(point.p_bit(1)));
    Ok(
        (1.0 + (x1 + x2) * c.mz + p1 * p2 * c.xx + x1 * x2 * c.zz + x1 * x2 * p1 * p2 * c.yy)
            / 16.0,
    )
}

/// The three representative points (00,00), (00,01), (01,00).
pub fn pair_representatives() -> [PhasePoint; 3] {
    [
        PhasePoint::new(2, 0b00, 0b00).expect("valid point"),
        PhasePoint::new(2, 0b00, 0b01).expect("valid point"),
        PhasePoint::new(2, 0b01, 0b00).expect("valid point"),
    ]
}

/// (W_M, W_m): max and min of a two-qubit grid over the representatives.
pub fn extremize_dwf(grid: &DwfGrid) -> Result<(f64, f64)> {
    if grid.n_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: grid.n_qubits(),
        });
    }
    let vals = pair_representatives().map(|p| grid.get(p));
    Ok((
        vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        vals.iter().copied().fold(f64::INFINITY, f64::min),
    ))
}
