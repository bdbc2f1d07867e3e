use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::pauli::{kron_all, Pauli, C64};

/// A point (x, p) of the 2^n × 2^n discrete phase space. Bits are stored with
/// site 0 as the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    n: usize,
    x: u32,
    p: u32,
}

impl PhasePoint {
    pub fn new(n: usize, x: u32, p: u32) -> Result<Self> {
        if n == 0 || n > 3 {
            return Err(Error::InvalidArgument(format!(
                "{n} qubits; 1 to 3 supported"
            )));
        }
        if x >> n != 0 || p >> n != 0 {
            return Err(Error::InvalidArgument(format!(
                "coordinates ({x}, {p}) do not fit in {n} bits"
            )));
        }
        Ok(Self { n, x, p })
    }

    /// Builds a point from per-site bit lists (site 0 first).
    pub fn from_bits(x: &[u8], p: &[u8]) -> Result<Self> {
        if x.len() != p.len() {
            return Err(Error::InvalidArgument(format!(
                "x has {} bits but p has {}",
                x.len(),
                p.len()
            )));
        }
        let pack = |bits: &[u8]| -> Result<u32> {
            bits.iter().try_fold(0u32, |acc, &b| match b {
                0 | 1 => Ok((acc << 1) | b as u32),
                _ => Err(Error::InvalidArgument(format!("bit value {b}"))),
            })
        };
        Self::new(x.len(), pack(x)?, pack(p)?)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bit(&self, site: usize) -> u32 {
        (self.x >> (self.n - 1 - site)) & 1
    }

    pub fn p_bit(&self, site: usize) -> u32 {
        (self.p >> (self.n - 1 - site)) & 1
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Position in a flattened grid: x · 2^n + p.
    pub fn index(&self) -> usize {
        ((self.x as usize) << self.n) | self.p as usize
    }

    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        Self::new(n, (index >> n) as u32, (index & ((1 << n) - 1)) as u32)
    }

    /// All 4^n points in index order.
    pub fn all(n: usize) -> impl Iterator<Item = PhasePoint> {
        (0..1usize << (2 * n)).map(move |i| PhasePoint {
            n,
            x: (i >> n) as u32,
            p: (i & ((1 << n) - 1)) as u32,
        })
    }
}

impl fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in 0..self.n {
            write!(f, "{}", self.x_bit(s))?;
        }
        write!(f, ",")?;
        for s in 0..self.n {
            write!(f, "{}", self.p_bit(s))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhasePointOperator {
    pub point: PhasePoint,
    pub matrix: DMatrix<C64>,
}

/// Â(x, p) = ½[1 + (−1)^x σ^z + (−1)^p σ^x + (−1)^{x+p} σ^y] per qubit,
/// tensored in site order.
pub fn phase_point_operator(point: PhasePoint) -> PhasePointOperator {
    let factors: Vec<DMatrix<C64>> = (0..point.n)
        .map(|s| {
            let sx = if point.x_bit(s) == 0 { 1.0 } else { -1.0 };
            let sp = if point.p_bit(s) == 0 { 1.0 } else { -1.0 };
            (Pauli::I.matrix()
                + Pauli::Z.matrix() * C64::new(sx, 0.0)
                + Pauli::X.matrix() * C64::new(sp, 0.0)
                + Pauli::Y.matrix() * C64::new(sx * sp, 0.0))
                * C64::new(0.5, 0.0)
        })
        .collect();
    PhasePointOperator {
        point,
        matrix: kron_all(&factors),
    }
}
