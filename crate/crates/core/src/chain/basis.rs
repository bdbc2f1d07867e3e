//! Computational-basis states of a symmetry sector.
//!
//! A state is an `N`-bit integer; site 0 is the most significant bit and a
//! set bit means spin down.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Full,
    /// Fixed parity of the number of down spins.
    Parity(Parity),
    /// Fixed number of down spins.
    Weight(usize),
}

#[derive(Debug, Clone)]
pub struct Basis {
    n_sites: usize,
    sector: Sector,
    states: Vec<u32>,
}

impl Basis {
    pub fn new(n_sites: usize, sector: Sector) -> Result<Self> {
        let full = 1u32 << n_sites;
        let states: Vec<u32> = match sector {
            Sector::Full => (0..full).collect(),
            Sector::Parity(p) => {
                let want = matches!(p, Parity::Odd) as u32;
                (0..full).filter(|s| s.count_ones() % 2 == want).collect()
            }
            Sector::Weight(w) => {
                if w > n_sites {
                    return Err(Error::InvalidArgument(format!(
                        "weight {w} exceeds {n_sites} sites"
                    )));
                }
                (0..full).filter(|s| s.count_ones() as usize == w).collect()
            }
        };
        Ok(Self {
            n_sites,
            sector,
            states,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[u32] {
        &self.states
    }

    pub fn state(&self, idx: usize) -> u32 {
        self.states[idx]
    }

    /// Position of `state` inside the sector, if it belongs to it.
    pub fn index(&self, state: u32) -> Option<usize> {
        match self.sector {
            Sector::Full => Some(state as usize),
            // Each pair (2t, 2t+1) holds exactly one state of either parity.
            Sector::Parity(p) => {
                let want = matches!(p, Parity::Odd) as u32;
                (state.count_ones() % 2 == want).then_some((state >> 1) as usize)
            }
            Sector::Weight(_) => self.states.binary_search(&state).ok(),
        }
    }

    /// Embeds a sector vector into the full `2^N` space.
    pub fn embed(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << self.n_sites];
        for (&s, &a) in self.states.iter().zip(v) {
            out[s as usize] = a;
        }
        out
    }
}
