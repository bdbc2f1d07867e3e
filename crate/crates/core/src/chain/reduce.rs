use nalgebra::DMatrix;

use crate::chain::ground::GroundStateBundle;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, C64};

fn check_sites(sites: &[usize], n_sites: usize) -> Result<()> {
    if sites.is_empty() || sites.len() > 3 {
        return Err(Error::InvalidSites(format!(
            "between 1 and 3 sites required, got {}",
            sites.len()
        )));
    }
    for (k, &s) in sites.iter().enumerate() {
        if s >= n_sites {
            return Err(Error::SiteOutOfRange { site: s, n_sites });
        }
        if sites[..k].contains(&s) {
            return Err(Error::InvalidSites(format!("site {s} repeated")));
        }
    }
    Ok(())
}

/// Partial trace of the ground state(s) onto `sites`, in the given order.
///
/// A degenerate bundle is reduced as the equal-weight mixture of its states.
pub fn reduce_density(bundle: &GroundStateBundle, sites: &[usize]) -> Result<DensityMatrix> {
    let n = bundle.n_sites;
    check_sites(sites, n)?;
    let k = sites.len();
    let dim = 1usize << k;
    let masks: Vec<usize> = sites.iter().map(|&s| 1usize << (n - 1 - s)).collect();
    let all_mask: usize = masks.iter().sum();
    let scatter = |local: usize| -> usize {
        (0..k)
            .filter(|&q| (local >> (k - 1 - q)) & 1 == 1)
            .map(|q| masks[q])
            .sum()
    };
    let offsets: Vec<usize> = (0..dim).map(scatter).collect();

    let mut rho = DMatrix::<f64>::zeros(dim, dim);
    let weight = 1.0 / bundle.states.len() as f64;
    for psi in &bundle.states {
        for (env, _) in psi.iter().enumerate().filter(|(s, _)| s & all_mask == 0) {
            for a in 0..dim {
                let pa = psi[env | offsets[a]];
                if pa == 0.0 {
                    continue;
                }
                for b in 0..dim {
                    rho[(a, b)] += weight * pa * psi[env | offsets[b]];
                }
            }
        }
    }
    // Remove rounding asymmetry before validation.
    let rho = (&rho + rho.transpose()) * 0.5;
    let rho = &rho / rho.trace();
    DensityMatrix::new(rho)
}

/// ⟨P_{s1} Q_{s2} …⟩ in the ground-state bundle (equal mixture if degenerate).
pub fn pauli_expectation(bundle: &GroundStateBundle, ops: &[(usize, Pauli)]) -> Result<f64> {
    let n = bundle.n_sites;
    for &(s, _) in ops {
        if s >= n {
            return Err(Error::SiteOutOfRange {
                site: s,
                n_sites: n,
            });
        }
    }
    let mut total = 0.0;
    for psi in &bundle.states {
        let mut acc = C64::new(0.0, 0.0);
        for (s, &amp) in psi.iter().enumerate() {
            if amp == 0.0 {
                continue;
            }
            let mut t = s as u32;
            let mut phase = C64::new(1.0, 0.0);
            for &(site, p) in ops {
                let shift = n - 1 - site;
                let (b, ph) = p.act((t >> shift) & 1);
                t = (t & !(1 << shift)) | (b << shift);
                phase *= ph;
            }
            acc += phase * amp * psi[t as usize];
        }
        total += acc.re;
    }
    Ok(total / bundle.states.len() as f64)
}
