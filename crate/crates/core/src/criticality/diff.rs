use crate::criticality::sweep::SweepResult;
use crate::error::{Error, Result};

const MIN_POINTS: usize = 5;

/// First or second derivative of uniformly spaced samples, same length as the
/// input: 3-point central stencils inside, 3-point one-sided stencils at the
/// two ends.
pub fn finite_diff_values(values: &[f64], h: f64, order: u8) -> Result<Vec<f64>> {
    let n = values.len();
    if n < MIN_POINTS {
        return Err(Error::InvalidArgument(format!(
            "{n} grid points; at least {MIN_POINTS} needed for finite differences"
        )));
    }
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "grid spacing {h} must be positive"
        )));
    }
    let v = values;
    let mut out = vec![0.0; n];
    match order {
        1 => {
            for i in 1..n - 1 {
                out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
            }
            out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
            out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
        }
        2 => {
            for i in 1..n - 1 {
                out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
            }
            out[0] = (v[0] - 2.0 * v[1] + v[2]) / (h * h);
            out[n - 1] = (v[n - 1] - 2.0 * v[n - 2] + v[n - 3]) / (h * h);
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "derivative order {order}; only 1 and 2 are supported"
            )))
        }
    }
    Ok(out)
}

/// Derivatives of every column of a sweep; the grid must be uniform.
pub fn finite_diff(result: &SweepResult, order: u8) -> Result<Vec<Vec<f64>>> {
    let h = result.spacing()?;
    result
        .values
        .iter()
        .map(|col| finite_diff_values(col, h, order))
        .collect()
}
