//! Pfaffian of a real antisymmetric matrix by Parlett–Reid style
//! Gaussian elimination with partial pivoting.

use nalgebra::DMatrix;

/// Returns `Pf(a)`. Odd dimensions give zero.
///
/// The input is assumed antisymmetric; only the strict upper triangle and the
/// sub-diagonal pivot column are read as the elimination proceeds.
pub fn pfaffian(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "pfaffian needs a square matrix");
    if n == 0 {
        return 1.0;
    }
    if n % 2 == 1 {
        return 0.0;
    }
    let mut m = a.clone();
    let mut pf = 1.0;
    let mut k = 0;
    while k + 1 < n {
        // Pivot: largest entry in column k below the diagonal.
        let mut kp = k + 1;
        let mut best = m[(k + 1, k)].abs();
        for r in (k + 2)..n {
            let v = m[(r, k)].abs();
            if v > best {
                best = v;
                kp = r;
            }
        }
        if kp != k + 1 {
            m.swap_rows(k + 1, kp);
            m.swap_columns(k + 1, kp);
            pf = -pf;
        }
        let pivot = m[(k, k + 1)];
        if pivot == 0.0 {
            return 0.0;
        }
        pf *= pivot;
        if k + 2 < n {
            let tau: Vec<f64> = ((k + 2)..n).map(|c| m[(k, c)] / pivot).collect();
            let col: Vec<f64> = ((k + 2)..n).map(|r| m[(r, k + 1)]).collect();
            for (ri, r) in ((k + 2)..n).enumerate() {
                for (ci, c) in ((k + 2)..n).enumerate() {
                    m[(r, c)] += tau[ri] * col[ci] - col[ri] * tau[ci];
                }
            }
        }
        k += 2;
    }
    pf
}
