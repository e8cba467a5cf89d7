use faer::Mat;

use crate::{Error, Result};

const ANTISYM_TOL: f64 = 1e-10;

/// Pfaffian of a real antisymmetric matrix by Parlett-Reid elimination with
/// partial pivoting.
pub fn pfaffian(m: &Mat<f64>) -> Result<f64> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: m.ncols() });
    }
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let mut scale = 0.0f64;
    let mut dev = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            scale = scale.max(m[(i, j)].abs());
            dev = dev.max((m[(i, j)] + m[(j, i)]).abs());
        }
    }
    if dev > ANTISYM_TOL * scale.max(1.0) {
        return Err(Error::NotAntisymmetric(dev));
    }
    let mut a = m.clone();
    let mut pf = 1.0;
    for k in (0..n.saturating_sub(1)).step_by(2) {
        let mut kp = k + 1;
        for i in k + 2..n {
            if a[(i, k)].abs() > a[(kp, k)].abs() {
                kp = i;
            }
        }
        if kp != k + 1 {
            for j in 0..n {
                let t = a[(k + 1, j)];
                a[(k + 1, j)] = a[(kp, j)];
                a[(kp, j)] = t;
            }
            for i in 0..n {
                let t = a[(i, k + 1)];
                a[(i, k + 1)] = a[(i, kp)];
                a[(i, kp)] = t;
            }
            pf = -pf;
        }
        let piv = a[(k, k + 1)];
        if piv == 0.0 {
            return Ok(0.0);
        }
        pf *= piv;
        if k + 2 < n {
            let tau: Vec<f64> = (k + 2..n).map(|i| a[(k, i)] / piv).collect();
            let col: Vec<f64> = (k + 2..n).map(|i| a[(i, k + 1)]).collect();
            for (jj, j) in (k + 2..n).enumerate() {
                for (ii, i) in (k + 2..n).enumerate() {
                    a[(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
    }
    Ok(pf)
}
