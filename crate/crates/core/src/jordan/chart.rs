//! The polar-type chart `Omega x ]-e,e[ -> Omega x Omega`,
//! `(z, v) -> ((z - P(z^1/2) v) / 2, (z + P(z^1/2) v) / 2)`.

use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg;

pub fn iota(alg: &Algebra, z: &[f64], v: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if !alg.in_interval(v) {
        return Err(Error::NotInInterval);
    }
    let root = alg.sqrt(z)?;
    let pv = alg.quad(&root, v);
    let x = z.iter().zip(&pv).map(|(a, b)| 0.5 * (a - b)).collect();
    let y = z.iter().zip(&pv).map(|(a, b)| 0.5 * (a + b)).collect();
    Ok((x, y))
}

/// `z = x + y`, `v = P(z^{-1/2})(y - x)`
pub fn iota_inv(alg: &Algebra, x: &[f64], y: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if !alg.in_cone(x) || !alg.in_cone(y) {
        return Err(Error::NotInCone);
    }
    let z = alg.add(x, y);
    let isq = alg.inv_sqrt(&z)?;
    let v = alg.quad(&isq, &alg.sub(y, x));
    Ok((z, v))
}

/// `2^{-n} (det z)^{n/r}`
pub fn jacobian_iota(alg: &Algebra, z: &[f64]) -> f64 {
    let n = alg.n as f64;
    2f64.powf(-n) * alg.det(z).powf(n / alg.r as f64)
}

/// Central-difference Jacobian determinant of `iota` at `(z, v)`.
pub fn fd_jacobian_iota(alg: &Algebra, z: &[f64], v: &[f64], h: f64) -> Result<f64> {
    let n = alg.n;
    let point: Vec<f64> = z.iter().chain(v).copied().collect();
    let eval = |p: &[f64]| -> Result<Vec<f64>> {
        let (x, y) = iota(alg, &p[..n], &p[n..])?;
        Ok(x.into_iter().chain(y).collect())
    };
    let mut jac = vec![vec![0.0; 2 * n]; 2 * n];
    for j in 0..2 * n {
        let mut plus = point.clone();
        let mut minus = point.clone();
        plus[j] += h;
        minus[j] -= h;
        let fp = eval(&plus)?;
        let fm = eval(&minus)?;
        for i in 0..2 * n {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    Ok(linalg::det(&jac).abs())
}
