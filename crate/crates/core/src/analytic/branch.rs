//! The branch of `log det(u / i)` on the tube that is real at `u = i y`.
//!
//! Values are continued along the straight segment from `i e`; each step keeps
//! the argument increment of `det` below `pi/4` so the principal logarithm of
//! consecutive ratios never jumps.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use super::tube::in_tube;
use crate::error::{Error, Result};
use crate::jordan::Algebra;

const MAX_HALVINGS: u32 = 40;

#[derive(Clone, Debug, PartialEq)]
pub struct BranchedPower {
    /// accumulated `log det(u / i)`
    pub log_det: Complex64,
    /// accepted path steps
    pub steps: usize,
}

impl BranchedPower {
    /// Continuation along the segment `i e -> u`.
    pub fn new(alg: &Algebra, u: &[Complex64]) -> Result<Self> {
        let start: Vec<Complex64> = alg.identity::<f64>().iter().map(|e| Complex64::new(0.0, *e)).collect();
        Self::along(alg, &[start, u.to_vec()])
    }

    /// Continuation along the polygonal path through `vertices`, starting at
    /// `vertices[0]` with `log det(vertices[0] / i)` on the principal branch
    /// (exact when the start is `i y`).
    pub fn along(alg: &Algebra, vertices: &[Vec<Complex64>]) -> Result<Self> {
        let first = vertices.first().ok_or_else(|| Error::BranchFailure("empty path".into()))?;
        for v in vertices {
            alg.check_len(v)?;
            if !in_tube(alg, v) {
                return Err(Error::OutsideTube);
            }
        }
        let det_i = |u: &[Complex64]| -> Complex64 {
            let w: Vec<Complex64> = u.iter().map(|c| c * Complex64::new(0.0, -1.0)).collect();
            alg.det(&w)
        };
        let mut acc = det_i(first).ln();
        let mut steps = 0;
        for seg in vertices.windows(2) {
            let (a, b) = (&seg[0], &seg[1]);
            let point = |t: f64| -> Vec<Complex64> { a.iter().zip(b).map(|(x, y)| x * (1.0 - t) + y * t).collect() };
            let mut t: f64 = 0.0;
            let mut d_prev = det_i(a);
            let mut h = 1.0;
            while t < 1.0 {
                let mut halvings = 0;
                loop {
                    let t_next = (t + h).min(1.0);
                    let d_next = det_i(&point(t_next));
                    let ratio = d_next / d_prev;
                    let mid = det_i(&point(0.5 * (t + t_next))) / d_prev;
                    if ratio.arg().abs() < FRAC_PI_4 && mid.arg().abs() < FRAC_PI_4 && ratio.norm() > 0.0 {
                        acc += ratio.ln();
                        d_prev = d_next;
                        t = t_next;
                        steps += 1;
                        h *= 2.0;
                        break;
                    }
                    h *= 0.5;
                    halvings += 1;
                    if halvings > MAX_HALVINGS {
                        return Err(Error::BranchFailure(format!("step collapsed at t = {t}")));
                    }
                }
            }
        }
        Ok(BranchedPower { log_det: acc, steps })
    }

    /// `det(u / i)^nu` on the tracked branch.
    pub fn pow(&self, nu: f64) -> Complex64 {
        (self.log_det * nu).exp()
    }
}

/// `log det(u / i)` on the tracked branch.
pub fn log_det_over_i(alg: &Algebra, u: &[Complex64]) -> Result<Complex64> {
    Ok(BranchedPower::new(alg, u)?.log_det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{algebra, Family};
    use crate::sampling;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_on_the_imaginary_axis() {
        let a = algebra(Family::Sym(2));
        let y = [2.0, 0.5, 0.3];
        let u: Vec<Complex64> = y.iter().map(|v| c(0.0, *v)).collect();
        let l = log_det_over_i(&a, &u).unwrap();
        assert!((l - c(a.det(&y).ln(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn exponential_recovers_det() {
        let a = algebra(Family::Sym(3));
        let mut rng = sampling::rng(4);
        for _ in 0..10 {
            let x = sampling::random_interval(&a, &mut rng);
            let y = sampling::random_cone(&a, &mut rng);
            let u: Vec<Complex64> = x.iter().zip(&y).map(|(p, q)| c(8.0 * p, *q)).collect();
            let b = BranchedPower::new(&a, &u).unwrap();
            let w: Vec<Complex64> = u.iter().map(|z| z * c(0.0, -1.0)).collect();
            assert!((b.log_det.exp() - a.det(&w)).norm() < 1e-10 * a.det(&w).norm());
        }
    }

    #[test]
    fn winds_past_the_principal_branch() {
        // det(u/i) has argument near -pi, where the principal log would jump
        let a = algebra(Family::Sym(2));
        let u = vec![c(30.0, 0.1), c(30.0, 0.1), c(0.0, 0.0)];
        let l = log_det_over_i(&a, &u).unwrap();
        // each eigenvalue contributes log((30 + 0.1 i)/i) on the principal branch
        let single = (c(30.0, 0.1) / c(0.0, 1.0)).ln();
        assert!((l - single * 2.0).norm() < 1e-12);
        assert!(l.im < -3.0);
    }

    #[test]
    fn path_independence() {
        let a = algebra(Family::Spin(4));
        let mut rng = sampling::rng(9);
        for _ in 0..5 {
            let x = sampling::random_interval(&a, &mut rng);
            let y = sampling::random_cone(&a, &mut rng);
            let u: Vec<Complex64> = x.iter().zip(&y).map(|(p, q)| c(5.0 * p, *q)).collect();
            let detour: Vec<Complex64> = y.iter().zip(&x).map(|(q, p)| c(-6.0 * p, 3.0 * q)).collect();
            let start: Vec<Complex64> = a.identity::<f64>().iter().map(|e| c(0.0, *e)).collect();
            let l1 = BranchedPower::new(&a, &u).unwrap().log_det;
            let l2 = BranchedPower::along(&a, &[start, detour, u.clone()]).unwrap().log_det;
            assert!((l1 - l2).norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_points_outside() {
        let a = algebra(Family::Rank1);
        assert!(matches!(log_det_over_i(&a, &[c(1.0, -0.5)]), Err(Error::OutsideTube)));
    }
}
