//! Eigenvalue-chamber integrals over `]-e,e[` for `Aut`-invariant integrands.
//!
//! `weyl_integral` returns
//! `int_{-1 < a_1 < ... < a_r < 1} f(diag a) prod (1-a_i)^lambda (1+a_i)^mu prod_{i<j} (a_j - a_i)^d da`
//! with normalization 1. The chamber is nested: `a_r` carries the full
//! Jacobi weight and each `a_i` (`i < r`) lives on `(-1, a_{i+1})` with the
//! Jacobi weight `(1+a_i)^mu (a_{i+1} - a_i)^d`; the remaining factors are
//! smooth there.

use rayon::prelude::*;

use super::gauss::{gauss_jacobi, pairwise_sum};
use crate::error::Result;
use crate::jordan::{Algebra, Family};

/// Coordinates of `sum a_i c_i` for the standard Jordan frame.
pub fn diag_element(alg: &Algebra, a: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; alg.n];
    match alg.family {
        Family::Rank1 => out[0] = a[0],
        Family::Sym(_) => out[..alg.r].copy_from_slice(a),
        Family::Spin(_) => {
            out[0] = 0.5 * (a[0] + a[1]);
            out[1] = 0.5 * (a[1] - a[0]);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct WeylRule {
    pub lambda: f64,
    pub mu: f64,
    pub nodes_per_axis: usize,
    /// eigenvalue tuples, ascending
    pub eigenvalues: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl WeylRule {
    pub fn new(alg: &Algebra, lambda: f64, mu: f64, nodes: usize) -> Result<Self> {
        let d = alg.d as f64;
        let outer = gauss_jacobi(nodes, lambda, mu)?;
        let inner = gauss_jacobi(nodes, d, mu)?;
        let mut pts: Vec<(Vec<f64>, f64)> = outer.nodes.iter().zip(&outer.weights).map(|(a, w)| (vec![*a], *w)).collect();
        for _ in 1..alg.r {
            let mut next = Vec::with_capacity(pts.len() * nodes);
            for (tail, w) in &pts {
                let top = tail[0];
                let half = 0.5 * (top + 1.0);
                let jac = half.powf(1.0 + mu + d);
                for (t, wt) in inner.nodes.iter().zip(&inner.weights) {
                    let a = -1.0 + half * (t + 1.0);
                    let mut extra = (1.0 - a).powf(lambda);
                    for b in &tail[1..] {
                        extra *= (b - a).powf(d);
                    }
                    let mut v = Vec::with_capacity(tail.len() + 1);
                    v.push(a);
                    v.extend_from_slice(tail);
                    next.push((v, w * wt * jac * extra));
                }
            }
            pts = next;
        }
        let (eigenvalues, weights) = pts.into_iter().unzip();
        Ok(WeylRule {
            lambda,
            mu,
            nodes_per_axis: nodes,
            eigenvalues,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn integrate(&self, alg: &Algebra, f: impl Fn(&[f64]) -> f64 + Sync) -> f64 {
        let vals: Vec<f64> = self
            .eigenvalues
            .par_iter()
            .zip(&self.weights)
            .map(|(a, w)| w * f(&diag_element(alg, a)))
            .collect();
        pairwise_sum(&vals)
    }
}

pub fn weyl_integral(alg: &Algebra, f: impl Fn(&[f64]) -> f64 + Sync, lambda: f64, mu: f64, nodes: usize) -> Result<f64> {
    Ok(WeylRule::new(alg, lambda, mu, nodes)?.integrate(alg, f))
}

/// Spot check that `f(k v) = f(v)` for random automorphisms `k` and `v` in the interval.
pub fn spot_check_invariance(alg: &std::sync::Arc<Algebra>, f: impl Fn(&[f64]) -> f64, samples: usize, seed: u64, tol: f64) -> bool {
    use crate::jordan::StructureMap;
    use crate::sampling;
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let kmap = match alg.family {
            Family::Rank1 => return true,
            Family::Sym(r) => {
                let g = StructureMap::random_orthogonal(r as usize, &mut rng);
                StructureMap::sym_conjugation(alg.clone(), &g)
            }
            Family::Spin(m) => {
                let g = StructureMap::random_orthogonal(m as usize - 1, &mut rng);
                StructureMap::spin_rotation(alg.clone(), &g)
            }
        };
        let Ok(kmap) = kmap else { return false };
        let v = sampling::random_interval(alg, &mut rng);
        let (a, b) = (f(&v), f(&kmap.apply(&v)));
        if (a - b).abs() > tol * a.abs().max(b.abs()).max(1.0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::algebra;

    #[test]
    fn unit_integrand() {
        let r1 = algebra(Family::Rank1);
        assert!((weyl_integral(&r1, |_| 1.0, 0.0, 0.0, 4).unwrap() - 2.0).abs() < 1e-14);
        let s2 = algebra(Family::Sym(2));
        assert!((weyl_integral(&s2, |_| 1.0, 0.0, 0.0, 4).unwrap() - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn rank1_jacobi_norm() {
        // P_1^{(1,1)}(x) = 2x; h_1 = 2^3 Gamma(3)^2 / (5 * Gamma(4)) = 16/15
        let r1 = algebra(Family::Rank1);
        let v = weyl_integral(&r1, |x| 4.0 * x[0] * x[0], 1.0, 1.0, 6).unwrap();
        assert!((v - 16.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn sym3_unit_matches_selberg() {
        // Selberg S_3(1, 1, 1/2) rescaled to [-1, 1]: 64/6 * S = 16/45
        let s3 = algebra(Family::Sym(3));
        let v = weyl_integral(&s3, |_| 1.0, 0.0, 0.0, 8).unwrap();
        assert!((v - 16.0 / 45.0).abs() < 1e-14);
    }

    #[test]
    fn node_doubling_is_stable_for_polynomials() {
        let s2 = algebra(Family::Sym(2));
        let f = |x: &[f64]| (x[0] + x[1]).powi(4) + x[0] * x[1];
        let a = weyl_integral(&s2, f, 2.0, 3.0, 12).unwrap();
        let b = weyl_integral(&s2, f, 2.0, 3.0, 24).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs());
    }

    #[test]
    fn trace_powers_are_invariant() {
        let s3 = algebra(Family::Sym(3));
        let a = s3.clone();
        assert!(spot_check_invariance(&s3, |v| a.trace(&a.square(&a.square(v))), 5, 3, 1e-12));
        let b = s3.clone();
        assert!(!spot_check_invariance(&s3, |v| v[0] + 0.0 * b.trace(v), 5, 3, 1e-12));
    }
}
