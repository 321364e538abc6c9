//! Product Gauss rules on the cone for `int_Omega F(x) e^{-tr x} det(x)^p dx`.
//!
//! Rank one is generalized Gauss–Laguerre. On `Sym(2)` the element is written
//! `x = R(theta) diag(a, b) R(theta)^T` with `a = rho (1-u)/2`, `b = rho (1+u)/2`,
//! so `dx = sqrt(2) rho u (rho/2) d rho du d theta` over `rho > 0`, `0 < u < 1`,
//! `0 <= theta < pi`; `rho` takes Laguerre weight `rho^{2p+2}` and `u` a
//! Jacobi weight `(1-u)^p u`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::gauss::{gauss_jacobi, gauss_laguerre, pairwise_sum, pairwise_sum_c, trapezoid};
use crate::error::{Error, Result};
use crate::jordan::{Algebra, Family};

#[derive(Clone, Debug)]
pub struct ConeRule {
    pub p: f64,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl ConeRule {
    /// Full rule; `nodes` per axis.
    pub fn new(alg: &Algebra, p: f64, nodes: usize) -> Result<Self> {
        Self::build(alg, p, nodes, nodes)
    }

    /// Rule for `Aut`-invariant integrands: the angular integral is exact.
    pub fn invariant(alg: &Algebra, p: f64, nodes: usize) -> Result<Self> {
        Self::build(alg, p, nodes, 1)
    }

    fn build(alg: &Algebra, p: f64, nodes: usize, angles: usize) -> Result<Self> {
        if p <= -1.0 {
            return Err(Error::Divergent(format!("cone weight det^{p}")));
        }
        match alg.family {
            Family::Rank1 => {
                let l = gauss_laguerre(nodes, p)?;
                Ok(ConeRule {
                    p,
                    points: l.nodes.iter().map(|x| vec![*x]).collect(),
                    weights: l.weights,
                })
            }
            Family::Sym(2) => {
                let rho = gauss_laguerre(nodes, 2.0 * p + 2.0)?;
                let ur = gauss_jacobi(nodes, p, 1.0)?;
                let th = trapezoid(angles, std::f64::consts::PI);
                let scale = alg.measure_factor() / 2.0 * 4f64.powf(-p) * 2f64.powf(-2.0 - p);
                let mut points = Vec::with_capacity(nodes * nodes * angles);
                let mut weights = Vec::with_capacity(points.capacity());
                for (r, wr) in rho.nodes.iter().zip(&rho.weights) {
                    for (t, wt) in ur.nodes.iter().zip(&ur.weights) {
                        let u = 0.5 * (1.0 + t);
                        let (a, b) = (0.5 * r * (1.0 - u), 0.5 * r * (1.0 + u));
                        let w = scale * wr * wt * (1.0 + u).powf(p);
                        for (theta, wth) in th.nodes.iter().zip(&th.weights) {
                            let (s, c) = theta.sin_cos();
                            points.push(vec![a * c * c + b * s * s, a * s * s + b * c * c, (a - b) * c * s]);
                            weights.push(w * wth);
                        }
                    }
                }
                Ok(ConeRule { p, points, weights })
            }
            f => Err(Error::Unsupported(format!("cone quadrature on {f}"))),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate_real(&self, f: impl Fn(&[f64]) -> f64 + Sync) -> f64 {
        let vals: Vec<f64> = self
            .points
            .par_iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(x))
            .collect();
        pairwise_sum(&vals)
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> Complex64 + Sync) -> Complex64 {
        let vals: Vec<Complex64> = self
            .points
            .par_iter()
            .zip(&self.weights)
            .map(|(x, w)| f(x) * *w)
            .collect();
        pairwise_sum_c(&vals)
    }
}

/// `int_Omega g(xi) det(xi)^p e^{i(z, xi)} d xi` for `Im z` in the cone.
///
/// With `y = Im z`, the substitution `xi = P(y^{-1/2}) eta` turns the
/// exponential into `e^{-tr eta} e^{i(x', eta)}`, `x' = P(y^{-1/2}) Re z`, and
/// contributes `det(y)^{-p-n/r}`.
pub fn laplace_cone(
    alg: &Algebra,
    p: f64,
    z: &[Complex64],
    g: impl Fn(&[f64]) -> Complex64 + Sync,
    nodes: usize,
) -> Result<Complex64> {
    alg.check_len(z)?;
    let x: Vec<f64> = z.iter().map(|c| c.re).collect();
    let y: Vec<f64> = z.iter().map(|c| c.im).collect();
    let isq = alg.inv_sqrt(&y).map_err(|_| Error::OutsideTube)?;
    let xp = alg.quad(&isq, &x);
    let pm = alg.quad_matrix(&isq);
    let rule = ConeRule::new(alg, p, nodes)?;
    let integral = rule.integrate(|eta| {
        let xi = crate::linalg::mat_vec(&pm, eta);
        g(&xi) * Complex64::new(0.0, alg.inner(&xp, eta)).exp()
    });
    let pref = alg.det(&y).powf(-p - alg.n as f64 / alg.r as f64);
    Ok(integral * pref)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::algebra;
    use statrs::function::gamma::gamma;

    #[test]
    fn sym2_moments() {
        let a = algebra(Family::Sym(2));
        // int e^{-tr x} det^p tr(x) = r nu Gamma_Omega(nu), nu = p + 3/2
        let rule = ConeRule::invariant(&a, 1.0, 30).unwrap();
        let nu = 2.5;
        let g = (2.0 * std::f64::consts::PI).sqrt() * gamma(nu) * gamma(nu - 0.5);
        let t = rule.integrate_real(|x| x[0] + x[1]);
        assert!((t - 2.0 * nu * g).abs() < 1e-10 * g);
        let full = ConeRule::new(&a, 1.0, 20).unwrap();
        let t2 = full.integrate_real(|x| x[0]);
        assert!((t2 - nu * g).abs() < 1e-10 * g);
    }

    #[test]
    fn rank1_laplace() {
        let a = algebra(Family::Rank1);
        let z = [Complex64::new(0.7, 1.5)];
        let v = laplace_cone(&a, 1.0, &z, |_| Complex64::new(1.0, 0.0), 60).unwrap();
        // int xi e^{i z xi} = (-i z)^{-2}
        let want = (Complex64::new(0.0, -1.0) * z[0]).powi(-2);
        assert!((v - want).norm() < 1e-12);
    }
}
