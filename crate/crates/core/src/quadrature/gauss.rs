//! One-dimensional Gauss rules from three-term recurrences.
//!
//! Nodes start from the Golub–Welsch eigenvalues of the Jacobi matrix and are
//! polished by Newton iteration on the orthonormal recurrence to `1e-14`;
//! weights are `1 / sum_j p_j(x_i)^2` with `p_j` orthonormal.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RuleKind {
    GaussJacobi { alpha: f64, beta: f64 },
    GaussLegendre,
    GaussLaguerre { alpha: f64 },
    Trapezoid,
    MonteCarlo { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

const NEWTON_TOL: f64 = 1e-14;

/// Monic recurrence `p_{j+1} = (x - a_j) p_j - b_j^2 p_{j-1}` with
/// `mu0 = integral of the weight`.
struct Recurrence {
    a: Vec<f64>,
    b: Vec<f64>,
    mu0: f64,
}

impl Recurrence {
    /// Orthonormal values `p_0..p_{n-1}` and `p_n`, `p_n'` (orthonormal scaling).
    fn eval(&self, x: f64, n: usize) -> (f64, f64, f64) {
        let mut p_prev = 0.0;
        let mut p = 1.0 / self.mu0.sqrt();
        let mut d_prev = 0.0;
        let mut d = 0.0;
        let mut sumsq = p * p;
        for j in 0..n {
            let bj = if j == 0 { 0.0 } else { self.b[j] };
            let bn = self.b[j + 1];
            let p_next = ((x - self.a[j]) * p - bj * p_prev) / bn;
            let d_next = (p + (x - self.a[j]) * d - bj * d_prev) / bn;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
            if j + 1 < n {
                sumsq += p * p;
            }
        }
        (sumsq, p, d)
    }

    fn rule(&self, n: usize, kind: RuleKind) -> Result<QuadratureRule> {
        if n == 0 {
            return Err(Error::Quadrature("rule with zero nodes".into()));
        }
        let jm = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.a[i]
            } else if i + 1 == j {
                self.b[j]
            } else if j + 1 == i {
                self.b[i]
            } else {
                0.0
            }
        });
        let mut seeds: Vec<f64> = jm.symmetric_eigen().eigenvalues.iter().copied().collect();
        seeds.sort_by(f64::total_cmp);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for x0 in seeds {
            let mut x = x0;
            for _ in 0..50 {
                let (_, p, d) = self.eval(x, n);
                let step = p / d;
                x -= step;
                if step.abs() <= NEWTON_TOL * x.abs().max(1.0) {
                    break;
                }
            }
            let (sumsq, _, _) = self.eval(x, n);
            nodes.push(x);
            weights.push(1.0 / sumsq);
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::Quadrature(format!("non-positive weight in {kind:?}")));
        }
        Ok(QuadratureRule { kind, nodes, weights })
    }
}

/// Gauss–Jacobi on `[-1, 1]` for the weight `(1-x)^alpha (1+x)^beta`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<QuadratureRule> {
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::Divergent(format!("Jacobi weight exponents {alpha}, {beta}")));
    }
    let ab = alpha + beta;
    let mut a = Vec::with_capacity(n + 1);
    let mut b = vec![0.0; n + 2];
    for j in 0..=n {
        let jf = j as f64;
        let den = (2.0 * jf + ab) * (2.0 * jf + ab + 2.0);
        a.push(if j == 0 {
            (beta - alpha) / (ab + 2.0)
        } else if den == 0.0 {
            0.0
        } else {
            (beta * beta - alpha * alpha) / den
        });
    }
    for (j, bj) in b.iter_mut().enumerate().skip(1) {
        let jf = j as f64;
        let c = 2.0 * jf + ab;
        *bj = if j == 1 {
            (4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))).sqrt()
        } else {
            (4.0 * jf * (jf + alpha) * (jf + beta) * (jf + ab) / (c * c * (c + 1.0) * (c - 1.0))).sqrt()
        };
    }
    let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
        - ln_gamma(ab + 2.0))
    .exp();
    let kind = if alpha == 0.0 && beta == 0.0 {
        RuleKind::GaussLegendre
    } else {
        RuleKind::GaussJacobi { alpha, beta }
    };
    Recurrence { a, b, mu0 }.rule(n, kind)
}

pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Gauss–Laguerre on `[0, inf)` for the weight `x^alpha e^{-x}`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<QuadratureRule> {
    if alpha <= -1.0 {
        return Err(Error::Divergent(format!("Laguerre exponent {alpha}")));
    }
    let a = (0..=n).map(|j| 2.0 * j as f64 + alpha + 1.0).collect();
    let b = (0..n + 2)
        .map(|j| {
            let jf = j as f64;
            (jf * (jf + alpha)).sqrt()
        })
        .collect();
    Recurrence {
        a,
        b,
        mu0: ln_gamma(alpha + 1.0).exp(),
    }
    .rule(n, RuleKind::GaussLaguerre { alpha })
}

/// `n`-point periodic trapezoid rule on `[0, period)`.
pub fn trapezoid(n: usize, period: f64) -> QuadratureRule {
    let h = period / n as f64;
    QuadratureRule {
        kind: RuleKind::Trapezoid,
        nodes: (0..n).map(|i| i as f64 * h).collect(),
        weights: vec![h; n],
    }
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Affine image on `[lo, hi]` of a rule on `[-1, 1]`; weights scale by the
    /// half-length only (weight functions are the caller's concern).
    pub fn mapped(&self, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
        let h = 0.5 * (hi - lo);
        (
            self.nodes.iter().map(|t| lo + h * (t + 1.0)).collect(),
            self.weights.iter().map(|w| w * h).collect(),
        )
    }

    /// Pairwise-summed `sum w_i f(x_i)`; the summation tree depends only on
    /// the node count.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let vals: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).collect();
        pairwise_sum(&vals)
    }
}

/// Composite Gauss–Legendre on `[lo, hi]` with `panels` equal panels.
pub fn composite_legendre(points: usize, panels: usize, lo: f64, hi: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let base = gauss_legendre(points)?;
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(points * panels);
    let mut weights = Vec::with_capacity(points * panels);
    for p in 0..panels {
        let (x, w) = base.mapped(lo + p as f64 * h, lo + (p + 1) as f64 * h);
        nodes.extend(x);
        weights.extend(w);
    }
    Ok((nodes, weights))
}

pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

pub fn pairwise_sum_c(v: &[num_complex::Complex64]) -> num_complex::Complex64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum_c(&v[..mid]) + pairwise_sum_c(&v[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::gamma;

    #[test]
    fn weights_sum_to_moment() {
        for &(a, b) in &[(0.0, 0.0), (1.0, 2.0), (0.5, -0.5), (3.0, 3.0), (-0.3, 4.2)] {
            let r = gauss_jacobi(30, a, b).unwrap();
            let mu0 = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
            assert!((r.weights.iter().sum::<f64>() - mu0).abs() < 1e-12 * mu0, "{a} {b}");
            assert!(r.weights.iter().all(|w| *w > 0.0));
        }
        let l = gauss_laguerre(60, 0.0).unwrap();
        assert!((l.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn polynomial_exactness() {
        let r = gauss_legendre(5).unwrap();
        // x^8 on [-1,1] = 2/9
        assert!((r.integrate(|x| x.powi(8)) - 2.0 / 9.0).abs() < 1e-15);
        let l = gauss_laguerre(10, 0.5).unwrap();
        // int x^{0.5} x^3 e^{-x} = Gamma(4.5)
        assert!((l.integrate(|x| x.powi(3)) - gamma(4.5)).abs() < 1e-12 * gamma(4.5));
    }

    #[test]
    fn classical_jacobi_norm() {
        // h_1 for alpha = beta = 1: 2^{3} Gamma(3)^2 / (5 Gamma(4) * 1!) = 16/15
        let r = gauss_jacobi(10, 1.0, 1.0).unwrap();
        let p1 = |x: f64| 2.0 * x;
        assert!((r.integrate(|x| p1(x) * p1(x)) - 16.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn nodes_are_roots() {
        let r = gauss_jacobi(12, 1.5, 0.25).unwrap();
        let p = crate::bracket::jacobi_p(12, &crate::scalar::q(3, 2), &crate::scalar::q(1, 4));
        let pf = p.map_coef(crate::scalar::q_to_f64);
        for x in &r.nodes {
            assert!(pf.eval_with(&[*x], |c| *c).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_divergent_weights() {
        assert!(gauss_jacobi(5, -1.0, 0.0).is_err());
        assert!(gauss_laguerre(5, -2.0).is_err());
    }
}
