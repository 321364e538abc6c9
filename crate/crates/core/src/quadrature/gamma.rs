//! The Gamma function of the cone, `Gamma_Omega(nu) = int_Omega e^{-tr x} det(x)^{nu - n/r} dx`.

use rand::Rng;
use serde::Serialize;
use statrs::function::gamma::gamma;

use super::cone::ConeRule;
use super::gauss::pairwise_sum;
use crate::error::{Error, Result};
use crate::jordan::{Algebra, Family};
use crate::sampling;

/// `(2 pi)^{(n-r)/2} prod_{j<r} Gamma(nu - j d/2)`
pub fn gamma_omega_closed(alg: &Algebra, nu: f64) -> Result<f64> {
    let (n, r, d) = (alg.n as f64, alg.r, alg.d as f64);
    let mut out = (2.0 * std::f64::consts::PI).powf((n - r as f64) / 2.0);
    for j in 0..r {
        let arg = nu - j as f64 * d / 2.0;
        if arg <= 0.0 && arg.fract() == 0.0 {
            return Err(Error::GammaPole(arg));
        }
        out *= gamma(arg);
    }
    Ok(out)
}

/// Threshold below which the defining integral diverges.
pub fn convergence_threshold(alg: &Algebra) -> f64 {
    (alg.r as f64 - 1.0) * alg.d as f64 / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GammaRule {
    /// Eigenvalue-coordinate Gauss rule with `nodes` points per radial axis.
    Quadrature { nodes: usize },
    MonteCarlo { samples: usize, seed: u64 },
}

pub fn gamma_omega_numeric(alg: &Algebra, nu: f64, rule: GammaRule) -> Result<f64> {
    if nu <= convergence_threshold(alg) {
        return Err(Error::Divergent(format!(
            "Gamma_Omega integral needs nu > {}, got {nu}",
            convergence_threshold(alg)
        )));
    }
    let p = nu - alg.n as f64 / alg.r as f64;
    match rule {
        GammaRule::Quadrature { nodes } => {
            let rule = ConeRule::invariant(alg, p, nodes)?;
            Ok(rule.integrate_real(|_| 1.0))
        }
        GammaRule::MonteCarlo { samples, seed } => gamma_monte_carlo(alg, p, samples, seed),
    }
}

/// Importance sampling with `Gamma(2)` radial variables (sums of two
/// exponentials). Rank one: `x ~ Gamma(2)`. `Sym(2)`: `x11, x22 ~ Gamma(2)`
/// and `x12` uniform on `(-sqrt(x11 x22), sqrt(x11 x22))`, which covers the
/// cone exactly.
fn gamma_monte_carlo(alg: &Algebra, p: f64, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = sampling::rng(seed);
    let erlang2 = move |rng: &mut rand_chacha::ChaCha8Rng| -> f64 {
        -(1.0 - rng.random::<f64>()).ln() - (1.0 - rng.random::<f64>()).ln()
    };
    let mut vals = Vec::with_capacity(samples);
    match alg.family {
        Family::Rank1 => {
            for _ in 0..samples {
                let x = erlang2(&mut rng);
                vals.push(x.powf(p) / x);
            }
        }
        Family::Sym(2) => {
            let mf = alg.measure_factor();
            for _ in 0..samples {
                let a = erlang2(&mut rng);
                let b = erlang2(&mut rng);
                let h = (a * b).sqrt();
                let c: f64 = rng.random_range(-h..h);
                let det = a * b - c * c;
                vals.push(mf * 2.0 * h * det.powf(p) / (a * b));
            }
        }
        f => return Err(Error::Unsupported(format!("Monte Carlo Gamma on {f}"))),
    }
    Ok(pairwise_sum(&vals) / samples as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::algebra;
    use std::f64::consts::PI;

    #[test]
    fn closed_form_examples() {
        let r1 = algebra(Family::Rank1);
        assert!((gamma_omega_closed(&r1, 3.0).unwrap() - 2.0).abs() < 1e-14);
        let s2 = algebra(Family::Sym(2));
        let want = (2.0 * PI).sqrt() * PI.sqrt() / 2.0;
        assert!((gamma_omega_closed(&s2, 2.0).unwrap() - want).abs() < 1e-13);
        assert!(matches!(gamma_omega_closed(&s2, 0.5), Err(Error::GammaPole(_))));
    }

    #[test]
    fn numeric_matches_closed() {
        let r1 = algebra(Family::Rank1);
        let v = gamma_omega_numeric(&r1, 3.0, GammaRule::Quadrature { nodes: 60 }).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        let v = gamma_omega_numeric(&r1, 2.7, GammaRule::Quadrature { nodes: 60 }).unwrap();
        assert!((v - gamma(2.7)).abs() < 1e-10 * gamma(2.7));
        let s2 = algebra(Family::Sym(2));
        let want = gamma_omega_closed(&s2, 3.0).unwrap();
        let q = gamma_omega_numeric(&s2, 3.0, GammaRule::Quadrature { nodes: 40 }).unwrap();
        assert!((q - want).abs() < 1e-6 * want, "{q} {want}");
        let mc = gamma_omega_numeric(
            &s2,
            3.0,
            GammaRule::MonteCarlo {
                samples: 1_000_000,
                seed: sampling::DEFAULT_SEED,
            },
        )
        .unwrap();
        assert!((mc - want).abs() < 0.01 * want, "{mc} {want}");
    }

    #[test]
    fn rejects_divergent() {
        let s2 = algebra(Family::Sym(2));
        assert!(matches!(
            gamma_omega_numeric(&s2, 0.4, GammaRule::Quadrature { nodes: 10 }),
            Err(Error::Divergent(_))
        ));
    }
}
