//! Generators of the automorphism group of the tube, their cocycles, the
//! holomorphic representations `pi_nu` and coherent states.
//!
//! For `g` holomorphic on the tube, `j(g, z) = Det_C(Dg(z))` and `psi_g` is a
//! continuous logarithm of it; `pi_nu(g) F(z) = exp(r nu psi_{g^-1}(z) / 2n) F(g^-1 z)`
//! with `psi_{g^-1}(z) = -psi_g(g^-1 z)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::branch::log_det_over_i;
use super::holo::HoloFunction;
use super::tube::{complexify, conj};
use crate::error::{Error, Result};
use crate::jordan::Algebra;
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupGenerator {
    /// `t_u: z -> z + u`
    Translation { u: Vec<f64> },
    /// `l = P(a^{1/2})` for `a` in the cone
    Dilation { a: Vec<f64> },
    /// `j: z -> -z^{-1}`
    Inversion,
}

impl GroupGenerator {
    pub fn label(&self) -> &'static str {
        match self {
            GroupGenerator::Translation { .. } => "translation",
            GroupGenerator::Dilation { .. } => "dilation",
            GroupGenerator::Inversion => "inversion",
        }
    }

    fn dilation_matrix(alg: &Algebra, a: &[f64], inverse: bool) -> Result<Vec<Vec<f64>>> {
        let root = if inverse { alg.inv_sqrt(a)? } else { alg.sqrt(a)? };
        Ok(alg.quad_matrix(&root))
    }

    pub fn apply(&self, alg: &Algebra, z: &[Complex64]) -> Result<Vec<Complex64>> {
        alg.check_len(z)?;
        match self {
            GroupGenerator::Translation { u } => Ok(alg.add(z, &complexify(u))),
            GroupGenerator::Dilation { a } => Ok(linalg::mat_vec(&complexify_matrix(&Self::dilation_matrix(alg, a, false)?), z)),
            GroupGenerator::Inversion => Ok(alg.inverse(z)?.into_iter().map(|c| -c).collect()),
        }
    }

    pub fn apply_inverse(&self, alg: &Algebra, z: &[Complex64]) -> Result<Vec<Complex64>> {
        alg.check_len(z)?;
        match self {
            GroupGenerator::Translation { u } => Ok(alg.sub(z, &complexify(u))),
            GroupGenerator::Dilation { a } => Ok(linalg::mat_vec(&complexify_matrix(&Self::dilation_matrix(alg, a, true)?), z)),
            GroupGenerator::Inversion => self.apply(alg, z),
        }
    }

    /// `psi_g(z)`: translation `0`; dilation `(n/r) ln chi(l)` with
    /// `chi(P(a^{1/2})) = det a`; inversion `-(2n/r)(log det(z/i) + i r pi/2)`.
    pub fn psi(&self, alg: &Algebra, z: &[Complex64]) -> Result<Complex64> {
        let nr = alg.n as f64 / alg.r as f64;
        match self {
            GroupGenerator::Translation { .. } => Ok(Complex64::new(0.0, 0.0)),
            GroupGenerator::Dilation { a } => {
                if !alg.in_cone(a) {
                    return Err(Error::NotInCone);
                }
                Ok(Complex64::new(nr * alg.det(a).ln(), 0.0))
            }
            GroupGenerator::Inversion => {
                let l = log_det_over_i(alg, z)?;
                Ok(-(l + Complex64::new(0.0, alg.r as f64 * PI / 2.0)) * (2.0 * nr))
            }
        }
    }

    /// `psi_{g^-1}(z) = -psi_g(g^-1 z)`
    pub fn psi_inverse(&self, alg: &Algebra, z: &[Complex64]) -> Result<Complex64> {
        Ok(-self.psi(alg, &self.apply_inverse(alg, z)?)?)
    }

    /// `j(g, z) = exp(psi_g(z))`
    pub fn cocycle(&self, alg: &Algebra, z: &[Complex64]) -> Result<Complex64> {
        Ok(self.psi(alg, z)?.exp())
    }

    /// Determinant of the complex Jacobian of `g` at `z` by central differences.
    pub fn fd_jacobian_det(&self, alg: &Algebra, z: &[Complex64], h: f64) -> Result<Complex64> {
        let n = alg.n;
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut zp = z.to_vec();
            let mut zm = z.to_vec();
            zp[i] += h;
            zm[i] -= h;
            let (gp, gm) = (self.apply(alg, &zp)?, self.apply(alg, &zm)?);
            cols.push(gp.iter().zip(&gm).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<_>>());
        }
        let m: Vec<Vec<Complex64>> = (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect();
        Ok(linalg::det(&m))
    }
}

fn complexify_matrix(m: &[Vec<f64>]) -> Vec<Vec<Complex64>> {
    m.iter().map(|row| complexify(row)).collect()
}

/// `k_nu^w(z) = det((z - conj w)/i)^{-nu}` on the tracked branch.
pub fn coherent_state(alg: &Arc<Algebra>, nu: f64, w: &[Complex64]) -> HoloFunction {
    let a = alg.clone();
    let wbar = conj(w);
    HoloFunction::new(alg.n, move |z| {
        let u = a.sub(z, &wbar);
        Ok((-log_det_over_i(&a, &u)? * nu).exp())
    })
}

/// `phi_nu(z) = det((z + i e)/i)^{-nu} = k_nu^{ie}(z)`
pub fn phi_nu(alg: &Arc<Algebra>, nu: f64) -> HoloFunction {
    let ie: Vec<Complex64> = alg.identity::<f64>().iter().map(|e| Complex64::new(0.0, *e)).collect();
    coherent_state(alg, nu, &ie)
}

/// `pi_nu(g) F`
pub fn pi_action(alg: &Arc<Algebra>, g: &GroupGenerator, nu: f64, f: &HoloFunction) -> HoloFunction {
    let (a, g, f) = (alg.clone(), g.clone(), f.clone());
    let e = a.r as f64 * nu / (2.0 * a.n as f64);
    HoloFunction::new(alg.n, move |z| {
        let zi = g.apply_inverse(&a, z)?;
        Ok((g.psi_inverse(&a, z)? * e).exp() * f.eval(&zi)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{algebra, Family};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coherent_state_values() {
        let a = algebra(Family::Rank1);
        let k = coherent_state(&a, 2.0, &[c(0.0, 1.0)]);
        assert!((k.eval(&[c(0.0, 1.0)]).unwrap() - c(0.25, 0.0)).norm() < 1e-15);
        for fam in [Family::Sym(2), Family::Spin(5), Family::Sym(3)] {
            let a = algebra(fam);
            let ie: Vec<Complex64> = a.identity::<f64>().iter().map(|e| c(0.0, *e)).collect();
            let k = coherent_state(&a, 1.7, &ie);
            let want = 2f64.powf(-(a.r as f64) * 1.7);
            assert!((k.eval(&ie).unwrap() - c(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn cocycles_match_jacobian() {
        for fam in [Family::Rank1, Family::Sym(2), Family::Spin(4)] {
            let a = algebra(fam);
            let z: Vec<Complex64> = match fam {
                Family::Rank1 => vec![c(0.4, 1.2)],
                Family::Sym(2) => vec![c(0.3, 1.1), c(-0.2, 0.9), c(0.15, 0.1)],
                _ => vec![c(0.2, 1.5), c(-0.3, 0.2), c(0.1, -0.3), c(0.5, 0.1)],
            };
            let mut u = vec![0.0; a.n];
            u[0] = 0.7;
            let mut p = a.identity::<f64>();
            p[0] += 0.8;
            for g in [
                GroupGenerator::Translation { u },
                GroupGenerator::Dilation { a: p },
                GroupGenerator::Inversion,
            ] {
                let j = g.cocycle(&a, &z).unwrap();
                let fd = g.fd_jacobian_det(&a, &z, 1e-5).unwrap();
                assert!((j - fd).norm() < 1e-8 * j.norm(), "{fam} {}", g.label());
            }
        }
    }

    #[test]
    fn pi_action_examples() {
        let a = algebra(Family::Rank1);
        let f = HoloFunction::new(1, |z| Ok(z[0] * z[0] + 1.0));
        let z = [c(0.3, 0.8)];
        let id = pi_action(&a, &GroupGenerator::Translation { u: vec![0.0] }, 2.0, &f);
        assert_eq!(id.eval(&z).unwrap(), f.eval(&z).unwrap());
        let dil = pi_action(&a, &GroupGenerator::Dilation { a: vec![4.0] }, 3.0, &f);
        let want = f.eval(&[z[0] / 4.0]).unwrap() * 4f64.powf(-1.5);
        assert!((dil.eval(&z).unwrap() - want).norm() < 1e-14);
        let one = HoloFunction::constant(1, c(1.0, 0.0));
        let inv = pi_action(&a, &GroupGenerator::Inversion, 2.0, &one);
        let v = inv.eval(&[c(0.0, 1.0)]).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-14);
        assert!((v - c(0.0, 1.0).powi(-2)).norm() < 1e-14);
    }
}
