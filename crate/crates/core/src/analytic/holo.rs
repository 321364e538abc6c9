//! Holomorphic functions on products of tubes and their derivatives by
//! polydisc Cauchy quadrature.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::tube::{im, in_tube};
use crate::error::{Error, Result};
use crate::jordan::Algebra;
use crate::quadrature::gauss::pairwise_sum_c;

type Evaluator = dyn Fn(&[Complex64]) -> Result<Complex64> + Send + Sync;

/// A function of `slots * n` complex coordinates, holomorphic on `T_Omega^slots`.
#[derive(Clone)]
pub struct HoloFunction {
    nvars: usize,
    eval: Arc<Evaluator>,
    /// distance to the nearest singularity, when known
    pub radius_hint: Option<f64>,
}

impl fmt::Debug for HoloFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HoloFunction").field("nvars", &self.nvars).finish_non_exhaustive()
    }
}

impl HoloFunction {
    pub fn new(nvars: usize, f: impl Fn(&[Complex64]) -> Result<Complex64> + Send + Sync + 'static) -> Self {
        HoloFunction {
            nvars,
            eval: Arc::new(f),
            radius_hint: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: z.len(),
            });
        }
        (self.eval)(z)
    }

    pub fn constant(nvars: usize, c: Complex64) -> Self {
        Self::new(nvars, move |_| Ok(c))
    }

    /// `(z, w) -> F(z) G(w)`
    pub fn tensor(f: &HoloFunction, g: &HoloFunction) -> Self {
        let (f, g) = (f.clone(), g.clone());
        let split = f.nvars;
        HoloFunction::new(f.nvars + g.nvars, move |zw| Ok(f.eval(&zw[..split])? * g.eval(&zw[split..])?))
    }

    pub fn add(&self, other: &HoloFunction) -> Self {
        let (f, g) = (self.clone(), other.clone());
        HoloFunction::new(self.nvars, move |z| Ok(f.eval(z)? + g.eval(z)?))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let f = self.clone();
        HoloFunction::new(self.nvars, move |z| Ok(f.eval(z)? * c))
    }

    /// `max_i |d F / d conj(z_i)| / max(|dF/dz_i|, 1e-300)` by central
    /// differences of step `h` along the real and imaginary directions.
    pub fn cr_residual(&self, z: &[Complex64], h: f64) -> Result<f64> {
        let mut worst = 0.0f64;
        for i in 0..self.nvars {
            let shifted = |d: Complex64| -> Result<Complex64> {
                let mut p = z.to_vec();
                p[i] += d;
                self.eval(&p)
            };
            let dx = (shifted(Complex64::new(h, 0.0))? - shifted(Complex64::new(-h, 0.0))?) / (2.0 * h);
            let dy = (shifted(Complex64::new(0.0, h))? - shifted(Complex64::new(0.0, -h))?) / (2.0 * h);
            let dbar = 0.5 * (dx + Complex64::i() * dy);
            let dz = 0.5 * (dx - Complex64::i() * dy);
            worst = worst.max(dbar.norm() / dz.norm().max(1e-300));
        }
        Ok(worst)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CauchyOptions {
    /// trapezoid nodes per circle
    pub nodes: usize,
    /// common radius for all active axes; default splits half the depth of
    /// each slot among its active axes
    pub radius: Option<f64>,
}

impl Default for CauchyOptions {
    fn default() -> Self {
        CauchyOptions { nodes: 32, radius: None }
    }
}

/// `d^alpha F(z)` for `F` on `T_Omega^slots`, `z` of length `slots * n`.
pub fn holo_derivative(
    alg: &Algebra,
    f: &HoloFunction,
    z: &[Complex64],
    alpha: &[u16],
    opts: &CauchyOptions,
) -> Result<Complex64> {
    let n = alg.n;
    if z.len() != f.nvars() || alpha.len() != f.nvars() || !f.nvars().is_multiple_of(n) {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: z.len().min(alpha.len()),
        });
    }
    let active: Vec<usize> = (0..alpha.len()).filter(|&i| alpha[i] > 0).collect();
    if active.is_empty() {
        return f.eval(z);
    }
    let norms = alg.basis_op_norms();
    let mut radii = vec![0.0; alpha.len()];
    for s in 0..f.nvars() / n {
        let slot = &z[s * n..(s + 1) * n];
        let in_slot: Vec<usize> = active.iter().copied().filter(|i| i / n == s).collect();
        if in_slot.is_empty() {
            continue;
        }
        if !in_tube(alg, slot) {
            return Err(Error::OutsideTube);
        }
        let depth = alg.min_eigenvalue(&im(slot));
        match opts.radius {
            Some(rho) => {
                let reach: f64 = in_slot.iter().map(|&i| rho * norms[i % n]).sum();
                if reach >= depth {
                    return Err(Error::RadiusViolation { radius: rho, min_eig: depth });
                }
                for &i in &in_slot {
                    radii[i] = rho;
                }
            }
            None => {
                for &i in &in_slot {
                    radii[i] = 0.5 * depth / (in_slot.len() as f64 * norms[i % n]);
                }
            }
        }
    }
    let m = active.len();
    let nn = opts.nodes;
    if nn <= alpha.iter().map(|a| *a as usize).max().unwrap_or(0) {
        return Err(Error::Quadrature(format!("{nn} circle nodes for derivative order {alpha:?}")));
    }
    let total = nn.pow(m as u32);
    let roots: Vec<Complex64> = (0..nn)
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / nn as f64))
        .collect();
    let vals: Vec<Result<Complex64>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut p = z.to_vec();
            let mut rest = idx;
            let mut phase_idx = 0usize;
            for &a in &active {
                let j = rest % nn;
                rest /= nn;
                p[a] += roots[j] * radii[a];
                phase_idx += j * alpha[a] as usize;
            }
            let phase = roots[(nn - phase_idx % nn) % nn];
            Ok(f.eval(&p)? * phase)
        })
        .collect();
    let vals = vals.into_iter().collect::<Result<Vec<_>>>()?;
    let mean = pairwise_sum_c(&vals) / total as f64;
    let mut scale = 1.0;
    for &a in &active {
        scale *= factorial(alpha[a]) / radii[a].powi(alpha[a] as i32);
    }
    Ok(mean * scale)
}

fn factorial(k: u16) -> f64 {
    (1..=k as u64).map(|v| v as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{algebra, Family};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_second_derivative() {
        let a = algebra(Family::Rank1);
        let f = HoloFunction::new(1, |z| Ok(z[0] * z[0]));
        let d = holo_derivative(&a, &f, &[c(0.3, 1.0)], &[2], &CauchyOptions::default()).unwrap();
        assert!((d - c(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn node_doubling_stability() {
        let a = algebra(Family::Sym(2));
        let f = HoloFunction::new(3, |z| Ok((z[0] * z[1] - z[2] * z[2]).powi(-2) * (z[2] * 0.5).exp()));
        let z = [c(0.2, 1.0), c(-0.4, 1.3), c(0.1, 0.2)];
        for alpha in [[1u16, 1, 0], [0, 0, 2], [1, 0, 1]] {
            let d32 = holo_derivative(&a, &f, &z, &alpha, &CauchyOptions::default()).unwrap();
            let d64 = holo_derivative(&a, &f, &z, &alpha, &CauchyOptions { nodes: 64, radius: None }).unwrap();
            assert!((d32 - d64).norm() < 1e-9 * d64.norm(), "{alpha:?}");
        }
    }

    #[test]
    fn mixed_derivative_of_tensor_factorizes() {
        let a = algebra(Family::Rank1);
        let f = HoloFunction::new(1, |z| Ok(z[0].powi(3)));
        let g = HoloFunction::new(1, |z| Ok((z[0] * 2.0).exp()));
        let fg = HoloFunction::tensor(&f, &g);
        let z = [c(0.5, 0.7), c(-1.0, 0.4)];
        let d = holo_derivative(&a, &fg, &z, &[2, 1], &CauchyOptions::default()).unwrap();
        let want = z[0] * 6.0 * (z[1] * 2.0).exp() * 2.0;
        assert!((d - want).norm() < 1e-11 * want.norm());
    }

    #[test]
    fn radius_violation() {
        let a = algebra(Family::Rank1);
        let f = HoloFunction::new(1, |z| Ok(z[0]));
        let r = holo_derivative(&a, &f, &[c(0.0, 0.5)], &[1], &CauchyOptions { nodes: 16, radius: Some(0.6) });
        assert!(matches!(r, Err(Error::RadiusViolation { .. })));
    }

    #[test]
    fn cauchy_riemann() {
        let f = HoloFunction::new(2, |z| Ok(z[0].exp() * z[1]));
        assert!(f.cr_residual(&[c(0.1, 0.2), c(1.0, 1.0)], 1e-5).unwrap() < 1e-8);
        let g = HoloFunction::new(1, |z| Ok(z[0].conj()));
        assert!(g.cr_residual(&[c(0.1, 0.2)], 1e-5).unwrap() > 0.5);
    }
}
