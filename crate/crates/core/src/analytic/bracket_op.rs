//! The bracket `B^{(k)}_{lambda,mu} = res o c^{(k)}_{lambda-n/r, mu-n/r}(d/dz, d/dw)`
//! as a bi-differential operator on functions of `(z, w)`.
//!
//! A coordinate `x_i` of the symbol acts as `G_ii^{-1} d/dz_i`, the gradient
//! for the trace form, so that `p(d/dz) e^{i(z, xi)} = p(i xi) e^{i(z, xi)}`.

use num_complex::Complex64;

use super::holo::{holo_derivative, CauchyOptions, HoloFunction};
use crate::bracket::compute_c;
use crate::error::{Error, Result};
use crate::jordan::Algebra;
use crate::scalar::q_to_f64;
use crate::symbolic::Poly;

/// Symbol of the operator: `c^{(k)}` at `(lambda - n/r, mu - n/r)` with the
/// gradient scaling folded into the coefficients.
pub fn bracket_symbol(alg: &Algebra, k: u32, lambda: f64, mu: f64) -> Result<Poly<f64>> {
    let c = compute_c(alg, k)?;
    let nr = alg.n as f64 / alg.r as f64;
    let base = c.specialize_f64(lambda - nr, mu - nr);
    let g: Vec<f64> = alg.gram_diag().iter().map(q_to_f64).collect();
    Ok(Poly::from_terms(
        2 * alg.n,
        base.terms().map(|(m, coef)| {
            let scale: f64 = m.0.iter().enumerate().map(|(i, e)| g[i % alg.n].powi(-(*e as i32))).product();
            (m.clone(), coef * scale)
        }),
    ))
}

/// `(B F)(z)` for `F` on `T_Omega x T_Omega`.
pub fn apply_b(
    alg: &Algebra,
    k: u32,
    lambda: f64,
    mu: f64,
    f: &HoloFunction,
    z: &[Complex64],
    opts: &CauchyOptions,
) -> Result<Complex64> {
    if f.nvars() != 2 * alg.n {
        return Err(Error::DimensionMismatch {
            expected: 2 * alg.n,
            got: f.nvars(),
        });
    }
    alg.check_len(z)?;
    let symbol = bracket_symbol(alg, k, lambda, mu)?;
    apply_symbol(alg, &symbol, f, z, opts)
}

pub fn apply_symbol(alg: &Algebra, symbol: &Poly<f64>, f: &HoloFunction, z: &[Complex64], opts: &CauchyOptions) -> Result<Complex64> {
    let zz: Vec<Complex64> = z.iter().chain(z).copied().collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, coef) in symbol.terms() {
        acc += holo_derivative(alg, f, &zz, &m.0, opts)? * *coef;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{algebra, Family};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn k0_is_restriction() {
        let a = algebra(Family::Sym(2));
        let f = HoloFunction::new(6, |v| Ok(v[0] * v[4] + v[2].exp() * v[3]));
        let z = [c(0.1, 1.0), c(0.2, 1.5), c(0.0, 0.3)];
        let b = apply_b(&a, 0, 3.0, 2.5, &f, &z, &CauchyOptions::default()).unwrap();
        let zz: Vec<Complex64> = z.iter().chain(&z).copied().collect();
        assert!((b - f.eval(&zz).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn rank1_first_bracket_on_zw() {
        let a = algebra(Family::Rank1);
        let f = HoloFunction::new(2, |v| Ok(v[0] * v[1]));
        let z = [c(0.4, 0.9)];
        let (l, m) = (3.0, 1.5);
        let b = apply_b(&a, 1, l, m, &f, &z, &CauchyOptions::default()).unwrap();
        assert!((b - z[0] * (l - m)).norm() < 1e-12);
    }

    #[test]
    fn bilinear_and_degree_drop() {
        let a = algebra(Family::Rank1);
        let f = HoloFunction::new(2, |v| Ok(v[0].powi(4) * v[1].powi(3)));
        let g = HoloFunction::new(2, |v| Ok(v[0] * v[1].powi(2)));
        let o = CauchyOptions::default();
        let z = [c(0.2, 1.1)];
        let fg = f.add(&g);
        let lhs = apply_b(&a, 2, 2.5, 3.5, &fg, &z, &o).unwrap();
        let rhs = apply_b(&a, 2, 2.5, 3.5, &f, &z, &o).unwrap() + apply_b(&a, 2, 2.5, 3.5, &g, &z, &o).unwrap();
        assert!((lhs - rhs).norm() < 1e-10 * lhs.norm());
        // z^4 w^3 has total degree 7; B^{(2)} of it is a multiple of z^5
        let z2 = [z[0] * 2.0];
        let ratio = apply_b(&a, 2, 2.5, 3.5, &f, &z2, &o).unwrap() / apply_b(&a, 2, 2.5, 3.5, &f, &z, &o).unwrap();
        assert!((ratio - c(32.0, 0.0)).norm() < 1e-9);
    }
}
