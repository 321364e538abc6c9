//! `C^{(k)}_{lambda,mu}(v) = c^{(k)}_{lambda,mu}((e - v)/2, (e + v)/2)`.

use serde::Serialize;

use super::compute_c;
use crate::error::Result;
use crate::jordan::{Algebra, Family};
use crate::scalar::{format_q, q, Field, Q};
use crate::symbolic::{BracketPolynomial, Coef, Monomial, ParamPoly, Poly};

#[derive(Clone, Debug, PartialEq)]
pub struct OrthoPoly {
    pub family: Family,
    pub k: u32,
    pub lambda: Q,
    pub mu: Q,
    /// polynomial in the `n` coordinates of `v`
    pub poly: Poly<Q>,
}

impl OrthoPoly {
    pub fn eval<T: Field>(&self, v: &[T]) -> T {
        self.poly.eval(v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            mono: Vec<u16>,
            coef: String,
        }
        serde_json::json!({
            "schema": crate::report::SCHEMA,
            "algebra": self.family.name(),
            "k": self.k,
            "lambda": format_q(&self.lambda),
            "mu": format_q(&self.mu),
            "terms": self.poly.terms().map(|(m, c)| Term { mono: m.0.clone(), coef: format_q(c) }).collect::<Vec<_>>(),
        })
    }
}

/// `x_i -> (e_i - v_i)/2`, `y_i -> (e_i + v_i)/2` as polynomials in `v`.
fn targets<C: Coef>(alg: &Algebra) -> Vec<Poly<C>> {
    let n = alg.n;
    let e = alg.identity::<Q>();
    let half = q(1, 2);
    let slot = |sign: i64| {
        let e = e.clone();
        let half = half.clone();
        (0..n).map(move |i| {
            let mut p = Poly::constant(n, C::one().scale_q(&(&e[i] * &half)));
            p.add_term(Monomial::var(n, i), C::one().scale_q(&(&half * Q::from_integer(sign.into()))));
            p
        })
    };
    slot(-1).chain(slot(1)).collect()
}

pub fn substitute(alg: &Algebra, c: &BracketPolynomial, lambda: &Q, mu: &Q) -> OrthoPoly {
    let poly = c.specialize(lambda, mu).compose(&targets::<Q>(alg));
    OrthoPoly {
        family: alg.family,
        k: c.k,
        lambda: lambda.clone(),
        mu: mu.clone(),
        poly,
    }
}

#[allow(non_snake_case)]
pub fn compute_C(alg: &Algebra, k: u32, lambda: &Q, mu: &Q) -> Result<OrthoPoly> {
    Ok(substitute(alg, compute_c(alg, k)?.as_ref(), lambda, mu))
}

/// `C^{(k)}` with `lambda, mu` kept symbolic (as `s, t`).
#[allow(non_snake_case)]
pub fn compute_C_symbolic(alg: &Algebra, k: u32) -> Result<Poly<ParamPoly>> {
    Ok(compute_c(alg, k)?.poly.compose(&targets::<ParamPoly>(alg)))
}
