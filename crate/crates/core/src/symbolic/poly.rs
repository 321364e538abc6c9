//! Sparse multivariate polynomials with lexicographically ordered monomials.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::param::{powers, ParamPoly};
use crate::scalar::{Field, Q};

/// Exponent vector. The derived `Ord` is lexicographic, so the last key of a
/// `BTreeMap<Monomial, _>` is the lex-leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Monomial(m)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn split(&self, at: usize) -> (Monomial, Monomial) {
        (Monomial(self.0[..at].to_vec()), Monomial(self.0[at..].to_vec()))
    }

    /// Places these exponents at `offset` inside a monomial on `total` variables.
    pub fn embed(&self, offset: usize, total: usize) -> Monomial {
        let mut v = vec![0; total];
        v[offset..offset + self.0.len()].copy_from_slice(&self.0);
        Monomial(v)
    }

    pub fn eval<T: Field>(&self, pows: &[Vec<T>]) -> T {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(T::one(), |acc, (i, &e)| acc * pows[i][e as usize].clone())
    }
}

pub trait Coef: Clone + Debug + PartialEq + Send + Sync + Zero + One {
    fn add_to(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale_q(&self, q: &Q) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Coef for Q {
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_q(&self, q: &Q) -> Self {
        self * q
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
}

impl Coef for ParamPoly {
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_q(&self, q: &Q) -> Self {
        self.scale(q)
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
}

impl Coef for f64 {
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_q(&self, q: &Q) -> Self {
        self * f64::from_q(q)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Coef for Complex64 {
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_q(&self, q: &Q) -> Self {
        self * f64::from_q(q)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coef> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), C::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coef(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_to(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly<C>) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Poly<C>) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.neg_ref());
        }
    }

    pub fn mul(&self, other: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Poly<C> {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), c1.mul_ref(c));
        }
        out
    }

    pub fn scale(&self, c: &C) -> Poly<C> {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    pub fn scale_q(&self, q: &Q) -> Poly<C> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.scale_q(q))))
    }

    pub fn pow(&self, k: u32) -> Poly<C> {
        let mut out = Poly::constant(self.nvars, C::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Ordinary partial derivative in coordinate `i`.
    pub fn partial(&self, i: usize) -> Poly<C> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[i] -= 1;
            out.add_term(nm, c.scale_q(&Q::from_integer(e.into())));
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == deg)
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient by `g`. Returns the first non-reducible leading term's
    /// polynomial remainder state on failure; with a single divisor this is
    /// nonzero exactly when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Poly<Q>) -> Result<Poly<C>, Poly<C>> {
        let (lm_g, lc_g) = g.leading().expect("division by zero polynomial");
        let inv_lc = Q::one() / lc_g;
        let mut rem = self.terms.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.iter().next_back() {
            let Some(qm) = m.div(lm_g) else {
                return Err(Poly {
                    nvars: self.nvars,
                    terms: rem,
                });
            };
            let qc = c.scale_q(&inv_lc);
            for (gm, gc) in g.terms() {
                let key = gm.mul(&qm);
                let sub = qc.scale_q(gc);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(sub.neg_ref());
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        o.get_mut().add_to(&sub.neg_ref());
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn map_coef<D: Coef>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Reinterprets the variables as a block starting at `offset` in a ring on `total` variables.
    pub fn embed(&self, offset: usize, total: usize) -> Poly<C> {
        Poly::from_terms(
            total,
            self.terms.iter().map(|(m, c)| (m.embed(offset, total), c.clone())),
        )
    }

    /// Evaluates with coefficients mapped into `T` by `conv`.
    pub fn eval_with<T: Field>(&self, x: &[T], conv: impl Fn(&C) -> T) -> T {
        assert_eq!(x.len(), self.nvars);
        let maxe: Vec<usize> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i] as usize).max().unwrap_or(0))
            .collect();
        let pows: Vec<Vec<T>> = x.iter().zip(&maxe).map(|(v, &e)| powers(v, e)).collect();
        self.terms
            .iter()
            .fold(T::zero(), |acc, (m, c)| acc + conv(c) * m.eval(&pows))
    }

    /// Substitutes every variable by a polynomial on `targets[0].nvars()` variables.
    pub fn compose(&self, targets: &[Poly<C>]) -> Poly<C> {
        assert_eq!(targets.len(), self.nvars);
        let out_vars = targets[0].nvars();
        let maxe: Vec<u16> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let pows: Vec<Vec<Poly<C>>> = targets
            .iter()
            .zip(&maxe)
            .map(|(p, &e)| {
                let mut v = vec![Poly::constant(out_vars, C::one())];
                for j in 0..e as usize {
                    let next = v[j].mul(p);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    acc = acc.mul(&pows[i][e as usize]);
                }
            }
            out.add_assign(&acc);
        }
        out
    }
}

impl Poly<Q> {
    pub fn eval<T: Field>(&self, x: &[T]) -> T {
        self.eval_with(x, T::from_q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use proptest::prelude::*;

    fn x(i: usize) -> Poly<Q> {
        Poly::var(3, i)
    }

    #[test]
    fn exact_division_recovers_factor() {
        // det of sym(2): x0 x1 - x2^2
        let mut det = x(0).mul(&x(1));
        det.sub_assign(&x(2).mul(&x(2)));
        let mut other = x(0).scale(&qi(3));
        other.add_term(Monomial::var(3, 2), q(1, 2));
        let prod = det.mul(&other).mul(&det);
        let quot = prod.div_exact(&det).unwrap();
        assert_eq!(quot, det.mul(&other));
        let mut bumped = prod.clone();
        bumped.add_term(Monomial::var(3, 1), qi(1));
        assert!(bumped.div_exact(&det).is_err());
    }

    #[test]
    fn partial_of_power() {
        let p = x(0).pow(3);
        let d = p.partial(0);
        assert_eq!(d, x(0).pow(2).scale(&qi(3)));
        assert!(p.partial(1).is_zero());
    }

    fn small_poly() -> impl Strategy<Value = Poly<Q>> {
        prop::collection::vec(((0u16..3, 0u16..3, 0u16..3), -5i64..6), 0..6).prop_map(|ts| {
            Poly::from_terms(3, ts.into_iter().map(|((a, b, c), v)| (Monomial(vec![a, b, c]), qi(v))))
        })
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let prod = a.mul(&b);
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }

        #[test]
        fn eval_is_ring_homomorphism(a in small_poly(), b in small_poly(), v in prop::array::uniform3(-4i64..5)) {
            let pt: Vec<Q> = v.iter().map(|&t| qi(t)).collect();
            prop_assert_eq!(a.mul(&b).eval(&pt), a.eval(&pt) * b.eval(&pt));
        }
    }
}
