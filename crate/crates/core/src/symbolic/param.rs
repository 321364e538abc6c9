//! `ParamPoly`: exact polynomials in the two bracket parameters `s` and `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{format_q, parse_q, qi, Field, Q};

/// Sparse map `(deg_s, deg_t) -> coefficient`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl ParamPoly {
    pub fn constant(c: Q) -> Self {
        let mut p = ParamPoly::default();
        p.add_term(0, 0, c);
        p
    }

    pub fn s() -> Self {
        let mut p = ParamPoly::default();
        p.add_term(1, 0, Q::one());
        p
    }

    pub fn t() -> Self {
        let mut p = ParamPoly::default();
        p.add_term(0, 1, Q::one());
        p
    }

    /// `s + a`
    pub fn s_plus(a: i64) -> Self {
        ParamPoly::s() + ParamPoly::constant(qi(a))
    }

    /// `t + b`
    pub fn t_plus(b: i64) -> Self {
        ParamPoly::t() + ParamPoly::constant(qi(b))
    }

    pub fn add_term(&mut self, ds: u32, dt: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((ds, dt)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(ds, dt));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a == 0 && b == 0)
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return ParamPoly::default();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn eval<T: Field>(&self, s: &T, t: &T) -> T {
        let max_s = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_t = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let sp = powers(s, max_s);
        let tp = powers(t, max_t);
        self.terms.iter().fold(T::zero(), |acc, (&(a, b), c)| {
            acc + T::from_q(c) * sp[a as usize].clone() * tp[b as usize].clone()
        })
    }

    /// Exchanges the roles of `s` and `t`.
    pub fn swap_params(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    pub(crate) fn to_triples(&self) -> Vec<(u32, u32, String)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, format_q(c))).collect()
    }

    pub(crate) fn from_triples(v: &[(u32, u32, String)]) -> Result<Self, crate::Error> {
        let mut p = ParamPoly::default();
        for (a, b, c) in v {
            p.add_term(*a, *b, parse_q(c)?);
        }
        Ok(p)
    }
}

pub(crate) fn powers<T: Field>(x: &T, max: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(T::one());
    for i in 0..max {
        let next = out[i].clone() * x.clone();
        out.push(next);
    }
    out
}

impl Serialize for ParamPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<(u32, u32, String)>::deserialize(d)?;
        ParamPoly::from_triples(&v).map_err(serde::de::Error::custom)
    }
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        ParamPoly::constant(Q::one())
    }
}

impl AddAssign<&ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &ParamPoly) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl SubAssign<&ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &ParamPoly) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, -c.clone());
        }
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(mut self, rhs: ParamPoly) -> ParamPoly {
        self += &rhs;
        self
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(mut self, rhs: ParamPoly) -> ParamPoly {
        self -= &rhs;
        self
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::default();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if a > 0 {
                write!(f, "*s^{a}")?;
            }
            if b > 0 {
                write!(f, "*t^{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn ring_ops_are_exact() {
        let a = ParamPoly::s_plus(1);
        let b = ParamPoly::t_plus(-1);
        let p = &a * &b;
        // (s+1)(t-1) = st - s + t - 1
        assert_eq!(p.len(), 4);
        assert_eq!(p.eval(&qi(2), &qi(3)), qi(6));
        let z = p.clone() - p;
        assert!(z.is_zero());
    }

    #[test]
    fn swap_params_exchanges() {
        let p = ParamPoly::s() * ParamPoly::s() + ParamPoly::t().scale(&q(1, 2));
        let sw = p.swap_params();
        assert_eq!(sw.eval(&qi(5), &qi(2)), p.eval(&qi(2), &qi(5)));
    }
}
