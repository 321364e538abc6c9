//! Certified division of `D^k` output by the weights, and [`BracketPolynomial`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::expr::{apply_d_power, single_slot_operator, Slot, SlotExpr, SymExpr};
use super::param::ParamPoly;
use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::jordan::{algebra, Algebra, Family};
use crate::scalar::{Field, Q};

pub const SCHEMA: &str = "rc-lab/1";

/// `c^{(k)}_{s,t}(x, y)`: a polynomial in the `2n` coordinates (`x` first)
/// with coefficients in `Q[s, t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketPolynomial {
    pub family: Family,
    pub k: u32,
    pub poly: Poly<ParamPoly>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    mono: Vec<u16>,
    coef: ParamPoly,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    schema: String,
    algebra: String,
    k: u32,
    terms: Vec<TermJson>,
}

impl BracketPolynomial {
    pub fn n(&self) -> usize {
        self.poly.nvars() / 2
    }

    /// Every monomial has total degree `rk`.
    pub fn is_homogeneous(&self) -> bool {
        let r = algebra(self.family).r as u32;
        self.poly.is_homogeneous(r * self.k)
    }

    /// Exact specialization at rational `(s, t)`.
    pub fn specialize(&self, s: &Q, t: &Q) -> Poly<Q> {
        self.poly.map_coef(|c| c.eval(s, t))
    }

    pub fn specialize_f64(&self, s: f64, t: f64) -> Poly<f64> {
        self.poly.map_coef(|c| c.eval(&s, &t))
    }

    pub fn evaluate<T: Field>(&self, x: &[T], y: &[T], s: &T, t: &T) -> T {
        let xy: Vec<T> = x.iter().chain(y).cloned().collect();
        self.poly.eval_with(&xy, |c| c.eval(s, t))
    }

    /// `c_{t,s}(y, x)`
    pub fn exchanged(&self) -> BracketPolynomial {
        let n = self.n();
        let poly = Poly::from_terms(
            2 * n,
            self.poly.terms().map(|(m, c)| {
                let (mx, my) = m.split(n);
                (my.concat(&mx), c.swap_params())
            }),
        );
        BracketPolynomial {
            family: self.family,
            k: self.k,
            poly,
        }
    }

    /// `c_{s,t}(x,y) = (-1)^{rk} c_{t,s}(y,x)`
    pub fn has_exchange_symmetry(&self) -> bool {
        let r = algebra(self.family).r as u32;
        let ex = self.exchanged();
        if (r * self.k).is_multiple_of(2) {
            ex == *self
        } else {
            ex.poly.map_coef(|c| -c.clone()) == self.poly
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = BracketJson {
            schema: SCHEMA.into(),
            algebra: self.family.name(),
            k: self.k,
            terms: self
                .poly
                .terms()
                .map(|(m, c)| TermJson {
                    mono: m.0.clone(),
                    coef: c.clone(),
                })
                .collect(),
        };
        serde_json::to_value(j).expect("bracket polynomial serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: BracketJson = serde_json::from_value(v.clone())?;
        if j.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {}", j.schema)));
        }
        let family: Family = j.algebra.parse()?;
        let n = algebra(family).n;
        let mut poly = Poly::zero(2 * n);
        for t in j.terms {
            if t.mono.len() != 2 * n {
                return Err(Error::DimensionMismatch {
                    expected: 2 * n,
                    got: t.mono.len(),
                });
            }
            poly.add_term(Monomial(t.mono), t.coef);
        }
        Ok(BracketPolynomial { family, k: j.k, poly })
    }
}

fn lift(p: &Poly<Q>) -> Poly<ParamPoly> {
    p.map_coef(|c| ParamPoly::constant(c.clone()))
}

fn merge(groups: &mut BTreeMap<(i32, i32), Poly<ParamPoly>>, key: (i32, i32), p: Poly<ParamPoly>) {
    if p.is_zero() {
        return;
    }
    let e = groups.entry(key).or_insert_with(|| Poly::zero(p.nvars()));
    e.add_assign(&p);
    if e.is_zero() {
        groups.remove(&key);
    }
}

/// Removes negative powers of one slot's determinant. Groups `(a, b)` are
/// keyed with the reduced slot first.
fn reduce_slot(
    groups: BTreeMap<(i32, i32), Poly<ParamPoly>>,
    divisor: &Poly<Q>,
    other_det: &Poly<ParamPoly>,
    slot: char,
) -> Result<BTreeMap<(i32, i32), Poly<ParamPoly>>> {
    let mut groups = groups;
    loop {
        let Some(&(amin, _)) = groups.keys().next() else {
            return Ok(groups);
        };
        if amin >= 0 {
            return Ok(groups);
        }
        let level: Vec<((i32, i32), Poly<ParamPoly>)> = groups
            .range((amin, i32::MIN)..=(amin, i32::MAX))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for (k, _) in &level {
            groups.remove(k);
        }
        let bmin = level.iter().map(|(k, _)| k.1).min().unwrap();
        let mut num = Poly::zero(level[0].1.nvars());
        for ((_, b), p) in level {
            num.add_assign(&p.mul(&other_det.pow((b - bmin) as u32)));
        }
        let quot = num
            .div_exact(divisor)
            .map_err(|_| Error::NonzeroRemainder { slot })?;
        merge(&mut groups, (amin + 1, bmin), quot);
    }
}

/// `(det x)^{-s} (det y)^{-t} expr` as a certified polynomial.
pub fn extract_bracket_polynomial(alg: &Algebra, expr: &SymExpr, k: u32) -> Result<BracketPolynomial> {
    let n = alg.n;
    let dx = alg.det_poly().embed(0, 2 * n);
    let dy = alg.det_poly().embed(n, 2 * n);
    let groups = expr.clone().into_groups();
    let groups = reduce_slot(groups, &dx, &lift(&dy), 'x')?;
    let swapped = groups.into_iter().map(|((a, b), p)| ((b, a), p)).collect();
    let groups = reduce_slot(swapped, &dy, &lift(&dx), 'y')?;
    let (dxl, dyl) = (lift(&dx), lift(&dy));
    let mut poly = Poly::zero(2 * n);
    for ((b, a), p) in groups {
        poly.add_assign(&p.mul(&dxl.pow(a as u32)).mul(&dyl.pow(b as u32)));
    }
    Ok(BracketPolynomial {
        family: alg.family,
        k,
        poly,
    })
}

/// `c^{(k)}_{s,t}` from scratch.
pub fn rodrigues(alg: &Algebra, k: u32) -> Result<BracketPolynomial> {
    let start = SymExpr::det_power(alg, k as i32, k as i32);
    let expr = apply_d_power(&start, k, alg);
    extract_bracket_polynomial(alg, &expr, k)
}

/// `b(s)` with `det(grad) (det x)^{s+1} = b(s) (det x)^s`.
pub fn cayley_polynomial(alg: &Algebra) -> Result<ParamPoly> {
    let n = alg.n;
    let op = single_slot_operator(alg);
    let det = lift(alg.det_poly());
    let wanted = op.terms().map(|(m, _)| m.0.clone()).collect();
    let table =
        super::expr::slot_derivatives(&det, Slot::X, &SlotExpr::monomial(Monomial::one(n), 1), &wanted);
    let mut det_pows = vec![Poly::constant(n, ParamPoly::one())];
    for i in 0..alg.r {
        let next = det_pows[i].mul(&det);
        det_pows.push(next);
    }
    let floor = 1 - alg.r as i32;
    let mut num = Poly::zero(n);
    for (m, c) in op.terms() {
        num.add_assign(&table[&m.0].collapse_to(&det_pows, floor, n).scale_q(c));
    }
    // num (det)^{s + floor} = b(s) det^s, so num = b(s) det^{-floor}
    let divisor = alg.det_poly().pow((-floor) as u32);
    let quot = num
        .div_exact(&divisor)
        .map_err(|r| Error::NonConstantQuotient(format!("{} remainder terms", r.len())))?;
    if quot.len() > 1 || quot.terms().any(|(m, _)| m.degree() > 0) {
        return Err(Error::NonConstantQuotient(format!("{} terms", quot.len())));
    }
    let b = quot.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(ParamPoly::zero);
    Ok(b)
}

/// `det(grad)(det x)^m / (det x)^{m-1}`, computed on concrete integer powers.
pub fn cayley_check(alg: &Algebra, m: u32) -> Result<Q> {
    let op = single_slot_operator(alg);
    let f = alg.det_poly().pow(m);
    let mut out = Poly::<Q>::zero(alg.n);
    for (mono, c) in op.terms() {
        let mut g = f.clone();
        for (i, &e) in mono.0.iter().enumerate() {
            for _ in 0..e {
                g = g.partial(i);
            }
        }
        out.add_assign(&g.scale_q(c));
    }
    let quot = out
        .div_exact(&alg.det_poly().pow(m - 1))
        .map_err(|r| Error::NonConstantQuotient(format!("{} remainder terms", r.len())))?;
    match quot.len() {
        0 => Ok(Q::zero()),
        1 if quot.max_degree() == 0 => Ok(quot.terms().next().unwrap().1.clone()),
        _ => Err(Error::NonConstantQuotient(format!("{} terms", quot.len()))),
    }
}
