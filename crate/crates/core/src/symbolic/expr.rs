//! Expressions `sum c(s,t) m(x,y) (det x)^{s+a} (det y)^{t+b}` and the
//! operator `D = det(grad_x - grad_y)`.
//!
//! Gradients use the trace form: `grad_i = g_ii^{-1} d/dx_i` where `g` is the
//! (diagonal) Gram matrix of the coordinate basis.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::One;
use rayon::prelude::*;

use super::param::ParamPoly;
use super::poly::{Monomial, Poly};
use crate::jordan::Algebra;
use crate::scalar::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    X,
    Y,
}

impl Slot {
    /// `p + a` where `p` is this slot's parameter (`s` for `x`, `t` for `y`).
    fn shifted_param(self, a: i32) -> ParamPoly {
        match self {
            Slot::X => ParamPoly::s_plus(a as i64),
            Slot::Y => ParamPoly::t_plus(a as i64),
        }
    }
}

/// One term `coef * mono * (det x)^{s+a} (det y)^{t+b}`; `mono` covers the
/// `2n` coordinates, `x` first.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTerm {
    pub coef: ParamPoly,
    pub mono: Monomial,
    pub a: i32,
    pub b: i32,
}

/// Canonical sum of [`SymTerm`]s, grouped by the exponent offsets `(a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymExpr {
    n: usize,
    groups: BTreeMap<(i32, i32), Poly<ParamPoly>>,
}

impl SymExpr {
    pub fn zero(n: usize) -> Self {
        SymExpr {
            n,
            groups: BTreeMap::new(),
        }
    }

    /// `(det x)^{s+a} (det y)^{t+b}`
    pub fn det_power(alg: &Algebra, a: i32, b: i32) -> Self {
        let mut e = SymExpr::zero(alg.n);
        e.add_group(a, b, Poly::constant(2 * alg.n, ParamPoly::one()));
        e
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = SymTerm>) -> Self {
        let mut e = SymExpr::zero(n);
        for t in terms {
            e.add_group(t.a, t.b, Poly::from_terms(2 * n, [(t.mono, t.coef)]));
        }
        e
    }

    /// Dimension of one slot.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn groups(&self) -> &BTreeMap<(i32, i32), Poly<ParamPoly>> {
        &self.groups
    }

    pub(crate) fn into_groups(self) -> BTreeMap<(i32, i32), Poly<ParamPoly>> {
        self.groups
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn len(&self) -> usize {
        self.groups.values().map(Poly::len).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = SymTerm> + '_ {
        self.groups.iter().flat_map(|(&(a, b), p)| {
            p.terms().map(move |(m, c)| SymTerm {
                coef: c.clone(),
                mono: m.clone(),
                a,
                b,
            })
        })
    }

    pub fn add_group(&mut self, a: i32, b: i32, p: Poly<ParamPoly>) {
        if p.is_zero() {
            return;
        }
        match self.groups.entry((a, b)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&p);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SymExpr) {
        for (&(a, b), p) in &other.groups {
            self.add_group(a, b, p.clone());
        }
    }

    /// Plain partial derivative `d/d(slot)_i`.
    pub fn partial(&self, alg: &Algebra, slot: Slot, i: usize) -> SymExpr {
        let n = self.n;
        let (var, det) = match slot {
            Slot::X => (i, alg.det_poly().embed(0, 2 * n)),
            Slot::Y => (n + i, alg.det_poly().embed(n, 2 * n)),
        };
        let ddet = det.partial(var).map_coef(|c| ParamPoly::constant(c.clone()));
        let mut out = SymExpr::zero(n);
        for (&(a, b), p) in &self.groups {
            out.add_group(a, b, p.partial(var));
            let off = if slot == Slot::X { a } else { b };
            let chain = p.mul(&ddet).scale(&slot.shifted_param(off));
            match slot {
                Slot::X => out.add_group(a - 1, b, chain),
                Slot::Y => out.add_group(a, b - 1, chain),
            }
        }
        out
    }

    /// Gradient component `g_ii^{-1} d/d(slot)_i`.
    pub fn diff(&self, alg: &Algebra, slot: Slot, i: usize) -> SymExpr {
        let inv = Q::one() / &alg.gram_diag()[i];
        let mut out = self.partial(alg, slot, i);
        for p in out.groups.values_mut() {
            *p = p.scale_q(&inv);
        }
        out
    }

    /// Rewrites every group at the smallest offsets present, multiplying by
    /// the surplus determinant powers. The result has at most one group.
    pub fn collapse(&self, alg: &Algebra) -> SymExpr {
        let (Some(amin), Some(bmin)) = (
            self.groups.keys().map(|k| k.0).min(),
            self.groups.keys().map(|k| k.1).min(),
        ) else {
            return self.clone();
        };
        let n = self.n;
        let dx = alg.det_poly().embed(0, 2 * n).map_coef(|c| ParamPoly::constant(c.clone()));
        let dy = alg.det_poly().embed(n, 2 * n).map_coef(|c| ParamPoly::constant(c.clone()));
        let mut acc = Poly::zero(2 * n);
        for (&(a, b), p) in &self.groups {
            let f = dx.pow((a - amin) as u32).mul(&dy.pow((b - bmin) as u32));
            acc.add_assign(&p.mul(&f));
        }
        let mut out = SymExpr::zero(n);
        out.add_group(amin, bmin, acc);
        out
    }

    /// Exact value at a point with real parameters.
    pub fn eval_f64(&self, alg: &Algebra, x: &[f64], y: &[f64], s: f64, t: f64) -> f64 {
        let xy: Vec<f64> = x.iter().chain(y).copied().collect();
        let (dx, dy) = (alg.det(x), alg.det(y));
        self.groups
            .iter()
            .map(|(&(a, b), p)| {
                p.eval_with(&xy, |c| c.eval(&s, &t)) * dx.powf(s + a as f64) * dy.powf(t + b as f64)
            })
            .sum()
    }
}

/// `det(grad_x - grad_y)` as a polynomial in `2n` commuting derivation symbols
/// (`x` block first).
pub fn d_operator(alg: &Algebra) -> Poly<Q> {
    let n = alg.n;
    let targets: Vec<Poly<Q>> = (0..n)
        .map(|i| {
            let inv = Q::one() / &alg.gram_diag()[i];
            let mut u = Poly::zero(2 * n);
            u.add_term(Monomial::var(2 * n, i), inv.clone());
            u.add_term(Monomial::var(2 * n, n + i), -inv);
            u
        })
        .collect();
    alg.det_poly().compose(&targets)
}

/// `det(grad_x)` in `n` derivation symbols.
pub fn single_slot_operator(alg: &Algebra) -> Poly<Q> {
    let n = alg.n;
    let targets: Vec<Poly<Q>> = (0..n)
        .map(|i| {
            let mut u = Poly::zero(n);
            u.add_term(Monomial::var(n, i), Q::one() / &alg.gram_diag()[i]);
            u
        })
        .collect();
    alg.det_poly().compose(&targets)
}

/// One-slot expression `sum_o P_o (det)^{p+o}`.
#[derive(Clone, Debug)]
pub(crate) struct SlotExpr {
    groups: BTreeMap<i32, Poly<ParamPoly>>,
}

impl SlotExpr {
    pub(crate) fn monomial(m: Monomial, offset: i32) -> Self {
        let n = m.nvars();
        let mut groups = BTreeMap::new();
        groups.insert(offset, Poly::from_terms(n, [(m, ParamPoly::one())]));
        SlotExpr { groups }
    }

    fn partial(&self, det: &Poly<ParamPoly>, slot: Slot, i: usize) -> SlotExpr {
        let mut groups: BTreeMap<i32, Poly<ParamPoly>> = BTreeMap::new();
        let ddet = det.partial(i);
        let mut push = |o: i32, p: Poly<ParamPoly>| {
            if p.is_zero() {
                return;
            }
            match groups.entry(o) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(p);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    e.get_mut().add_assign(&p);
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        };
        for (&o, p) in &self.groups {
            push(o, p.partial(i));
            push(o - 1, p.mul(&ddet).scale(&slot.shifted_param(o)));
        }
        SlotExpr { groups }
    }

    /// Single polynomial at offset `floor`, which must not exceed any offset present.
    pub(crate) fn collapse_to(&self, det_pows: &[Poly<ParamPoly>], floor: i32, n: usize) -> Poly<ParamPoly> {
        let mut acc = Poly::zero(n);
        for (&o, p) in &self.groups {
            let e = (o - floor) as usize;
            if e == 0 {
                acc.add_assign(p);
            } else {
                acc.add_assign(&p.mul(&det_pows[e]));
            }
        }
        acc
    }
}

/// All derivatives `d^alpha (m det^{p+offset})` for `alpha` in `wanted`,
/// memoized along `alpha = alpha' + e_i` chains.
pub(crate) fn slot_derivatives(
    det: &Poly<ParamPoly>,
    slot: Slot,
    base: &SlotExpr,
    wanted: &BTreeSet<Vec<u16>>,
) -> HashMap<Vec<u16>, SlotExpr> {
    let n = det.nvars();
    let mut all: BTreeSet<Vec<u16>> = BTreeSet::new();
    for w in wanted {
        let mut a = w.clone();
        loop {
            if !all.insert(a.clone()) {
                break;
            }
            match a.iter().position(|&e| e > 0) {
                Some(i) => a[i] -= 1,
                None => break,
            }
        }
    }
    let mut by_degree: BTreeMap<u32, Vec<Vec<u16>>> = BTreeMap::new();
    for a in all {
        by_degree.entry(a.iter().map(|&e| e as u32).sum()).or_default().push(a);
    }
    let mut memo: HashMap<Vec<u16>, SlotExpr> = HashMap::new();
    memo.insert(vec![0; n], base.clone());
    for (deg, list) in by_degree {
        if deg == 0 {
            continue;
        }
        let layer: Vec<(Vec<u16>, SlotExpr)> = list
            .par_iter()
            .map(|a| {
                let i = a.iter().position(|&e| e > 0).unwrap();
                let mut prev = a.clone();
                prev[i] -= 1;
                (a.clone(), memo[&prev].partial(det, slot, i))
            })
            .collect();
        memo.extend(layer);
    }
    memo
}

/// `D^k expr`, applied term by term using separability of each term into an
/// `x` factor and a `y` factor.
pub fn apply_d_power(expr: &SymExpr, k: u32, alg: &Algebra) -> SymExpr {
    if k == 0 {
        return expr.clone();
    }
    let n = alg.n;
    let op = d_operator(alg).pow(k);
    // alpha -> list of (beta, coefficient)
    let mut by_alpha: BTreeMap<Vec<u16>, Vec<(Vec<u16>, Q)>> = BTreeMap::new();
    for (m, c) in op.terms() {
        let (a, b) = m.split(n);
        by_alpha.entry(a.0).or_default().push((b.0, c.clone()));
    }
    let alphas: BTreeSet<Vec<u16>> = by_alpha.keys().cloned().collect();
    let betas: BTreeSet<Vec<u16>> = by_alpha.values().flatten().map(|(b, _)| b.clone()).collect();
    let det = alg.det_poly().map_coef(|c| ParamPoly::constant(c.clone()));
    let max_pow = (alg.r as u32 * k) as usize + 1;
    let mut det_pows = vec![Poly::constant(n, ParamPoly::one())];
    for i in 0..max_pow {
        let next = det_pows[i].mul(&det);
        det_pows.push(next);
    }

    let mut out = SymExpr::zero(n);
    for term in expr.terms() {
        let (mx, my) = term.mono.split(n);
        let xs = slot_derivatives(&det, Slot::X, &SlotExpr::monomial(mx, term.a), &alphas);
        let ys = slot_derivatives(&det, Slot::Y, &SlotExpr::monomial(my, term.b), &betas);
        let contributions: Vec<SymExpr> = by_alpha
            .par_iter()
            .map(|(alpha, betas)| {
                let da = alpha.iter().map(|&e| e as i32).sum::<i32>();
                let db = betas[0].0.iter().map(|&e| e as i32).sum::<i32>();
                let (ax, by) = (term.a - da, term.b - db);
                let px = xs[alpha].collapse_to(&det_pows, ax, n);
                let mut w = Poly::zero(n);
                for (beta, c) in betas {
                    w.add_assign(&ys[beta].collapse_to(&det_pows, by, n).scale_q(c));
                }
                let mut prod = Poly::zero(2 * n);
                for (m1, c1) in px.terms() {
                    for (m2, c2) in w.terms() {
                        prod.add_term(m1.concat(m2), c1 * c2);
                    }
                }
                let mut e = SymExpr::zero(n);
                e.add_group(ax, by, prod.scale(&term.coef));
                e
            })
            .collect();
        for c in contributions {
            out.add_assign(&c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{algebra, Family};
    use crate::scalar::qi;

    #[test]
    fn rank1_power_rule() {
        let a = algebra(Family::Rank1);
        let e = SymExpr::det_power(&a, 1, 0);
        let d = e.diff(&a, Slot::X, 0);
        let terms: Vec<SymTerm> = d.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].coef, ParamPoly::s_plus(1));
        assert_eq!((terms[0].a, terms[0].b), (0, 0));
        assert_eq!(terms[0].mono.degree(), 0);
    }

    #[test]
    fn sym2_gradient_of_det_is_adjugate() {
        let a = algebra(Family::Sym(2));
        // (det x)^{s+1} with s -> 0 flavour: check the coefficient of det^{s}
        let e = SymExpr::det_power(&a, 1, 0);
        let want = [(1usize, qi(1)), (0, qi(1)), (2, qi(-1))];
        for (i, (var, c)) in want.iter().enumerate() {
            let g = e.diff(&a, Slot::X, i);
            let p = &g.groups()[&(0, 0)];
            assert_eq!(p.len(), 1);
            let (m, coef) = p.terms().next().unwrap();
            assert_eq!(m, &Monomial::var(6, *var));
            assert_eq!(coef, &ParamPoly::s_plus(1).scale(c));
        }
    }

    #[test]
    fn zero_differentiates_to_zero() {
        let a = algebra(Family::Sym(2));
        for slot in [Slot::X, Slot::Y] {
            assert!(SymExpr::zero(3).diff(&a, slot, 2).is_zero());
        }
    }

    #[test]
    fn operator_expansions() {
        let a = algebra(Family::Sym(2));
        let mut want = Poly::zero(6);
        // (dx11 - dy11)(dx22 - dy22) - 1/4 (dx12 - dy12)^2
        let u = |i: usize| {
            let mut p = Poly::<Q>::zero(6);
            p.add_term(Monomial::var(6, i), qi(1));
            p.add_term(Monomial::var(6, 3 + i), qi(-1));
            p
        };
        want.add_assign(&u(0).mul(&u(1)));
        want.sub_assign(&u(2).mul(&u(2)).scale_q(&crate::scalar::q(1, 4)));
        assert_eq!(d_operator(&a), want);
        let spin = algebra(Family::Spin(3));
        let op = single_slot_operator(&spin);
        assert_eq!(op.coef(&Monomial(vec![2, 0, 0])), Some(&crate::scalar::q(1, 4)));
        assert_eq!(op.coef(&Monomial(vec![0, 2, 0])), Some(&crate::scalar::q(-1, 4)));
    }

    #[test]
    fn rank1_first_order() {
        let a = algebra(Family::Rank1);
        let d = apply_d_power(&SymExpr::det_power(&a, 1, 1), 1, &a);
        let mut want = SymExpr::zero(1);
        want.add_group(0, 1, Poly::constant(2, ParamPoly::s_plus(1)));
        want.add_group(1, 0, Poly::constant(2, -ParamPoly::t_plus(1)));
        assert_eq!(d, want);
        assert_eq!(apply_d_power(&d, 0, &a), d);
    }

    #[test]
    fn fast_path_matches_repeated_diff() {
        for f in [Family::Rank1, Family::Sym(2), Family::Spin(3)] {
            let a = algebra(f);
            let start = SymExpr::det_power(&a, 2, 2);
            let fast = apply_d_power(&start, 2, &a);
            let op = d_operator(&a).pow(2);
            let mut slow = SymExpr::zero(a.n);
            for (m, c) in op.terms() {
                let mut e = start.clone();
                for (var, &exp) in m.0.iter().enumerate() {
                    let (slot, i) = if var < a.n { (Slot::X, var) } else { (Slot::Y, var - a.n) };
                    for _ in 0..exp {
                        e = e.partial(&a, slot, i);
                    }
                }
                for p in e.groups.values_mut() {
                    *p = p.scale_q(c);
                }
                slow.add_assign(&e);
            }
            assert_eq!(fast.collapse(&a), slow.collapse(&a), "{f}");
        }
    }
}
