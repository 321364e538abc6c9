//! Classical Jacobi polynomials in exact arithmetic.

use num_traits::{One, Zero};

use crate::scalar::{qi, Q};
use crate::symbolic::{Monomial, Poly};

/// `P_k^{(alpha, beta)}` as a one-variable polynomial, from the three-term
/// recurrence.
pub fn jacobi_p(k: u32, alpha: &Q, beta: &Q) -> Poly<Q> {
    let one = Poly::constant(1, Q::one());
    let x = Poly::<Q>::var(1, 0);
    if k == 0 {
        return one;
    }
    let two = qi(2);
    // P1 = (alpha - beta)/2 + (alpha + beta + 2) x / 2
    let mut p1 = Poly::constant(1, (alpha - beta) / &two);
    p1.add_term(Monomial(vec![1]), (alpha + beta + &two) / &two);
    let (mut prev, mut cur) = (one, p1);
    for m in 2..=k {
        let n = qi(m as i64);
        let s = alpha + beta;
        let c2n = &two * &n + &s;
        let a = &two * &n * (&n + &s) * (&c2n - &two);
        let b1 = (&c2n - Q::one()) * &c2n * (&c2n - &two);
        let b0 = (&c2n - Q::one()) * (alpha * alpha - beta * beta);
        let c = &two * (&n + alpha - Q::one()) * (&n + beta - Q::one()) * &c2n;
        let mut next = cur.mul(&x).scale_q(&b1);
        next.add_assign(&cur.scale_q(&b0));
        next.sub_assign(&prev.scale_q(&c));
        let next = next.scale_q(&(Q::one() / a));
        prev = cur;
        cur = next;
    }
    cur
}

/// The rational `c` with `a = c * b`, if any.
pub fn proportionality(a: &Poly<Q>, b: &Poly<Q>) -> Option<Q> {
    let (mb, cb) = b.leading()?;
    let ca = a.coef(mb)?;
    let c = ca / cb;
    if c.is_zero() {
        return None;
    }
    (b.scale_q(&c) == *a).then_some(c)
}
