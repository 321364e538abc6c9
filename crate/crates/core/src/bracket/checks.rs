//! Exact and numeric identities of `c^{(k)}` and `C^{(k)}`.

use num_traits::{One, Zero};
use rand::Rng;

use super::{compute_C, compute_c, jacobi_p, proportionality};
use crate::jordan::{algebra, iota, Algebra, Family, StructureMap};
use crate::report::CheckReport;
use crate::sampling::{random_cone, random_interval, random_rational, random_rational_cone, rng};
use crate::scalar::{format_q, q, q_to_f64, qi, Q};
use crate::symbolic::{BracketPolynomial, Poly};

/// `D^k` output divides exactly and every monomial has degree `rk`.
pub fn check_polynomiality(alg: &Algebra, k: u32) -> CheckReport {
    CheckReport::run(
        "polynomiality",
        "D^k (det x)^{s+k} (det y)^{t+k} = (det x)^s (det y)^t c_k(x, y) with c_k polynomial, homogeneous of degree rk",
        &alg.name(),
        0.0,
        |rep| {
            let c = compute_c(alg, k)?;
            rep.push(format!("k={k} homogeneous"), if c.is_homogeneous() { 0.0 } else { 1.0 });
            rep.push(
                format!("k={k} exchange symmetry"),
                if c.has_exchange_symmetry() { 0.0 } else { 1.0 },
            );
            rep.measure(&format!("terms_k{k}"), c.poly.len());
            Ok(())
        },
    )
}

/// Random rational structure-group element: a product of one or two `P(a)`
/// and a rational scalar.
fn random_structure_map(alg: &Algebra, g: &mut rand_chacha::ChaCha8Rng) -> StructureMap<Q> {
    let alg_arc = algebra(alg.family);
    let mut l = StructureMap::quad(alg_arc.clone(), &random_rational_cone(alg, g));
    if g.random_bool(0.5) {
        l = l.compose(&StructureMap::quad(alg_arc.clone(), &random_rational_cone(alg, g)));
    }
    l.compose(&StructureMap::scalar(alg_arc, q(g.random_range(1..5), g.random_range(1..4))))
}

fn random_param(g: &mut rand_chacha::ChaCha8Rng) -> Q {
    q(g.random_range(-12..13), g.random_range(1..5))
}

/// `c(lx, ly) = chi(l)^k c(x, y)` in exact arithmetic.
pub fn check_chi_covariance(alg: &Algebra, k: u32, samples: usize, seed: u64) -> CheckReport {
    CheckReport::run(
        "chi-covariance",
        "c_k(l x, l y) = chi(l)^k c_k(x, y) for l in the structure group",
        &alg.name(),
        0.0,
        |rep| {
            let c = compute_c(alg, k)?;
            let mut g = rng(seed);
            for i in 0..samples {
                let l = match i {
                    0 => StructureMap::identity(algebra(alg.family)),
                    1 => StructureMap::scalar(algebra(alg.family), q(3, 2)),
                    _ => random_structure_map(alg, &mut g),
                };
                let x = random_rational(alg.n, &mut g);
                let y = random_rational(alg.n, &mut g);
                let (s, t) = (random_param(&mut g), random_param(&mut g));
                let lhs = c.evaluate(&l.apply(&x), &l.apply(&y), &s, &t);
                let mut rhs = c.evaluate(&x, &y, &s, &t);
                let chi = l.chi();
                for _ in 0..k {
                    rhs *= &chi;
                }
                let diff = &lhs - &rhs;
                let res = if diff.is_zero() { 0.0 } else { q_to_f64(&diff).abs().max(f64::MIN_POSITIVE) };
                rep.push(format!("k={k} sample {i}"), res);
            }
            Ok(())
        },
    )
}

/// `sum |coef| |monomial|`: a bound on the magnitude of any partial sum,
/// used as the scale for relative residuals.
fn abs_scale(c: &Poly<f64>, point: &[f64]) -> f64 {
    c.terms()
        .map(|(m, v)| {
            v.abs()
                * m.0
                    .iter()
                    .zip(point)
                    .map(|(&e, x)| x.abs().powi(e as i32))
                    .product::<f64>()
        })
        .sum()
}

pub const IOTA_PARAMS: [(i64, i64, i64, i64); 3] = [(0, 1, 0, 1), (1, 2, 2, 1), (3, 1, 5, 4)];

/// `c_{lambda,mu}(iota(eta, v)) = (det eta)^k C_{lambda,mu}(v)`
pub fn check_iota_factorization(alg: &Algebra, k: u32, samples: usize, seed: u64) -> CheckReport {
    CheckReport::run(
        "iota-factorization",
        "c_k(iota(eta, v)) = (det eta)^k C_k(v)",
        &alg.name(),
        1e-10,
        |rep| {
            let c = compute_c(alg, k)?;
            let mut g = rng(seed);
            for &(ln, ld, mn, md) in &IOTA_PARAMS {
                let (l, m) = (q(ln, ld), q(mn, md));
                let big = super::substitute(alg, &c, &l, &m);
                let cf = c.specialize_f64(q_to_f64(&l), q_to_f64(&m));
                let bigf = big.poly.map_coef(q_to_f64);
                for i in 0..samples {
                    let (eta, v) = if i == 0 {
                        (alg.identity::<f64>(), random_interval(alg, &mut g))
                    } else {
                        (random_cone(alg, &mut g), random_interval(alg, &mut g))
                    };
                    let (x, y) = iota(alg, &eta, &v)?;
                    let xy: Vec<f64> = x.iter().chain(&y).copied().collect();
                    let lhs = cf.eval_with(&xy, |c| *c);
                    let rhs = alg.det(&eta).powi(k as i32) * bigf.eval_with(&v, |c| *c);
                    let scale = abs_scale(&cf, &xy).max(1e-300);
                    rep.push(
                        format!("k={k} lambda={} mu={} sample {i}", format_q(&l), format_q(&m)),
                        (lhs - rhs).abs() / scale,
                    );
                }
            }
            Ok(())
        },
    )
}

/// `C(g v) = C(v)` for automorphisms `g` (conjugation by orthogonal matrices
/// on `Sym(r)`, rotations of `xbar` on spin factors).
pub fn check_aut_invariance(alg: &Algebra, k: u32, samples: usize, seed: u64) -> CheckReport {
    CheckReport::run(
        "aut-invariance",
        "C_k(g v) = C_k(v) for g in Aut(V)",
        &alg.name(),
        1e-10,
        |rep| {
            let (l, m) = (q(3, 2), qi(2));
            let big = compute_C(alg, k, &l, &m)?;
            let bigf = big.poly.map_coef(q_to_f64);
            let mut g = rng(seed);
            let alg_arc = algebra(alg.family);
            for i in 0..samples {
                let map = match alg.family {
                    Family::Rank1 => StructureMap::identity(alg_arc.clone()),
                    Family::Sym(r) => {
                        let o = StructureMap::random_orthogonal(r as usize, &mut g);
                        StructureMap::sym_conjugation(alg_arc.clone(), &o)?
                    }
                    Family::Spin(_) => {
                        let o = StructureMap::random_orthogonal(alg.n - 1, &mut g);
                        StructureMap::spin_rotation(alg_arc.clone(), &o)?
                    }
                };
                let v = random_interval(alg, &mut g);
                let lhs = bigf.eval_with(&map.apply(&v), |c| *c);
                let rhs = bigf.eval_with(&v, |c| *c);
                let scale = abs_scale(&bigf, &v).max(1e-300);
                rep.push(format!("k={k} sample {i}"), (lhs - rhs).abs() / scale);
            }
            Ok(())
        },
    )
}

pub const JACOBI_PARAMS: [(i64, i64); 3] = [(0, 0), (1, 2), (3, 3)];

/// Rank one: `C^{(k)}_{lambda,mu} = const * P_k^{(lambda,mu)}` exactly; the
/// constants are recorded.
pub fn check_jacobi_reduction(k_max: u32) -> CheckReport {
    let alg = algebra(Family::Rank1);
    CheckReport::run(
        "jacobi-reduction",
        "rank one: C_k(lambda, mu) is a rational multiple of the Jacobi polynomial P_k^(lambda, mu)",
        "rank1",
        0.0,
        |rep| {
            for &(l, m) in &JACOBI_PARAMS {
                let (l, m) = (qi(l), qi(m));
                for k in 0..=k_max {
                    let big = compute_C(&alg, k, &l, &m)?;
                    let jp = jacobi_p(k, &l, &m);
                    let label = format!("k={k} lambda={} mu={}", format_q(&l), format_q(&m));
                    match proportionality(&big.poly, &jp) {
                        Some(c) => {
                            rep.measure(&format!("const {label}"), format_q(&c));
                            rep.push(label, 0.0);
                        }
                        None => rep.push(label, 1.0),
                    }
                }
            }
            Ok(())
        },
    )
}

/// The constant `c` with `C_k = c P_k` on rank one, or `None`.
pub fn jacobi_constant(k: u32, lambda: &Q, mu: &Q) -> Option<Q> {
    let alg = algebra(Family::Rank1);
    let big = compute_C(&alg, k, lambda, mu).ok()?;
    proportionality(&big.poly, &jacobi_p(k, lambda, mu))
}

/// Independent oracle used in tests: the classical closed form
/// `c_k(x, y) = sum_j (-1)^j binom(k, j) (s+k)_{(k-j)} (t+k)_{(j)} x^j y^{k-j}`
/// on rank one, where `(a)_{(m)}` is the falling factorial.
pub fn rank1_closed_form(k: u32, s: &Q, t: &Q, x: &Q, y: &Q) -> Q {
    let falling = |a: &Q, m: u32| (0..m).fold(Q::one(), |acc, i| acc * (a - qi(i as i64)));
    let mut binom = Q::one();
    let mut out = Q::zero();
    for j in 0..=k {
        if j > 0 {
            binom = binom * qi((k - j + 1) as i64) / qi(j as i64);
        }
        let sign = if j % 2 == 0 { Q::one() } else { -Q::one() };
        let sk = s + qi(k as i64);
        let tk = t + qi(k as i64);
        let mut term = sign * &binom * falling(&sk, k - j) * falling(&tk, j);
        for _ in 0..j {
            term *= x;
        }
        for _ in 0..k - j {
            term *= y;
        }
        out += term;
    }
    out
}

/// Exact comparison against [`rank1_closed_form`] at a few rational points.
pub fn rank1_matches_closed_form(c: &BracketPolynomial) -> bool {
    let pts = [(q(1, 2), q(3, 1), q(-2, 3), q(5, 7)), (qi(2), qi(-1), q(7, 3), q(1, 9))];
    pts.iter().all(|(s, t, x, y)| {
        c.evaluate(std::slice::from_ref(x), std::slice::from_ref(y), s, t) == rank1_closed_form(c.k, s, t, x, y)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank1_rodrigues_matches_leibniz_oracle() {
        let a = algebra(Family::Rank1);
        for k in 0..=6 {
            assert!(rank1_matches_closed_form(&compute_c(&a, k).unwrap()), "k={k}");
        }
    }

    #[test]
    fn small_checks_pass() {
        for f in [Family::Rank1, Family::Sym(2), Family::Spin(4)] {
            let a = algebra(f);
            for k in 1..=2 {
                for rep in [
                    check_polynomiality(&a, k),
                    check_chi_covariance(&a, k, 10, 1),
                    check_iota_factorization(&a, k, 5, 2),
                    check_aut_invariance(&a, k, 5, 3),
                ] {
                    assert!(rep.passed, "{}", serde_json::to_string_pretty(&rep).unwrap());
                }
            }
        }
    }

    #[test]
    fn sym2_fixed_map_covariance() {
        let a = algebra(Family::Sym(2));
        let l = StructureMap::quad(algebra(a.family), &[qi(2), qi(3), qi(0)]);
        for k in 1..=2 {
            let c = compute_c(&a, k).unwrap();
            let x = vec![q(1, 2), qi(3), q(-1, 5)];
            let y = vec![qi(2), q(2, 3), qi(1)];
            let (s, t) = (q(7, 4), q(-1, 3));
            let lhs = c.evaluate(&l.apply(&x), &l.apply(&y), &s, &t);
            let rhs = c.evaluate(&x, &y, &s, &t) * qi(36).pow(k as i32);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jacobi_reduction_and_k1_oracle() {
        let rep = check_jacobi_reduction(6);
        assert!(rep.passed, "{:?}", rep);
        // C_1 equals P_1 itself
        assert_eq!(jacobi_constant(1, &qi(1), &qi(2)), Some(Q::one()));
    }

    #[test]
    fn iota_v0_rank1_example() {
        let a = algebra(Family::Rank1);
        let (l, m) = (3.0, 1.0);
        let eta = 2.5;
        let (x, y) = iota(&a, &[eta], &[0.0]).unwrap();
        let c = compute_c(&a, 1).unwrap();
        let lhs = c.evaluate(&x, &y, &l, &m);
        assert!((lhs - eta * (l - m) / 2.0).abs() < 1e-14);
    }
}
