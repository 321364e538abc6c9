//! Reports for the analytic identities: Laplace transforms, the `L^2`
//! factorization, the adjoint image, the partial isometry and covariance.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use super::branch::{log_det_over_i, BranchedPower};
use super::bracket_op::{apply_symbol, bracket_symbol};
use super::group::{coherent_state, phi_nu, pi_action, GroupGenerator};
use super::holo::{CauchyOptions, HoloFunction};
use super::l2::{bump_profile, isometry_constant_rank1, phi_norms_rank1, varchange_sides, Bump, L2Method, PairBump};
use super::tube::{conj, im, in_tube, shift_ie};
use crate::bracket::compute_c;
use crate::error::{Error, Result};
use crate::jordan::{fd_jacobian_iota, jacobian_iota, Algebra, Family};
use crate::quadrature::{gamma_omega_closed, laplace_cone};
use crate::report::{rel_err, rel_err_c, CheckReport};
use crate::sampling;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Deterministic tube points with `Re z` in `0.8 ]-e,e[` and
/// `Im z = b^2 + 0.2 e + 0.3 e`.
pub fn sample_points(alg: &Algebra, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut g = sampling::rng(seed);
    (0..count)
        .map(|_| {
            let x = sampling::random_interval(alg, &mut g);
            let y = sampling::random_cone(alg, &mut g);
            x.iter()
                .zip(&y)
                .zip(alg.identity::<f64>())
                .map(|((a, b), e)| c(0.8 * a, b + 0.3 * e))
                .collect()
        })
        .collect()
}

/// Translation, a dilation `P(a^{1/2})` and the inversion.
pub fn standard_generators(alg: &Algebra) -> Vec<GroupGenerator> {
    let mut g = sampling::rng(0x6e6e);
    let u: Vec<f64> = (0..alg.n).map(|_| g.random_range(-0.8..0.8)).collect();
    let mut a = sampling::random_cone(alg, &mut g);
    for (ai, ei) in a.iter_mut().zip(alg.identity::<f64>()) {
        *ai += 0.5 * ei;
    }
    vec![GroupGenerator::Translation { u }, GroupGenerator::Dilation { a }, GroupGenerator::Inversion]
}

fn fmt_point(z: &[Complex64]) -> String {
    let parts: Vec<String> = z.iter().map(|v| format!("{:.3}{:+.3}i", v.re, v.im)).collect();
    format!("({})", parts.join(", "))
}

/// `L psi_nu = Gamma_Omega(nu) phi_nu`, `psi_nu(xi) = e^{-tr xi} det(xi)^{nu-n/r}`.
pub fn check_laplace_identity(alg: &Arc<Algebra>, nu: f64, points: &[Vec<Complex64>], nodes: usize, tol: f64) -> CheckReport {
    CheckReport::run(
        "laplace-identity",
        "int_Omega e^{i(z,xi)} e^{-tr xi} det(xi)^{nu-n/r} d xi = Gamma_Omega(nu) det((z+ie)/i)^{-nu}",
        &alg.name(),
        tol,
        |rep| {
            let g = gamma_omega_closed(alg, nu)?;
            let phi = phi_nu(alg, nu);
            let p = nu - alg.n as f64 / alg.r as f64;
            rep.measure("nu", nu);
            rep.measure("nodes", nodes);
            for z in points {
                let num = laplace_cone(alg, p, &shift_ie(alg, z), |_| c(1.0, 0.0), nodes)?;
                let want = phi.eval(z)? * g;
                rep.push(format!("z={}", fmt_point(z)), rel_err_c(num, want, 0.0));
            }
            Ok(())
        },
    )
}

/// Laplace transform of `Phi(psi_{lambda+mu+2k})` against
/// `Gamma_Omega(lambda+k) Gamma_Omega(mu+k) det(z1-z2)^k det((z1+ie)/i)^{-lambda-k} det((z2+ie)/i)^{-mu-k}`.
/// The unimodular ratio between the two is measured, rounded to a fourth
/// root of unity, and the residual taken after removing it.
pub fn check_adjoint_image(
    alg: &Arc<Algebra>,
    k: u32,
    lambda: f64,
    mu: f64,
    pairs: &[(Vec<Complex64>, Vec<Complex64>)],
    nodes: usize,
    tol: f64,
) -> CheckReport {
    CheckReport::run(
        "adjoint-image",
        "L_2 Phi(psi_{lambda+mu+2k})(z1, z2) = phase * Gamma_Omega(lambda+k) Gamma_Omega(mu+k) det(z1-z2)^k det((z1+ie)/i)^{-lambda-k} det((z2+ie)/i)^{-mu-k}",
        &alg.name(),
        tol,
        |rep| {
            let n = alg.n;
            let nr = n as f64 / alg.r as f64;
            let cpoly = compute_c(alg, k)?.specialize_f64(lambda - nr, mu - nr);
            let gk = gamma_omega_closed(alg, lambda + k as f64)? * gamma_omega_closed(alg, mu + k as f64)?;
            let rk = (alg.r as u32 * k) % 4;
            let irk = Complex64::i().powu(rk);
            let terms: Vec<(Vec<u16>, Vec<u16>, f64)> = cpoly
                .terms()
                .map(|(m, coef)| (m.0[..n].to_vec(), m.0[n..].to_vec(), *coef))
                .collect();
            let mut xs: Vec<Vec<u16>> = terms.iter().map(|t| t.0.clone()).collect();
            let mut ys: Vec<Vec<u16>> = terms.iter().map(|t| t.1.clone()).collect();
            xs.sort();
            xs.dedup();
            ys.sort();
            ys.dedup();
            let moments = |z: &[Complex64], p: f64, monos: &[Vec<u16>]| -> Result<Vec<Complex64>> {
                monos
                    .iter()
                    .map(|m| {
                        laplace_cone(
                            alg,
                            p,
                            &shift_ie(alg, z),
                            |xi| c(xi.iter().zip(m).map(|(v, e)| v.powi(*e as i32)).product(), 0.0),
                            nodes,
                        )
                    })
                    .collect()
            };
            let mut phase: Option<Complex64> = None;
            for (z1, z2) in pairs {
                let m1 = moments(z1, lambda - nr, &xs)?;
                let m2 = moments(z2, mu - nr, &ys)?;
                let mut num = c(0.0, 0.0);
                for (a, b, coef) in &terms {
                    let i = xs.binary_search(a).expect("collected");
                    let j = ys.binary_search(b).expect("collected");
                    num += m1[i] * m2[j] * *coef;
                }
                num *= irk;
                let d = alg.det(&alg.sub(z1, z2)).powu(k);
                let l1 = log_det_over_i(alg, &shift_ie(alg, z1))?;
                let l2 = log_det_over_i(alg, &shift_ie(alg, z2))?;
                let closed = d * gk * (-(l1 * (lambda + k as f64)) - l2 * (mu + k as f64)).exp();
                if closed.norm() < 1e-12 {
                    rep.push(format!("z1=z2={} vanishing", fmt_point(z1)), num.norm() / gk);
                    continue;
                }
                let ph = *phase.get_or_insert_with(|| {
                    let r = num / closed;
                    let q = (r.arg() / std::f64::consts::FRAC_PI_2).round();
                    Complex64::i().powi(q as i32)
                });
                rep.push(format!("z1={} z2={}", fmt_point(z1), fmt_point(z2)), rel_err_c(num, closed * ph, 0.0));
            }
            rep.measure("k", k);
            rep.measure("lambda", lambda);
            rep.measure("mu", mu);
            rep.measure("nodes", nodes);
            if let Some(p) = phase {
                rep.measure("measured_phase", format!("{:+.0}{:+.0}i", p.re, p.im));
            }
            Ok(())
        },
    )
}

/// Analytic Jacobian `2^{-n} det(z)^{n/r}` of `iota` against central differences.
pub fn check_iota_jacobian(alg: &Algebra, samples: usize, seed: u64, tol: f64) -> CheckReport {
    CheckReport::run(
        "iota-jacobian",
        "Jac(iota)(z, v) = 2^{-n} det(z)^{n/r}",
        &alg.name(),
        tol,
        |rep| {
            let mut g = sampling::rng(seed);
            for i in 0..samples {
                let z = sampling::random_cone(alg, &mut g);
                let v = sampling::random_interval(alg, &mut g);
                let fd = fd_jacobian_iota(alg, &z, &v, 1e-5)?;
                rep.push(format!("sample {i}"), rel_err(fd, jacobian_iota(alg, &z), 0.0));
            }
            Ok(())
        },
    )
}

/// Standard non-product bump pair on `Omega x Omega`.
pub fn standard_pair_bump(alg: &Algebra) -> Result<PairBump> {
    let (c1, c2, r) = match alg.family {
        Family::Rank1 => (vec![1.5], vec![2.0], (0.8, 1.0)),
        Family::Sym(2) => (vec![2.4, 2.5, 0.2], vec![2.5, 2.35, 0.1], (0.6, 0.6)),
        f => return Err(Error::Unsupported(format!("bump pair on {f}"))),
    };
    Ok(PairBump {
        first: Bump::new(alg, c1, r.0)?,
        second: Bump::new(alg, c2, r.1)?,
        kappa: 0.4,
    })
}

pub fn check_change_of_variables(alg: &Algebra, method: L2Method, tol: f64) -> CheckReport {
    CheckReport::run(
        "change-of-variables",
        "int int f(x, y) dx dy = 2^{-n} int int f(iota(z, v)) det(z)^{n/r} dz dv",
        &alg.name(),
        tol,
        |rep| {
            let f = standard_pair_bump(alg)?;
            let ((l, le), (r, re)) = varchange_sides(alg, &f, |_| c(1.0, 0.0), method)?;
            rep.measure("lhs", l.re);
            rep.measure("rhs", r.re);
            rep.measure("lhs_stderr", le);
            rep.measure("rhs_stderr", re);
            record_method(rep, method);
            rep.push("standard bump", rel_err_c(l, r, 0.0));
            Ok(())
        },
    )
}

fn record_method(rep: &mut CheckReport, method: L2Method) {
    match method {
        L2Method::Quadrature { points, panels } => {
            rep.measure("method", "composite-gauss-legendre");
            rep.measure("nodes", points * panels);
        }
        L2Method::MonteCarlo { samples, seed } => {
            rep.measure("method", "monte-carlo");
            rep.measure("samples", samples);
            rep.measure("seed", seed);
        }
    }
}

/// `res L_2 f (z) = L(J f)(z)`: the left side integrates `f(xi, zeta) e^{i(z, xi + zeta)}`
/// over `Omega x Omega`, the right side `J f(eta) e^{i(z, eta)}` through the chart.
pub fn check_j_factorization(alg: &Algebra, points: &[Vec<Complex64>], method: L2Method, tol: f64) -> CheckReport {
    CheckReport::run(
        "J-factorization",
        "res(L_2 f)(z) = L(J f)(z), J f(eta) = 2^{-n} det(eta)^{n/r} int f(iota(eta, v)) dv",
        &alg.name(),
        tol,
        |rep| {
            let f = standard_pair_bump(alg)?;
            record_method(rep, method);
            for z in points {
                let w = |eta: &[f64]| -> Complex64 {
                    let s: Complex64 = z.iter().zip(eta).zip(alg.gram_diag()).map(|((zi, e), g)| zi * (e * crate::scalar::q_to_f64(g))).sum();
                    (Complex64::i() * s).exp()
                };
                let ((l, le), (r, re)) = varchange_sides(alg, &f, w, method)?;
                rep.measure(&format!("stderr {}", fmt_point(z)), (le * le + re * re).sqrt() / l.norm());
                rep.push(format!("z={}", fmt_point(z)), rel_err_c(l, r, 0.0));
            }
            Ok(())
        },
    )
}

/// `||Phi h||^2_{lambda,mu} / ||h||^2_{lambda+mu+2k} = c(lambda, mu; k)` for
/// three bumps `h` (rank one).
pub fn check_partial_isometry(alg: &Algebra, k: u32, lambda: f64, mu: f64, tol: f64) -> CheckReport {
    CheckReport::run(
        "partial-isometry",
        "||Phi h||^2 = c(lambda, mu; k) ||h||^2_{lambda+mu+2k} with c(lambda, mu; k) = 2^{-r lambda - r mu + n} int |C(v)|^2 det(e-v)^{lambda-n/r} det(e+v)^{mu-n/r} dv",
        &alg.name(),
        tol,
        |rep| {
            if alg.family != Family::Rank1 {
                return Err(Error::Unsupported(format!("partial isometry check on {}", alg.family)));
            }
            let constant = isometry_constant_rank1(k, lambda, mu)?;
            rep.measure("c", constant);
            let bumps: [(f64, f64, f64); 3] = [(2.0, 0.9, 0.0), (1.5, 0.6, 0.7), (3.2, 1.5, -0.2)];
            let mut ratios = Vec::new();
            for (i, &(center, width, tilt)) in bumps.iter().enumerate() {
                let h = move |x: f64| bump_profile(((x - center) / width).powi(2)) * (1.0 + tilt * (x - center));
                let (phi, hn) = phi_norms_rank1(k, lambda, mu, h, center - width, center + width)?;
                let ratio = phi / hn;
                rep.push(format!("bump {i} vs c"), rel_err(ratio, constant, 0.0));
                ratios.push(ratio);
            }
            for i in 0..ratios.len() {
                for j in i + 1..ratios.len() {
                    rep.push(format!("bump {i} vs bump {j}"), rel_err(ratios[i], ratios[j], 0.0));
                }
            }
            let beta = gamma_omega_closed(alg, lambda)? * gamma_omega_closed(alg, mu)? / gamma_omega_closed(alg, lambda + mu)?;
            rep.push("c(lambda, mu; 0) vs Beta", rel_err(isometry_constant_rank1(0, lambda, mu)?, beta, 0.0));
            rep.measure("ratios", ratios);
            Ok(())
        },
    )
}

/// `exp(psi_g) = Det_C(Dg)` against the finite-difference complex Jacobian.
pub fn check_cocycles(alg: &Algebra, gens: &[GroupGenerator], points: &[Vec<Complex64>], tol: f64) -> CheckReport {
    CheckReport::run("cocycle-jacobian", "j(g, z) = Det_C(Dg(z))", &alg.name(), tol, |rep| {
        for g in gens {
            for z in points {
                let j = g.cocycle(alg, z)?;
                let fd = g.fd_jacobian_det(alg, z, 1e-5)?;
                rep.push(format!("{} z={}", g.label(), fmt_point(z)), rel_err_c(j, fd, 0.0));
            }
        }
        Ok(())
    })
}

/// Two admissible paths to the same point give the same logarithm.
pub fn check_branch_consistency(alg: &Algebra, points: &[Vec<Complex64>], tol: f64) -> CheckReport {
    CheckReport::run(
        "branch-consistency",
        "log det(z/i) is independent of the continuation path from ie",
        &alg.name(),
        tol,
        |rep| {
            let start: Vec<Complex64> = alg.identity::<f64>().iter().map(|e| c(0.0, *e)).collect();
            for z in points {
                let y = im(z);
                let detour: Vec<Complex64> = z.iter().zip(&y).map(|(zi, yi)| c(-2.0 * zi.re, 2.0 * yi)).collect();
                let a = BranchedPower::new(alg, z)?.log_det;
                let b = BranchedPower::along(alg, &[start.clone(), detour, z.clone()])?.log_det;
                rep.push(format!("z={}", fmt_point(z)), (a - b).norm());
            }
            Ok(())
        },
    )
}

/// `B(pi_lambda(g) k1 (x) pi_mu(g) k2) = pi_{lambda+mu+2k}(g) B(k1 (x) k2)` on
/// coherent states `k1 = k_lambda^{w1}`, `k2 = k_mu^{w2}`. Points where `g^{-1} z`
/// is within `0.1` of the boundary are skipped.
#[allow(clippy::too_many_arguments)]
pub fn check_covariance_b(
    alg: &Arc<Algebra>,
    k: u32,
    lambda: f64,
    mu: f64,
    gen: &GroupGenerator,
    ws: &[(Vec<Complex64>, Vec<Complex64>)],
    zs: &[Vec<Complex64>],
    tol: f64,
) -> CheckReport {
    CheckReport::run(
        &format!("covariance-{}", gen.label()),
        "B o (pi_lambda(g) (x) pi_mu(g)) = pi_{lambda+mu+2k}(g) o B",
        &alg.name(),
        tol,
        |rep| {
            let symbol = bracket_symbol(alg, k, lambda, mu)?;
            let opts = CauchyOptions::default();
            let e = alg.r as f64 * (lambda + mu + 2.0 * k as f64) / (2.0 * alg.n as f64);
            let mut skipped = 0;
            for (w1, w2) in ws {
                let k1 = coherent_state(alg, lambda, w1);
                let k2 = coherent_state(alg, mu, w2);
                let plain = HoloFunction::tensor(&k1, &k2);
                let moved = HoloFunction::tensor(&pi_action(alg, gen, lambda, &k1), &pi_action(alg, gen, mu, &k2));
                for z in zs {
                    let zi = gen.apply_inverse(alg, z)?;
                    if !in_tube(alg, &zi) || alg.min_eigenvalue(&im(&zi)) <= 0.1 {
                        skipped += 1;
                        continue;
                    }
                    let lhs = apply_symbol(alg, &symbol, &moved, z, &opts)?;
                    let rhs = (gen.psi_inverse(alg, z)? * e).exp() * apply_symbol(alg, &symbol, &plain, &zi, &opts)?;
                    rep.push(format!("k={k} z={}", fmt_point(z)), rel_err_c(lhs, rhs, 0.0));
                }
            }
            rep.measure("k", k);
            rep.measure("lambda", lambda);
            rep.measure("mu", mu);
            rep.measure("skipped_points", skipped);
            Ok(())
        },
    )
}

/// `det(g z - conj(g w)) = j(g, z)^{r/2n} det(z - conj w) conj(j(g, w))^{r/2n}`.
/// The residual with the exponent `1/2` is recorded for comparison; the two
/// agree in rank one.
pub fn check_hua_cocycle(alg: &Algebra, gen: &GroupGenerator, pairs: &[(Vec<Complex64>, Vec<Complex64>)], tol: f64) -> CheckReport {
    CheckReport::run(
        &format!("hua-cocycle-{}", gen.label()),
        "det(g(z) - conj(g(w))) = j(g,z)^{r/2n} det(z - conj(w)) conj(j(g,w))^{r/2n}",
        &alg.name(),
        tol,
        |rep| {
            let e = alg.r as f64 / (2.0 * alg.n as f64);
            let mut half_worst = 0.0f64;
            for (z, w) in pairs {
                let lhs = alg.det(&alg.sub(&gen.apply(alg, z)?, &conj(&gen.apply(alg, w)?)));
                let base = alg.det(&alg.sub(z, &conj(w)));
                let (pz, pw) = (gen.psi(alg, z)?, gen.psi(alg, w)?);
                let rhs = (pz * e).exp() * base * (pw * e).exp().conj();
                let half = (pz * 0.5).exp() * base * (pw * 0.5).exp().conj();
                half_worst = half_worst.max(rel_err_c(lhs, half, 0.0));
                rep.push(format!("z={} w={}", fmt_point(z), fmt_point(w)), rel_err_c(lhs, rhs, 0.0));
            }
            rep.measure("exponent", e);
            rep.measure("residual_with_exponent_one_half", half_worst);
            Ok(())
        },
    )
}

/// `pi_nu(g) k_nu^w = exp(r nu conj(psi_g(w)) / 2n) k_nu^{g(w)}` pointwise.
pub fn check_coherent_transform(
    alg: &Arc<Algebra>,
    nu: f64,
    gen: &GroupGenerator,
    ws: &[Vec<Complex64>],
    zs: &[Vec<Complex64>],
    tol: f64,
) -> CheckReport {
    CheckReport::run(
        &format!("coherent-transform-{}", gen.label()),
        "pi_nu(g) k_nu^w = exp(r nu conj(psi_g(w)) / 2n) k_nu^{g(w)}",
        &alg.name(),
        tol,
        |rep| {
            let e = alg.r as f64 * nu / (2.0 * alg.n as f64);
            for w in ws {
                let lhs_f = pi_action(alg, gen, nu, &coherent_state(alg, nu, w));
                let rhs_f = coherent_state(alg, nu, &gen.apply(alg, w)?);
                let factor = (gen.psi(alg, w)?.conj() * e).exp();
                for z in zs {
                    let lhs = lhs_f.eval(z)?;
                    let rhs = rhs_f.eval(z)? * factor;
                    rep.push(format!("w={} z={}", fmt_point(w), fmt_point(z)), rel_err_c(lhs, rhs, 0.0));
                }
            }
            rep.measure("nu", nu);
            Ok(())
        },
    )
}
