//! The `L^2` model: bump functions on the cone, the chart `iota`, the operator
//! `J`, and the multiplication operator `Phi`.
//!
//! Rank one uses tensor composite Gauss–Legendre; higher rank uses seeded
//! Monte Carlo over trace-norm balls. Chunked seeding keeps parallel sums
//! deterministic.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jordan::{iota, Algebra, Family};
use crate::quadrature::gauss::{composite_legendre, gauss_jacobi, gauss_legendre, pairwise_sum, pairwise_sum_c};
use crate::sampling;

/// `phi(s) = exp(1 - 1/(1-s))` for `s < 1`, else 0.
pub fn bump_profile(s: f64) -> f64 {
    if s < 1.0 {
        (1.0 - 1.0 / (1.0 - s)).exp()
    } else {
        0.0
    }
}

/// Smooth bump on `Omega`, supported in the trace-norm ball `B(center, radius)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bump {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Bump {
    pub fn new(alg: &Algebra, center: Vec<f64>, radius: f64) -> Result<Self> {
        alg.check_len(&center)?;
        if alg.min_eigenvalue(&center) <= radius {
            return Err(Error::NotInCone);
        }
        Ok(Bump { center, radius })
    }

    pub fn scaled_dist2(&self, alg: &Algebra, x: &[f64]) -> f64 {
        let d = alg.sub(x, &self.center);
        alg.inner(&d, &d) / (self.radius * self.radius)
    }

    pub fn eval(&self, alg: &Algebra, x: &[f64]) -> f64 {
        bump_profile(self.scaled_dist2(alg, x))
    }
}

/// `f(xi, zeta) = phi(s_1 + s_2 + kappa t)` with `s_i` the scaled squared
/// distances to the two centers and `t` the scaled cross inner product; not
/// a product when `kappa != 0`. Support lies in the balls of radius
/// `radius_i / sqrt(1 - |kappa|/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairBump {
    pub first: Bump,
    pub second: Bump,
    pub kappa: f64,
}

impl PairBump {
    pub fn eval(&self, alg: &Algebra, xi: &[f64], zeta: &[f64]) -> f64 {
        let d1 = alg.sub(xi, &self.first.center);
        let d2 = alg.sub(zeta, &self.second.center);
        let (r1, r2) = (self.first.radius, self.second.radius);
        let s = alg.inner(&d1, &d1) / (r1 * r1) + alg.inner(&d2, &d2) / (r2 * r2) + self.kappa * alg.inner(&d1, &d2) / (r1 * r2);
        bump_profile(s)
    }

    pub fn support_scale(&self) -> f64 {
        1.0 / (1.0 - self.kappa.abs() / 2.0).sqrt()
    }
}

/// Volume (trace-form Lebesgue measure) of the unit ball in dimension `n`.
fn unit_ball_volume(n: usize) -> f64 {
    let nf = n as f64;
    std::f64::consts::PI.powf(nf / 2.0) / statrs::function::gamma::gamma(nf / 2.0 + 1.0)
}

/// Uniform sample of the trace-norm ball: rejection from the cube in an
/// orthonormal basis.
fn sample_ball(alg: &Algebra, center: &[f64], radius: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let scale: Vec<f64> = alg.gram_diag().iter().map(|g| 1.0 / crate::scalar::q_to_f64(g).sqrt()).collect();
    loop {
        let u: Vec<f64> = (0..alg.n).map(|_| rng.random_range(-1.0..1.0)).collect();
        if u.iter().map(|x| x * x).sum::<f64>() < 1.0 {
            return center.iter().zip(&u).zip(&scale).map(|((c, x), s)| c + radius * x * s).collect();
        }
    }
}

/// Chunked Monte Carlo mean and standard error of a complex estimator.
fn mc_mean(samples: usize, seed: u64, est: impl Fn(&mut ChaCha8Rng) -> Complex64 + Sync) -> (Complex64, f64) {
    const CHUNK: usize = 1 << 15;
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<(Complex64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = sampling::rng(seed ^ (c as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let len = CHUNK.min(samples - c * CHUNK);
            let vals: Vec<Complex64> = (0..len).map(|_| est(&mut rng)).collect();
            let sq: Vec<f64> = vals.iter().map(|v| v.norm_sqr()).collect();
            (pairwise_sum_c(&vals), pairwise_sum(&sq))
        })
        .collect();
    let sum: Complex64 = parts.iter().map(|p| p.0).sum();
    let sumsq: f64 = pairwise_sum(&parts.iter().map(|p| p.1).collect::<Vec<_>>());
    let nf = samples as f64;
    let mean = sum / nf;
    let var = (sumsq / nf - mean.norm_sqr()).max(0.0);
    (mean, (var / nf).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum L2Method {
    /// rank one only: composite Gauss–Legendre, `points` per panel
    Quadrature { points: usize, panels: usize },
    MonteCarlo { samples: usize, seed: u64 },
}

impl L2Method {
    pub fn default_for(alg: &Algebra) -> Self {
        match alg.family {
            Family::Rank1 => L2Method::Quadrature { points: 10, panels: 40 },
            _ => L2Method::MonteCarlo {
                samples: 2_000_000,
                seed: sampling::DEFAULT_SEED,
            },
        }
    }
}

/// Both sides of the change of variables through `iota`, integrand
/// `f(xi, zeta) w(xi + zeta)`:
/// `(int int f w, 2^{-n} int int f(iota(eta, v)) det(eta)^{n/r} w(eta))`
/// with Monte Carlo standard errors (zero for quadrature).
pub fn varchange_sides(
    alg: &Algebra,
    f: &PairBump,
    w: impl Fn(&[f64]) -> Complex64 + Sync,
    method: L2Method,
) -> Result<((Complex64, f64), (Complex64, f64))> {
    let scale = f.support_scale();
    let (r1, r2) = (f.first.radius * scale, f.second.radius * scale);
    let (c1, c2) = (&f.first.center, &f.second.center);
    if alg.min_eigenvalue(c1) <= r1 || alg.min_eigenvalue(c2) <= r2 {
        return Err(Error::NotInCone);
    }
    let nr = alg.n as f64 / alg.r as f64;
    let pre = 2f64.powf(-(alg.n as f64));
    let rhs_integrand = |eta: &[f64], v: &[f64]| -> Complex64 {
        match iota(alg, eta, v) {
            Ok((xi, zeta)) => w(eta) * (f.eval(alg, &xi, &zeta) * pre * alg.det(eta).powf(nr)),
            Err(_) => Complex64::new(0.0, 0.0),
        }
    };
    match method {
        L2Method::Quadrature { points, panels } => {
            if alg.family != Family::Rank1 {
                return Err(Error::Unsupported(format!("tensor quadrature on {}", alg.family)));
            }
            let (xi_n, xi_w) = composite_legendre(points, panels, c1[0] - r1, c1[0] + r1)?;
            let (ze_n, ze_w) = composite_legendre(points, panels, c2[0] - r2, c2[0] + r2)?;
            let lhs: Vec<Complex64> = xi_n
                .par_iter()
                .zip(&xi_w)
                .map(|(x, wx)| {
                    let row: Vec<Complex64> = ze_n
                        .iter()
                        .zip(&ze_w)
                        .map(|(y, wy)| w(&[x + y]) * (f.eval(alg, &[*x], &[*y]) * wx * wy))
                        .collect();
                    pairwise_sum_c(&row)
                })
                .collect();
            let (xlo, xhi, ylo, yhi) = (c1[0] - r1, c1[0] + r1, c2[0] - r2, c2[0] + r2);
            let vlo = ((ylo - xhi) / (ylo + xhi)).max(-1.0);
            let vhi = ((yhi - xlo) / (yhi + xlo)).min(1.0);
            let (eta_n, eta_w) = composite_legendre(points, panels, xlo + ylo, xhi + yhi)?;
            let (v_n, v_w) = composite_legendre(points, panels, vlo, vhi)?;
            let rhs: Vec<Complex64> = eta_n
                .par_iter()
                .zip(&eta_w)
                .map(|(e, we)| {
                    let row: Vec<Complex64> = v_n
                        .iter()
                        .zip(&v_w)
                        .map(|(v, wv)| rhs_integrand(&[*e], &[*v]) * (we * wv))
                        .collect();
                    pairwise_sum_c(&row)
                })
                .collect();
            Ok(((pairwise_sum_c(&lhs), 0.0), (pairwise_sum_c(&rhs), 0.0)))
        }
        L2Method::MonteCarlo { samples, seed } => {
            let vol = unit_ball_volume(alg.n);
            let (v1, v2) = (vol * r1.powi(alg.n as i32), vol * r2.powi(alg.n as i32));
            let lhs = mc_mean(samples, seed, |rng| {
                let xi = sample_ball(alg, c1, r1, rng);
                let zeta = sample_ball(alg, c2, r2, rng);
                w(&alg.add(&xi, &zeta)) * (f.eval(alg, &xi, &zeta) * v1 * v2)
            });
            let ceta = alg.add(c1, c2);
            let reta = r1 + r2;
            if alg.min_eigenvalue(&ceta) <= reta {
                return Err(Error::NotInCone);
            }
            // Given eta, v = P(eta^{-1/2})(zeta - xi) with zeta - xi in B(c2 - c1, r1 + r2),
            // so the v-support lies in a ball of radius (r1 + r2) / lambda_min(eta).
            let diff = alg.sub(c2, c1);
            let ve = vol * reta.powi(alg.n as i32);
            let rhs = mc_mean(samples, seed.wrapping_add(1), |rng| {
                let eta = sample_ball(alg, &ceta, reta, rng);
                let (Ok(isq), lmin) = (alg.inv_sqrt(&eta), alg.min_eigenvalue(&eta)) else {
                    return Complex64::new(0.0, 0.0);
                };
                let rv = reta / lmin;
                let v = sample_ball(alg, &alg.quad(&isq, &diff), rv, rng);
                rhs_integrand(&eta, &v) * (ve * vol * rv.powi(alg.n as i32))
            });
            Ok((lhs, rhs))
        }
    }
}

/// `J f(eta) = 2^{-n} det(eta)^{n/r} int_{]-e,e[} f(iota(eta, v)) dv`, rank one.
pub fn j_transform_rank1(f: impl Fn(f64, f64) -> f64, eta: f64, points: usize) -> Result<f64> {
    let gl = gauss_legendre(points)?;
    Ok(0.5 * eta * gl.integrate(|v| f(0.5 * eta * (1.0 - v), 0.5 * eta * (1.0 + v))))
}

/// `c(lambda, mu; k) = 2^{-r lambda - r mu + n} int |C_{lambda-n/r, mu-n/r}(v)|^2 det(e-v)^{lambda-n/r} det(e+v)^{mu-n/r} dv`
/// in rank one, by Gauss–Jacobi.
pub fn isometry_constant_rank1(k: u32, lambda: f64, mu: f64) -> Result<f64> {
    let alg = crate::jordan::algebra(Family::Rank1);
    let (lp, mp) = (lambda - 1.0, mu - 1.0);
    let cpoly = crate::bracket::compute_C(&alg, k, &q_from_f64(lp)?, &q_from_f64(mp)?)?;
    let pf = cpoly.poly.map_coef(crate::scalar::q_to_f64);
    let rule = gauss_jacobi(k as usize + 4, lp, mp)?;
    let integral = rule.integrate(|v| {
        let c = pf.eval_with(&[v], |c| *c);
        c * c
    });
    Ok(2f64.powf(-lambda - mu + 1.0) * integral)
}

pub fn q_from_f64(v: f64) -> Result<crate::scalar::Q> {
    num_rational::BigRational::from_float(v).ok_or_else(|| Error::Parse(format!("non-finite parameter {v}")))
}

/// Rank one `Phi h(xi, zeta)` without the unimodular factor `i^{rk}`.
pub fn phi_rank1(c: &crate::symbolic::BracketPolynomial, k: u32, lambda: f64, mu: f64, h: impl Fn(f64) -> f64, xi: f64, zeta: f64) -> f64 {
    let (s, t) = (lambda - 1.0, mu - 1.0);
    let cval = c.evaluate(&[xi], &[zeta], &s, &t);
    xi.powf(s) * zeta.powf(t) * (xi + zeta).powf(-lambda - mu - 2.0 * k as f64 + 1.0) * cval * h(xi + zeta)
}

/// `(||Phi h||^2_{lambda,mu}, ||h||^2_{lambda+mu+2k})` in rank one for `h`
/// supported in `[lo, hi]`. The double integral is taken in the sheared
/// coordinates `(xi, sigma = xi + zeta)`.
pub fn phi_norms_rank1(k: u32, lambda: f64, mu: f64, h: impl Fn(f64) -> f64 + Sync, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let alg = crate::jordan::algebra(Family::Rank1);
    let c = crate::bracket::compute_c(&alg, k)?;
    let (sig_n, sig_w) = composite_legendre(10, 40, lo, hi)?;
    let (s, t) = (lambda - 1.0, mu - 1.0);
    // xi = sigma (1+u)/2: the factor xi^s zeta^t of |Phi h|^2 xi^{-s} zeta^{-t} sits in the Jacobi weight.
    let inner = gauss_jacobi(24 + 2 * k as usize, t, s)?;
    let nu = lambda + mu + 2.0 * k as f64;
    let rows: Vec<f64> = sig_n
        .par_iter()
        .zip(&sig_w)
        .map(|(sigma, ws)| {
            let half = 0.5 * sigma;
            let outer = half.powf(s + t + 1.0) * (sigma.powf(1.0 - nu) * h(*sigma)).powi(2);
            let vals: Vec<f64> = inner
                .nodes
                .iter()
                .zip(&inner.weights)
                .map(|(u, w)| {
                    let cval = c.evaluate(&[half * (1.0 + u)], &[half * (1.0 - u)], &s, &t);
                    w * cval * cval
                })
                .collect();
            ws * outer * pairwise_sum(&vals)
        })
        .collect();
    let hn: Vec<f64> = sig_n.iter().zip(&sig_w).map(|(e, w)| w * h(*e).powi(2) * e.powf(1.0 - nu)).collect();
    Ok((pairwise_sum(&rows), pairwise_sum(&hn)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::algebra;

    #[test]
    fn rank1_change_of_variables() {
        let a = algebra(Family::Rank1);
        let f = PairBump {
            first: Bump::new(&a, vec![1.5], 0.8).unwrap(),
            second: Bump::new(&a, vec![2.0], 1.0).unwrap(),
            kappa: 0.4,
        };
        let ((l, _), (r, _)) = varchange_sides(&a, &f, |_| Complex64::new(1.0, 0.0), L2Method::default_for(&a)).unwrap();
        assert!((l - r).norm() < 1e-9 * l.norm(), "{l} {r}");
    }

    #[test]
    fn k0_isometry_constant_is_beta() {
        let (l, m) = (3.0, 2.5);
        let b = statrs::function::beta::beta(l, m);
        assert!((isometry_constant_rank1(0, l, m).unwrap() - b).abs() < 1e-13 * b);
    }

    #[test]
    fn norm_ratio_is_scale_free() {
        let h = |x: f64| bump_profile(((x - 2.0) / 0.9).powi(2));
        let (p1, n1) = phi_norms_rank1(1, 3.0, 3.0, h, 1.1, 2.9).unwrap();
        let (p2, n2) = phi_norms_rank1(1, 3.0, 3.0, |x| 2.0 * h(x), 1.1, 2.9).unwrap();
        assert!((p2 - 4.0 * p1).abs() < 1e-12 * p2 && (n2 - 4.0 * n1).abs() < 1e-12 * n2);
        let c = isometry_constant_rank1(1, 3.0, 3.0).unwrap();
        assert!((p1 / n1 - c).abs() < 1e-8 * c, "{} {c}", p1 / n1);
    }

    #[test]
    fn j_prefactor_bound() {
        // |J f(eta)| <= 2^{-n} eta^{n/r} * 2 sup|f|
        let f = |x: f64, y: f64| bump_profile((x - 0.05).powi(2) / 0.0016 + (y - 0.05).powi(2) / 0.0016);
        let eta = 0.1;
        assert!(j_transform_rank1(f, eta, 64).unwrap().abs() <= 0.5 * eta * 2.0);
    }
}
