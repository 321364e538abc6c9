//! Seeded random samples in the cone, the interval `]-e,e[`, and exact
//! rational analogues.

use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::jordan::Algebra;
use crate::scalar::{q, Q};

pub const DEFAULT_SEED: u64 = 0x5eed_2020;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// `b^2 + 0.2 e` for uniform `b`: well inside the cone.
pub fn random_cone(alg: &Algebra, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let b: Vec<f64> = (0..alg.n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut z = alg.square(&b);
    for (zi, ei) in z.iter_mut().zip(alg.identity::<f64>()) {
        *zi += 0.2 * ei;
    }
    z
}

/// Rejection sample with spectrum inside `(-0.95, 0.95)`.
pub fn random_interval(alg: &Algebra, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..alg.n).map(|_| rng.random_range(-0.9..0.9)).collect();
        if alg.spectral(&v).eigenvalues.iter().all(|l| l.abs() < 0.95) {
            return v;
        }
    }
}

pub fn random_rational(n: usize, rng: &mut ChaCha8Rng) -> Vec<Q> {
    (0..n)
        .map(|_| q(rng.random_range(-6..7), rng.random_range(1..4)))
        .collect()
}

/// `b^2 + e/den` with rational `b`: an exact element of the cone.
pub fn random_rational_cone(alg: &Algebra, rng: &mut ChaCha8Rng) -> Vec<Q> {
    let b = random_rational(alg.n, rng);
    let mut a = alg.square(&b);
    let eps = Q::one() / Q::from_integer(rng.random_range(1..4).into());
    for (ai, ei) in a.iter_mut().zip(alg.identity::<Q>()) {
        *ai += &eps * ei;
    }
    a
}
