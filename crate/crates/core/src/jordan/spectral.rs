//! Spectral (Peirce) decomposition and functional calculus in floating point.

use nalgebra::DMatrix;

use super::{sym_index, Algebra, Family};
use crate::error::{Error, Result};

/// Eigenvalues clustered within this distance are treated as one.
pub const CLUSTER_TOL: f64 = 1e-10;

/// `x = sum eigenvalues[i] * frame[i]` with `frame` a Jordan frame.
#[derive(Clone, Debug)]
pub struct Spectral {
    /// ascending
    pub eigenvalues: Vec<f64>,
    pub frame: Vec<Vec<f64>>,
}

impl Algebra {
    pub fn spectral(&self, x: &[f64]) -> Spectral {
        match self.family {
            Family::Rank1 => Spectral {
                eigenvalues: vec![x[0]],
                frame: vec![vec![1.0]],
            },
            Family::Sym(_) => {
                let r = self.r;
                let m = DMatrix::from_fn(r, r, |i, j| x[sym_index(r, i, j)]);
                let eig = m.symmetric_eigen();
                let mut order: Vec<usize> = (0..r).collect();
                order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
                let mut eigenvalues = Vec::with_capacity(r);
                let mut frame = Vec::with_capacity(r);
                for &k in &order {
                    eigenvalues.push(eig.eigenvalues[k]);
                    let v = eig.eigenvectors.column(k);
                    let mut c = vec![0.0; self.n];
                    for i in 0..r {
                        for j in i..r {
                            c[sym_index(r, i, j)] = v[i] * v[j];
                        }
                    }
                    frame.push(c);
                }
                Spectral { eigenvalues, frame }
            }
            Family::Spin(_) => {
                let norm = x[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
                let mut dir = vec![0.0; self.n - 1];
                if norm > 0.0 {
                    for (d, v) in dir.iter_mut().zip(&x[1..]) {
                        *d = v / norm;
                    }
                } else {
                    // degenerate: any unit direction gives a valid frame
                    dir[0] = 1.0;
                }
                let idem = |sign: f64| {
                    let mut c = vec![0.5; 1];
                    c.extend(dir.iter().map(|d| 0.5 * sign * d));
                    c
                };
                Spectral {
                    eigenvalues: vec![x[0] - norm, x[0] + norm],
                    frame: vec![idem(-1.0), idem(1.0)],
                }
            }
        }
    }

    /// `f(x) = sum f(lambda) c` over eigenvalue clusters. Clustered eigenvalues
    /// are replaced by their mean and their idempotents summed.
    pub fn functional_calculus(&self, x: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
        let sp = self.spectral(x);
        let mut out = vec![0.0; self.n];
        let mut i = 0;
        while i < sp.eigenvalues.len() {
            let mut j = i + 1;
            while j < sp.eigenvalues.len() && sp.eigenvalues[j] - sp.eigenvalues[j - 1] < CLUSTER_TOL
            {
                j += 1;
            }
            let mean = sp.eigenvalues[i..j].iter().sum::<f64>() / (j - i) as f64;
            let fv = f(mean);
            for c in &sp.frame[i..j] {
                for (o, ci) in out.iter_mut().zip(c) {
                    *o += fv * ci;
                }
            }
            i = j;
        }
        out
    }

    pub fn min_eigenvalue(&self, x: &[f64]) -> f64 {
        self.spectral(x).eigenvalues[0]
    }

    pub fn in_cone(&self, x: &[f64]) -> bool {
        self.min_eigenvalue(x) > 0.0
    }

    /// `e +- v` both in the cone.
    pub fn in_interval(&self, v: &[f64]) -> bool {
        let sp = self.spectral(v);
        sp.eigenvalues.iter().all(|&l| l > -1.0 && l < 1.0)
    }

    pub fn sqrt(&self, z: &[f64]) -> Result<Vec<f64>> {
        if !self.in_cone(z) {
            return Err(Error::NotInCone);
        }
        Ok(self.functional_calculus(z, f64::sqrt))
    }

    pub fn inv_sqrt(&self, z: &[f64]) -> Result<Vec<f64>> {
        if !self.in_cone(z) {
            return Err(Error::NotInCone);
        }
        Ok(self.functional_calculus(z, |l| 1.0 / l.sqrt()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{algebra, tests::all_families, Family};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn norm_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn reconstruction_and_frame() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in all_families() {
            let a = algebra(f);
            for _ in 0..20 {
                let x: Vec<f64> = (0..a.n).map(|_| rng.random_range(-2.0..2.0)).collect();
                let sp = a.spectral(&x);
                let mut rec = vec![0.0; a.n];
                for (l, c) in sp.eigenvalues.iter().zip(&sp.frame) {
                    for (o, ci) in rec.iter_mut().zip(c) {
                        *o += l * ci;
                    }
                }
                assert!(norm_diff(&rec, &x) < 1e-12, "{f}");
                let mut sum = vec![0.0; a.n];
                for (i, ci) in sp.frame.iter().enumerate() {
                    for (j, cj) in sp.frame.iter().enumerate() {
                        let p = a.mul_f64(ci, cj);
                        let want: Vec<f64> = if i == j { ci.clone() } else { vec![0.0; a.n] };
                        assert!(norm_diff(&p, &want) < 1e-12);
                    }
                    for (o, v) in sum.iter_mut().zip(ci) {
                        *o += v;
                    }
                }
                assert!(norm_diff(&sum, &a.identity::<f64>()) < 1e-12);
            }
        }
    }

    #[test]
    fn spin_eigenvalues() {
        let a = algebra(Family::Spin(5));
        let x = [1.0, 3.0, 0.0, 4.0, 0.0];
        let sp = a.spectral(&x);
        assert_eq!(sp.eigenvalues, vec![-4.0, 6.0]);
    }

    #[test]
    fn identity_eigenvalues_are_one() {
        for f in all_families() {
            let a = algebra(f);
            let sp = a.spectral(&a.identity::<f64>());
            assert!(sp.eigenvalues.iter().all(|&l| (l - 1.0).abs() < 1e-14));
            assert!(norm_diff(&a.sqrt(&a.identity::<f64>()).unwrap(), &a.identity::<f64>()) < 1e-14);
        }
    }

    #[test]
    fn sqrt_round_trip_spd() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for f in all_families() {
            let a = algebra(f);
            for _ in 0..20 {
                let b: Vec<f64> = (0..a.n).map(|_| rng.random_range(-1.0..1.0)).collect();
                let mut z = a.square(&b);
                for (zi, ei) in z.iter_mut().zip(a.identity::<f64>()) {
                    *zi += 0.1 * ei;
                }
                let s = a.sqrt(&z).unwrap();
                assert!(a.in_cone(&s));
                assert!(norm_diff(&a.square(&s), &z) < 1e-12, "{f}");
            }
        }
    }

    #[test]
    fn cone_membership() {
        let a = algebra(Family::Sym(2));
        assert!(a.in_interval(&[0.5, -0.9, 0.0]));
        assert!(!a.in_interval(&[2.0, 2.0, 0.0]));
        assert!(a.in_cone(&[1.0, 1.0, 0.0]));
        assert!(!a.in_cone(&[1.0, 1.0, 1.5]));
        assert_eq!(a.sqrt(&[1.0, 1.0, 1.5]), Err(crate::Error::NotInCone));
    }
}
