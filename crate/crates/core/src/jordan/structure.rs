//! Elements of the structure group, built from generators so that membership
//! holds by construction.

use std::sync::Arc;

use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Field;

/// A linear map of `V` in coordinates, `x -> matrix * x`.
#[derive(Clone, Debug)]
pub struct StructureMap<T> {
    alg: Arc<Algebra>,
    matrix: Matrix<T>,
}

impl<T: Field> StructureMap<T> {
    pub fn identity(alg: Arc<Algebra>) -> Self {
        let matrix = linalg::identity(alg.n);
        StructureMap { alg, matrix }
    }

    /// `P(a)`
    pub fn quad(alg: Arc<Algebra>, a: &[T]) -> Self {
        let matrix = alg.quad_matrix(a);
        StructureMap { alg, matrix }
    }

    /// `c Id`, with `chi = c^r`.
    pub fn scalar(alg: Arc<Algebra>, c: T) -> Self {
        let n = alg.n;
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { T::zero() }).collect())
            .collect();
        StructureMap { alg, matrix }
    }

    /// Arbitrary matrix; callers must check membership with [`Self::verify`].
    pub fn from_matrix(alg: Arc<Algebra>, matrix: Matrix<T>) -> Result<Self> {
        if matrix.len() != alg.n || matrix.iter().any(|row| row.len() != alg.n) {
            return Err(Error::DimensionMismatch {
                expected: alg.n,
                got: matrix.len(),
            });
        }
        Ok(StructureMap { alg, matrix })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    /// `self o other`
    pub fn compose(&self, other: &Self) -> Self {
        StructureMap {
            alg: self.alg.clone(),
            matrix: linalg::mat_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        linalg::mat_vec(&self.matrix, x)
    }

    /// `chi(l) = det(l e)`
    pub fn chi(&self) -> T {
        self.alg.det(&self.apply(&self.alg.identity::<T>()))
    }

    /// Determinant of the coordinate matrix.
    #[allow(non_snake_case)]
    pub fn Det(&self) -> T {
        linalg::det(&self.matrix)
    }

    /// Checks `det(l x) = chi(l) det(x)` at the given points; returns the
    /// largest relative residual when it exceeds `tol`.
    pub fn verify(&self, samples: &[Vec<T>], tol: f64) -> Result<()> {
        let chi = self.chi();
        let mut worst = 0.0f64;
        for x in samples {
            let lhs = self.alg.det(&self.apply(x));
            let rhs = chi.clone() * self.alg.det(x);
            let scale = lhs.magnitude().max(rhs.magnitude()).max(1.0);
            worst = worst.max((lhs - rhs).magnitude() / scale);
        }
        if worst > tol {
            return Err(Error::NotInStructureGroup(worst));
        }
        Ok(())
    }
}

impl StructureMap<f64> {
    /// `x -> g x g^T` for orthogonal `g` (an automorphism of `Sym(r)`).
    pub fn sym_conjugation(alg: Arc<Algebra>, g: &Matrix<f64>) -> Result<Self> {
        let r = match alg.family {
            super::Family::Sym(r) => r as usize,
            f => return Err(Error::Unsupported(format!("conjugation on {f}"))),
        };
        let n = alg.n;
        let mut matrix = vec![vec![0.0; n]; n];
        for j in 0..n {
            let mut m = vec![vec![0.0; r]; r];
            for a in 0..r {
                for b in 0..r {
                    if super::sym_index(r, a, b) == j {
                        m[a][b] = 1.0;
                    }
                }
            }
            let gm = linalg::mat_mul(g, &m);
            let gt: Matrix<f64> = (0..r).map(|a| (0..r).map(|b| g[b][a]).collect()).collect();
            let out = linalg::mat_mul(&gm, &gt);
            for a in 0..r {
                for b in a..r {
                    matrix[super::sym_index(r, a, b)][j] = out[a][b];
                }
            }
        }
        Ok(StructureMap { alg, matrix })
    }

    /// Rotation fixing `x0` and acting on `xbar` by the orthogonal `g`.
    pub fn spin_rotation(alg: Arc<Algebra>, g: &Matrix<f64>) -> Result<Self> {
        if !matches!(alg.family, super::Family::Spin(_)) {
            return Err(Error::Unsupported(format!("rotation on {}", alg.family)));
        }
        let n = alg.n;
        let mut matrix = vec![vec![0.0; n]; n];
        matrix[0][0] = 1.0;
        for i in 1..n {
            for j in 1..n {
                matrix[i][j] = g[i - 1][j - 1];
            }
        }
        Ok(StructureMap { alg, matrix })
    }

    /// Random orthogonal `g` of size `m` via QR of a Gaussian-like matrix.
    pub fn random_orthogonal(m: usize, rng: &mut impl rand::Rng) -> Matrix<f64> {
        let a = nalgebra::DMatrix::from_fn(m, m, |_, _| rng.random_range(-1.0..1.0));
        let qm = a.qr().q();
        (0..m).map(|i| (0..m).map(|j| qm[(i, j)]).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{algebra, tests::all_families, Family};
    use crate::sampling::{random_cone, random_rational, random_rational_cone, rng};
    use crate::scalar::{qi, Q};

    #[test]
    fn chi_of_quad_is_det_squared() {
        let mut g = rng(11);
        for f in all_families() {
            let a = algebra(f);
            let x = random_rational_cone(&a, &mut g);
            let l = StructureMap::quad(a.clone(), &x);
            let d = a.det(&x);
            assert_eq!(l.chi(), &d * &d);
            let samples: Vec<Vec<Q>> = (0..5).map(|_| random_rational(a.n, &mut g)).collect();
            l.verify(&samples, 0.0).unwrap();
            assert_eq!(StructureMap::<Q>::identity(a.clone()).chi(), qi(1));
        }
    }

    #[test]
    fn sym2_example() {
        let a = algebra(Family::Sym(2));
        let l = StructureMap::quad(a, &[qi(2), qi(3), qi(0)]);
        assert_eq!(l.chi(), qi(36));
        assert_eq!(l.Det(), qi(216));
    }

    #[test]
    fn det_is_chi_power() {
        let mut g = rng(12);
        for f in all_families() {
            let a = algebra(f);
            let x = random_cone(&a, &mut g);
            let y = random_cone(&a, &mut g);
            let l = StructureMap::quad(a.clone(), &x).compose(&StructureMap::quad(a.clone(), &y));
            let want = l.chi().powf(a.n as f64 / a.r as f64);
            assert!((l.Det() - want).abs() < 1e-9 * want.abs(), "{f}");
        }
    }

    #[test]
    fn non_member_is_rejected() {
        let a = algebra(Family::Sym(2));
        let m = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 3.0]];
        let l = StructureMap::from_matrix(a, m).unwrap();
        let samples = vec![vec![1.0, 1.0, 0.5], vec![2.0, 1.0, -0.3]];
        assert!(matches!(l.verify(&samples, 1e-12), Err(Error::NotInStructureGroup(_))));
    }

    #[test]
    fn automorphisms_preserve_det() {
        let mut g = rng(13);
        for f in [Family::Sym(3), Family::Spin(5)] {
            let a = algebra(f);
            let m = if let Family::Sym(r) = f { r as usize } else { a.n - 1 };
            let o = StructureMap::random_orthogonal(m, &mut g);
            let l = match f {
                Family::Sym(_) => StructureMap::sym_conjugation(a.clone(), &o).unwrap(),
                _ => StructureMap::spin_rotation(a.clone(), &o).unwrap(),
            };
            let samples: Vec<Vec<f64>> = (0..5).map(|_| random_cone(&a, &mut g)).collect();
            l.verify(&samples, 1e-12).unwrap();
            assert!((l.chi() - 1.0).abs() < 1e-12);
        }
    }
}
