//! Concrete Euclidean Jordan algebras: `R` (rank one), `Sym(r, R)` and the
//! spin factors, with exact structure constants.
//!
//! Coordinates for `Sym(r)` are the independent entries `x_ii` followed by
//! `x_ij (i < j)`; the trace form is `tr(xy) = sum x_ii y_ii + 2 sum x_ij y_ij`.
//! Spin factors `R x R^(m-1)` use `(x0, xbar)` with product
//! `(x0 y0 + <xbar, ybar>, x0 ybar + y0 xbar)`.

mod chart;
mod element;
mod spectral;
mod structure;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use chart::{fd_jacobian_iota, iota, iota_inv, jacobian_iota};
pub use element::{ComplexElement, Element, ElementJson};
pub use spectral::Spectral;
pub use structure::StructureMap;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{q, qi, Field, Q};
use crate::symbolic::{Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Rank1,
    Sym(u8),
    Spin(u8),
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Rank1 => "rank1".into(),
            Family::Sym(r) => format!("sym{r}"),
            Family::Spin(m) => format!("spin{m}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let s = s.replace(['(', ')'], "");
        let fam = if s == "rank1" || s == "r" {
            Family::Rank1
        } else if let Some(r) = s.strip_prefix("sym") {
            let r: u8 = r.parse().map_err(|_| Error::UnknownAlgebra(s.clone()))?;
            if r == 1 {
                Family::Rank1
            } else {
                Family::Sym(r)
            }
        } else if let Some(m) = s.strip_prefix("spin") {
            Family::Spin(m.parse().map_err(|_| Error::UnknownAlgebra(s.clone()))?)
        } else {
            return Err(Error::UnknownAlgebra(s));
        };
        match fam {
            Family::Sym(r) if !(2..=4).contains(&r) => Err(Error::UnknownAlgebra(s)),
            Family::Spin(m) if !(3..=8).contains(&m) => Err(Error::UnknownAlgebra(s)),
            f => Ok(f),
        }
    }
}

/// A concrete Euclidean Jordan algebra with exact structure constants.
#[derive(Debug)]
pub struct Algebra {
    pub family: Family,
    /// dimension
    pub n: usize,
    /// rank
    pub r: usize,
    /// characteristic number
    pub d: usize,
    pub labels: Vec<String>,
    /// `table[i][j]` lists `(k, c)` with `e_i . e_j = sum c e_k`.
    table: Vec<Vec<Vec<(usize, Q)>>>,
    table_f: Vec<Vec<Vec<(usize, f64)>>>,
    identity: Vec<Q>,
    trace_vec: Vec<Q>,
    /// Diagonal of the trace-form Gram matrix (the basis is trace-orthogonal).
    gram: Vec<Q>,
    det_poly: Poly<Q>,
}

static REGISTRY: OnceLock<Mutex<BTreeMap<Family, Arc<Algebra>>>> = OnceLock::new();

/// Shared, lazily-built descriptor for `family`.
pub fn algebra(family: Family) -> Arc<Algebra> {
    let reg = REGISTRY.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = reg.lock().expect("algebra registry poisoned");
    guard
        .entry(family)
        .or_insert_with(|| Arc::new(Algebra::build(family)))
        .clone()
}

pub fn algebra_by_name(name: &str) -> Result<Arc<Algebra>> {
    Ok(algebra(name.parse()?))
}

fn sym_index(r: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if i == j {
        return i;
    }
    let mut idx = r;
    for a in 0..r {
        for b in a + 1..r {
            if (a, b) == (i, j) {
                return idx;
            }
            idx += 1;
        }
    }
    unreachable!()
}

fn sym_basis_matrix(r: usize, k: usize) -> Matrix<Q> {
    let mut m = vec![vec![Q::zero(); r]; r];
    for i in 0..r {
        for j in i..r {
            if sym_index(r, i, j) == k {
                m[i][j] = Q::one();
                m[j][i] = Q::one();
            }
        }
    }
    m
}

fn sym_coords_of(r: usize, m: &Matrix<Q>) -> Vec<Q> {
    let n = r * (r + 1) / 2;
    let mut out = vec![Q::zero(); n];
    for i in 0..r {
        for j in i..r {
            out[sym_index(r, i, j)] = m[i][j].clone();
        }
    }
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            (p, if inv % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

impl Algebra {
    fn build(family: Family) -> Algebra {
        let (n, r, d) = match family {
            Family::Rank1 => (1, 1, 0),
            Family::Sym(r) => {
                let r = r as usize;
                (r * (r + 1) / 2, r, 1)
            }
            Family::Spin(m) => (m as usize, 2, m as usize - 2),
        };
        let mut table = vec![vec![Vec::new(); n]; n];
        let mut identity = vec![Q::zero(); n];
        let mut trace_vec = vec![Q::zero(); n];
        let labels: Vec<String>;
        let det_poly: Poly<Q>;
        match family {
            Family::Rank1 => {
                table[0][0] = vec![(0, Q::one())];
                identity[0] = Q::one();
                trace_vec[0] = Q::one();
                labels = vec!["x".into()];
                det_poly = Poly::var(1, 0);
            }
            Family::Sym(_) => {
                let basis: Vec<Matrix<Q>> = (0..n).map(|k| sym_basis_matrix(r, k)).collect();
                let half = q(1, 2);
                for i in 0..n {
                    for j in 0..n {
                        let ab = linalg::mat_mul(&basis[i], &basis[j]);
                        let ba = linalg::mat_mul(&basis[j], &basis[i]);
                        let jm: Matrix<Q> = ab
                            .iter()
                            .zip(&ba)
                            .map(|(u, v)| u.iter().zip(v).map(|(a, b)| (a + b) * &half).collect())
                            .collect();
                        table[i][j] = sym_coords_of(r, &jm)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect();
                    }
                }
                for i in 0..r {
                    identity[i] = Q::one();
                    trace_vec[i] = Q::one();
                }
                let mut l = Vec::with_capacity(n);
                for i in 0..r {
                    l.push(format!("x{}{}", i + 1, i + 1));
                }
                for i in 0..r {
                    for j in i + 1..r {
                        l.push(format!("x{}{}", i + 1, j + 1));
                    }
                }
                labels = l;
                let mut det = Poly::zero(n);
                for (perm, sign) in permutations(r) {
                    let mut m = Monomial::one(n);
                    for (i, &pi) in perm.iter().enumerate() {
                        m.0[sym_index(r, i, pi)] += 1;
                    }
                    det.add_term(m, qi(sign));
                }
                det_poly = det;
            }
            Family::Spin(_) => {
                for i in 0..n {
                    for j in 0..n {
                        table[i][j] = match (i, j) {
                            (0, j) => vec![(j, Q::one())],
                            (i, 0) => vec![(i, Q::one())],
                            (i, j) if i == j => vec![(0, Q::one())],
                            _ => Vec::new(),
                        };
                    }
                }
                identity[0] = Q::one();
                trace_vec[0] = qi(2);
                labels = (0..n).map(|i| format!("x{i}")).collect();
                let mut det = Poly::zero(n);
                det.add_term(Monomial(vec_with(n, 0, 2)), Q::one());
                for i in 1..n {
                    det.add_term(Monomial(vec_with(n, i, 2)), -Q::one());
                }
                det_poly = det;
            }
        }
        let table_f = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|(k, c)| (*k, f64::from_q(c))).collect())
                    .collect()
            })
            .collect();
        let mut alg = Algebra {
            family,
            n,
            r,
            d,
            labels,
            table,
            table_f,
            identity,
            trace_vec,
            gram: Vec::new(),
            det_poly,
        };
        alg.gram = (0..n)
            .map(|i| {
                let ei = alg.basis::<Q>(i);
                alg.trace(&alg.mul(&ei, &ei))
            })
            .collect();
        alg
    }

    pub fn name(&self) -> String {
        self.family.name()
    }

    pub fn basis<T: Field>(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.n];
        v[i] = T::one();
        v
    }

    pub fn identity<T: Field>(&self) -> Vec<T> {
        self.identity.iter().map(T::from_q).collect()
    }

    pub fn det_poly(&self) -> &Poly<Q> {
        &self.det_poly
    }

    /// Diagonal of the trace-form Gram matrix `tr(e_i e_i)` (off-diagonal entries vanish).
    pub fn gram_diag(&self) -> &[Q] {
        &self.gram
    }

    /// Scaling between coordinate Lebesgue measure and the Euclidean measure of
    /// the trace form: `dx = sqrt(det G) * prod dx_i`.
    pub fn measure_factor(&self) -> f64 {
        self.gram.iter().map(f64::from_q).product::<f64>().sqrt()
    }

    pub fn check_len<T>(&self, v: &[T]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn mul<T: Field>(&self, a: &[T], b: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.clone() * bj.clone();
                for (k, c) in &self.table[i][j] {
                    out[*k] = out[*k].clone() + ab.clone() * T::from_q(c);
                }
            }
        }
        out
    }

    /// Floating-point product using the cached `f64` table.
    pub fn mul_f64(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                for &(k, c) in &self.table_f[i][j] {
                    out[k] += ai * bj * c;
                }
            }
        }
        out
    }

    pub fn square<T: Field>(&self, a: &[T]) -> Vec<T> {
        self.mul(a, a)
    }

    /// `P(x)y = 2 x(xy) - x^2 y`
    pub fn quad<T: Field>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let xy = self.mul(x, y);
        let x_xy = self.mul(x, &xy);
        let x2y = self.mul(&self.square(x), y);
        x_xy.into_iter()
            .zip(x2y)
            .map(|(a, b)| a.clone() + a - b)
            .collect()
    }

    /// Coordinate matrix of `P(x)` (column `j` is `P(x) e_j`).
    pub fn quad_matrix<T: Field>(&self, x: &[T]) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..self.n).map(|j| self.quad(x, &self.basis::<T>(j))).collect();
        (0..self.n)
            .map(|i| (0..self.n).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    pub fn trace<T: Field>(&self, x: &[T]) -> T {
        x.iter()
            .zip(&self.trace_vec)
            .fold(T::zero(), |acc, (xi, ti)| acc + xi.clone() * T::from_q(ti))
    }

    pub fn det<T: Field>(&self, x: &[T]) -> T {
        self.det_poly.eval(x)
    }

    /// Trace form `(x, y) = tr(xy)`; bilinear, no conjugation.
    pub fn inner<T: Field>(&self, x: &[T], y: &[T]) -> T {
        x.iter()
            .zip(y)
            .zip(&self.gram)
            .fold(T::zero(), |acc, ((a, b), g)| acc + a.clone() * b.clone() * T::from_q(g))
    }

    /// `x^{-1} = P(x)^{-1} x`
    pub fn inverse<T: Field>(&self, x: &[T]) -> Result<Vec<T>> {
        if self.det(x).magnitude() == 0.0 {
            return Err(Error::Singular);
        }
        linalg::solve(&self.quad_matrix(x), x).ok_or(Error::Singular)
    }

    pub fn add<T: Field>(&self, a: &[T], b: &[T]) -> Vec<T> {
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    pub fn sub<T: Field>(&self, a: &[T], b: &[T]) -> Vec<T> {
        a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
    }

    pub fn scale<T: Field>(&self, c: &T, a: &[T]) -> Vec<T> {
        a.iter().map(|x| c.clone() * x.clone()).collect()
    }

    /// Largest `|eigenvalue|` of each basis vector; bounds how far a
    /// coordinate perturbation can move the spectrum.
    pub fn basis_op_norms(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                self.spectral(&self.basis::<f64>(i))
                    .eigenvalues
                    .iter()
                    .fold(0.0f64, |m, v| m.max(v.abs()))
            })
            .collect()
    }
}

fn vec_with(n: usize, i: usize, v: u16) -> Vec<u16> {
    let mut out = vec![0; n];
    out[i] = v;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn all_families() -> Vec<Family> {
        let mut v = vec![Family::Rank1, Family::Sym(2), Family::Sym(3), Family::Sym(4)];
        v.extend((3..=8).map(Family::Spin));
        v
    }

    fn rand_q(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
        (0..n).map(|_| q(rng.random_range(-9..10), rng.random_range(1..5))).collect()
    }

    #[test]
    fn dimension_formula() {
        for f in all_families() {
            let a = algebra(f);
            assert_eq!(a.n, a.r + a.r * (a.r - 1) * a.d / 2, "{f}");
            let e: Vec<Q> = a.identity();
            assert_eq!(a.trace(&e), qi(a.r as i64));
            assert_eq!(a.det(&e), qi(1));
        }
    }

    #[test]
    fn jordan_identity_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in all_families() {
            let a = algebra(f);
            let samples = if a.n > 6 { 20 } else { 100 };
            for _ in 0..samples {
                let x = rand_q(&mut rng, a.n);
                let y = rand_q(&mut rng, a.n);
                assert_eq!(a.mul(&x, &y), a.mul(&y, &x));
                let x2 = a.square(&x);
                let lhs = a.mul(&x, &a.mul(&x2, &y));
                let rhs = a.mul(&x2, &a.mul(&x, &y));
                assert_eq!(lhs, rhs, "{f}");
            }
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for f in all_families() {
            let a = algebra(f);
            let e: Vec<Q> = a.identity();
            let x = rand_q(&mut rng, a.n);
            assert_eq!(a.mul(&e, &x), x);
            assert_eq!(a.quad(&e, &x), x);
        }
    }

    #[test]
    fn sym2_diagonal_product_and_det() {
        let a = algebra(Family::Sym(2));
        let d12 = vec![qi(1), qi(2), qi(0)];
        let d34 = vec![qi(3), qi(4), qi(0)];
        assert_eq!(a.mul(&d12, &d34), vec![qi(3), qi(8), qi(0)]);
        let d23 = vec![qi(2), qi(3), qi(0)];
        assert_eq!(a.det(&d23), qi(6));
        assert_eq!(a.trace(&d23), qi(5));
        assert_eq!(a.gram_diag(), &[qi(1), qi(1), qi(2)]);
    }

    #[test]
    fn spin_product_formula() {
        let a = algebra(Family::Spin(4));
        let x = vec![qi(2), qi(1), qi(-1), qi(3)];
        let y = vec![qi(1), qi(2), qi(5), q(1, 2)];
        let dot = qi(2) - qi(5) + q(3, 2);
        let expected = vec![
            qi(2) + dot,
            qi(2) * qi(2) + qi(1),
            qi(2) * qi(5) + qi(-1),
            qi(2) * q(1, 2) + qi(3),
        ];
        assert_eq!(a.mul(&x, &y), expected);
        assert_eq!(a.det(&x), qi(4) - qi(11));
        assert_eq!(a.trace(&x), qi(4));
    }

    #[test]
    fn quadratic_representation_multiplies_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for f in all_families() {
            let a = algebra(f);
            for _ in 0..20 {
                let x = rand_q(&mut rng, a.n);
                let y = rand_q(&mut rng, a.n);
                let lhs = a.det(&a.quad(&x, &y));
                let dx = a.det(&x);
                assert_eq!(lhs, dx.clone() * dx * a.det(&y), "{f}");
            }
        }
    }

    #[test]
    fn sym_quad_is_conjugation() {
        // P(x)y = xyx for symmetric matrices
        let a = algebra(Family::Sym(2));
        let x = vec![qi(2), qi(3), qi(0)];
        let y = vec![qi(1), qi(1), qi(1)];
        assert_eq!(a.quad(&x, &y), vec![qi(4), qi(9), qi(6)]);
    }

    #[test]
    fn inverse_exact() {
        let a = algebra(Family::Sym(3));
        let x = vec![qi(2), qi(3), qi(1), q(1, 2), qi(0), qi(-1)];
        let inv = a.inverse(&x).unwrap();
        assert_eq!(a.mul(&x, &inv), a.identity::<Q>());
        let r1 = algebra(Family::Rank1);
        assert_eq!(r1.inverse(&[qi(4)]).unwrap(), vec![q(1, 4)]);
        assert_eq!(r1.inverse(&[qi(0)]), Err(Error::Singular));
    }

    #[test]
    fn parses_names() {
        assert_eq!("sym2".parse::<Family>().unwrap(), Family::Sym(2));
        assert_eq!("spin(4)".parse::<Family>().unwrap(), Family::Spin(4));
        assert_eq!("rank1".parse::<Family>().unwrap(), Family::Rank1);
        assert!("sym9".parse::<Family>().is_err());
        assert!("spin2".parse::<Family>().is_err());
        assert!("herm3".parse::<Family>().is_err());
    }
}
