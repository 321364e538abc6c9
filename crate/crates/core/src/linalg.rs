//! Dense Gaussian elimination over any [`Field`]. Matrices are row-major
//! `Vec<Vec<T>>`; sizes here never exceed a few dozen.

use crate::scalar::Field;

pub type Matrix<T> = Vec<Vec<T>>;

fn pivot_row<T: Field>(a: &Matrix<T>, col: usize) -> Option<usize> {
    let mut best = None;
    let mut best_mag = 0.0;
    for (i, row) in a.iter().enumerate().skip(col) {
        let m = row[col].magnitude();
        if m > best_mag {
            best_mag = m;
            best = Some(i);
        }
    }
    best
}

pub fn det<T: Field>(m: &Matrix<T>) -> T {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = T::one();
    for col in 0..n {
        let Some(p) = pivot_row(&a, col) else {
            return T::zero();
        };
        if p != col {
            a.swap(p, col);
            acc = -acc;
        }
        let piv = a[col][col].clone();
        acc = acc * piv.clone();
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone() / piv.clone();
            for j in col..n {
                let v = a[col][j].clone() * f.clone();
                a[i][j] = a[i][j].clone() - v;
            }
        }
    }
    acc
}

/// Solves `m x = b`; `None` when `m` is singular.
pub fn solve<T: Field>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = m.len();
    let mut a: Matrix<T> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = pivot_row(&a, col)?;
        a.swap(p, col);
        let piv = a[col][col].clone();
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone() / piv.clone();
            for j in col..=n {
                let v = a[col][j].clone() * f.clone();
                a[i][j] = a[i][j].clone() - v;
            }
        }
    }
    Some((0..n).map(|i| a[i][n].clone() / a[i][i].clone()).collect())
}

pub fn mat_vec<T: Field>(m: &Matrix<T>, v: &[T]) -> Vec<T> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

pub fn mat_mul<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, l| acc + a[i][l].clone() * b[l][j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn identity<T: Field>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}
