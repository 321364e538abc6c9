//! Points of the tube domain `T_Omega = V + i Omega`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jordan::Algebra;

#[derive(Clone, Debug, PartialEq)]
pub struct TubePoint {
    coords: Vec<Complex64>,
}

impl TubePoint {
    pub fn new(alg: &Algebra, coords: Vec<Complex64>) -> Result<Self> {
        alg.check_len(&coords)?;
        if !alg.in_cone(&im(&coords)) {
            return Err(Error::OutsideTube);
        }
        Ok(TubePoint { coords })
    }

    pub fn from_parts(alg: &Algebra, x: &[f64], y: &[f64]) -> Result<Self> {
        Self::new(alg, x.iter().zip(y).map(|(a, b)| Complex64::new(*a, *b)).collect())
    }

    /// `i e`
    pub fn base(alg: &Algebra) -> Self {
        TubePoint {
            coords: alg.identity::<f64>().iter().map(|v| Complex64::new(0.0, *v)).collect(),
        }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    /// Smallest eigenvalue of `Im z`.
    pub fn depth(&self, alg: &Algebra) -> f64 {
        alg.min_eigenvalue(&im(&self.coords))
    }
}

pub fn re(z: &[Complex64]) -> Vec<f64> {
    z.iter().map(|c| c.re).collect()
}

pub fn im(z: &[Complex64]) -> Vec<f64> {
    z.iter().map(|c| c.im).collect()
}

pub fn conj(z: &[Complex64]) -> Vec<Complex64> {
    z.iter().map(|c| c.conj()).collect()
}

pub fn complexify(x: &[f64]) -> Vec<Complex64> {
    x.iter().map(|v| Complex64::new(*v, 0.0)).collect()
}

/// `z + i e`
pub fn shift_ie(alg: &Algebra, z: &[Complex64]) -> Vec<Complex64> {
    z.iter()
        .zip(alg.identity::<f64>())
        .map(|(c, e)| c + Complex64::new(0.0, e))
        .collect()
}

pub fn in_tube(alg: &Algebra, z: &[Complex64]) -> bool {
    alg.in_cone(&im(z))
}
