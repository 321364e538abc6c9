//! Scalar fields the algebra routines are generic over: exact rationals,
//! doubles, and complex doubles.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_q(q: &Q) -> Self;
    /// Pivoting magnitude. Exact fields only need "nonzero".
    fn magnitude(&self) -> f64;
    fn from_i64(v: i64) -> Self {
        Self::from_q(&Q::from_integer(BigInt::from(v)))
    }
}

impl Field for Q {
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.abs().to_f64().unwrap_or(f64::MAX).max(f64::MIN_POSITIVE)
        }
    }
}

impl Field for f64 {
    fn from_q(q: &Q) -> Self {
        q.to_f64().expect("rational out of f64 range")
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Field for Complex64 {
    fn from_q(q: &Q) -> Self {
        Complex64::new(f64::from_q(q), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().expect("rational out of f64 range")
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Accepts `p/q`, an integer, or a finite decimal such as `2.5`.
pub fn parse_q(s: &str) -> Result<Q, crate::Error> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("not a rational: `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let ipart: BigInt = if ip_abs.is_empty() {
            BigInt::zero()
        } else {
            ip_abs.parse().map_err(|_| bad())?
        };
        let fpart: BigInt = fp.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Q::new(ipart * &den + fpart, den);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_q("-7").unwrap(), qi(-7));
        assert_eq!(parse_q("2.5").unwrap(), q(5, 2));
        assert_eq!(parse_q("-0.25").unwrap(), q(-1, 4));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn format_always_has_denominator() {
        assert_eq!(format_q(&qi(3)), "3/1");
        assert_eq!(format_q(&q(-2, 4)), "-1/2");
    }
}
