use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{algebra, Family};
use crate::error::{Error, Result};
use crate::scalar::{format_q, parse_q, Field, Q};

/// An element of a concrete algebra: the family tag plus a coordinate vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<T> {
    family: Family,
    coords: Vec<T>,
}

pub type ComplexElement = Element<Complex64>;

impl<T: Field> Element<T> {
    pub fn new(family: Family, coords: Vec<T>) -> Result<Self> {
        algebra(family).check_len(&coords)?;
        Ok(Element { family, coords })
    }

    pub fn identity(family: Family) -> Self {
        Element {
            family,
            coords: algebra(family).identity(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.family != other.family {
            return Err(Error::AlgebraMismatch(self.family.name(), other.family.name()));
        }
        Ok(())
    }

    pub fn jordan_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Element {
            family: self.family,
            coords: algebra(self.family).mul(&self.coords, &other.coords),
        })
    }

    pub fn quad_rep(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Element {
            family: self.family,
            coords: algebra(self.family).quad(&self.coords, &other.coords),
        })
    }

    pub fn trace(&self) -> T {
        algebra(self.family).trace(&self.coords)
    }

    pub fn det(&self) -> T {
        algebra(self.family).det(&self.coords)
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Element {
            family: self.family,
            coords: algebra(self.family).inverse(&self.coords)?,
        })
    }
}

impl Element<f64> {
    pub fn in_cone(&self) -> bool {
        algebra(self.family).in_cone(&self.coords)
    }

    pub fn in_interval(&self) -> bool {
        algebra(self.family).in_interval(&self.coords)
    }

    pub fn sqrt_in_cone(&self) -> Result<Self> {
        Ok(Element {
            family: self.family,
            coords: algebra(self.family).sqrt(&self.coords)?,
        })
    }
}

/// Wire form: `{"algebra": "sym2", "coords": [..]}`. Exact coordinates are
/// `"p/q"` strings, floating ones are JSON numbers.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    pub algebra: String,
    pub coords: Vec<Value>,
}

impl Element<Q> {
    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            algebra: self.family.name(),
            coords: self.coords.iter().map(|c| Value::String(format_q(c))).collect(),
        }
    }

    pub fn from_json(j: &ElementJson) -> Result<Self> {
        let family: Family = j.algebra.parse()?;
        let coords = j
            .coords
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_q(s),
                Value::Number(n) => parse_q(&n.to_string()),
                _ => Err(Error::Parse(format!("bad coordinate {v}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Element::new(family, coords)
    }
}

impl Element<f64> {
    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            algebra: self.family.name(),
            coords: self.coords.iter().map(|&c| Value::from(c)).collect(),
        }
    }

    pub fn from_json(j: &ElementJson) -> Result<Self> {
        let family: Family = j.algebra.parse()?;
        let coords = j
            .coords
            .iter()
            .map(|v| match v {
                Value::String(s) => parse_q(s).map(|q| f64::from_q(&q)),
                Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(n.to_string())),
                _ => Err(Error::Parse(format!("bad coordinate {v}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Element::new(family, coords)
    }
}
