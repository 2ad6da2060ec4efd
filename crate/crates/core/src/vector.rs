//! Nonempty rational vectors and the maximum-absolute-value norm.

use std::fmt;
use std::ops::{Index, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A vector of exact rationals with at least one entry.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(RationalVector(entries))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn linf_norm(&self) -> Rational {
        linf_norm(&self.0).expect("nonempty by construction")
    }

    pub fn scale(&self, k: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn checked_sub(&self, other: &RationalVector) -> Result<RationalVector> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(RationalVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// The first `l` coordinates.
    pub fn truncate(&self, l: usize) -> Result<RationalVector> {
        if l == 0 || l > self.dim() {
            return Err(Error::domain(format!(
                "cannot project a {}-vector onto {l} coordinates",
                self.dim()
            )));
        }
        Ok(RationalVector(self.0[..l].to_vec()))
    }
}

impl TryFrom<Vec<Rational>> for RationalVector {
    type Error = Error;

    fn try_from(v: Vec<Rational>) -> Result<Self> {
        RationalVector::new(v)
    }
}

impl From<RationalVector> for Vec<Rational> {
    fn from(v: RationalVector) -> Self {
        v.0
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;

    /// Panics on a dimension mismatch; see [`RationalVector::checked_sub`].
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `max_i |v_i|`. Fails on an empty slice.
pub fn linf_norm(v: &[Rational]) -> Result<Rational> {
    v.iter().map(Rational::abs).max().ok_or(Error::EmptyVector)
}
