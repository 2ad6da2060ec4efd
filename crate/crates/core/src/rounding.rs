//! The complement rounding operator `a^[n]` and the coefficient-level
//! n-complement condition.
//!
//! For a coefficient `a` in `[0, 1]` and `n >= 1`, `a^[n]` is `1` when
//! `a = 1` and `floor((n + 1) a) / n` otherwise. A boundary coefficient `d`
//! admits `d⁺` in an n-complement only if `d⁺ >= d^[n]`.
//!
//! Subboundary (negative) coefficients are rejected rather than rounded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::vector::RationalVector;

/// A rational in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Rational", into = "Rational")]
pub struct BoundaryCoefficient(Rational);

impl BoundaryCoefficient {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() || value > Rational::one() {
            return Err(Error::domain(format!("boundary coefficient {value} outside [0, 1]")));
        }
        Ok(BoundaryCoefficient(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }
}

impl TryFrom<Rational> for BoundaryCoefficient {
    type Error = Error;

    fn try_from(value: Rational) -> Result<Self> {
        BoundaryCoefficient::new(value)
    }
}

impl From<BoundaryCoefficient> for Rational {
    fn from(b: BoundaryCoefficient) -> Rational {
        b.0
    }
}

fn check_index(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("complement index n must be positive"));
    }
    Ok(())
}

/// `a^[n]` for an already validated coefficient.
pub(crate) fn round_unchecked(a: &Rational, n: u64) -> Rational {
    if a.is_one() {
        return Rational::one();
    }
    let n = Rational::from(n);
    (&(&n + &Rational::one()) * a).floor() / n
}

/// `a^[n]`: `1` if `a = 1`, else `floor((n + 1) a) / n`.
pub fn round_coeff(a: &BoundaryCoefficient, n: u64) -> Result<Rational> {
    check_index(n)?;
    Ok(round_unchecked(a.value(), n))
}

/// [`round_coeff`] on a raw rational, validating the range first.
pub fn round_rational(a: &Rational, n: u64) -> Result<Rational> {
    round_coeff(&BoundaryCoefficient::new(a.clone())?, n)
}

/// Componentwise `a^[n]`.
pub fn round_vector(b: &[BoundaryCoefficient], n: u64) -> Result<RationalVector> {
    check_index(n)?;
    RationalVector::new(b.iter().map(|a| round_unchecked(a.value(), n)).collect())
}

/// Whether `d_plus` may replace `d` in an n-complement: `d_plus >= d^[n]`.
pub fn complement_coeff_ok(d: &BoundaryCoefficient, d_plus: &Rational, n: u64) -> Result<bool> {
    Ok(*d_plus >= round_coeff(d, n)?)
}
