//! Kodaira fiber tables for minimal elliptic fibrations.
//!
//! Each fiber type over a point `P` contributes the coefficient `d_P` of the
//! divisorial part of adjunction, and `K + p f*P` has a fixed index once `p`
//! makes the pair maximally lc. Every such index divides the adjunction index
//! 12 of an elliptic fibration.
//!
//! The threshold `p` itself depends on the fiber's component multiplicities
//! and is not computed here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Adjunction index of a 0-contraction whose fibers are elliptic curves.
pub const ELLIPTIC_ADJUNCTION_INDEX: u64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum KodairaType {
    /// `mI_n`: multiplicity `m >= 1`, `n >= 0` components.
    MultipleI {
        m: u32,
        n: u32,
    },
    II,
    III,
    IV,
    /// `I*_b`.
    IStar {
        b: u32,
    },
    IIStar,
    IIIStar,
    IVStar,
}

impl KodairaType {
    pub fn multiple_i(m: u32, n: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("fiber multiplicity m must be at least 1"));
        }
        Ok(KodairaType::MultipleI { m, n })
    }

    /// One representative of each row of the table, in table order.
    pub fn table_rows() -> [KodairaType; 8] {
        use KodairaType::*;
        [
            MultipleI { m: 1, n: 0 },
            II,
            III,
            IV,
            IStar { b: 0 },
            IIStar,
            IIIStar,
            IVStar,
        ]
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use KodairaType::*;
        match self {
            MultipleI { m: 1, n } => write!(f, "I{n}"),
            MultipleI { m, n } => write!(f, "{m}I{n}"),
            II => f.write_str("II"),
            III => f.write_str("III"),
            IV => f.write_str("IV"),
            IStar { b } => write!(f, "I{b}*"),
            IIStar => f.write_str("II*"),
            IIIStar => f.write_str("III*"),
            IVStar => f.write_str("IV*"),
        }
    }
}

fn parse_u32(s: &str, input: &str) -> Result<u32> {
    s.parse()
        .map_err(|_| Error::domain(format!("unrecognised Kodaira type {input:?}")))
}

impl FromStr for KodairaType {
    type Err = Error;

    /// Accepts `II`, `III`, `IV`, their starred forms, `I*b` / `Ib*` (`I*`
    /// alone is `I*0`), `In` and `mIn`. Underscores and whitespace are
    /// ignored, so `2I_3` and `I*_1` also parse.
    fn from_str(input: &str) -> Result<Self> {
        use KodairaType::*;
        let s: String = input.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
        let fixed = match s.as_str() {
            "II" => Some(II),
            "III" => Some(III),
            "IV" => Some(IV),
            "II*" => Some(IIStar),
            "III*" => Some(IIIStar),
            "IV*" => Some(IVStar),
            "I*" => Some(IStar { b: 0 }),
            _ => None,
        };
        if let Some(t) = fixed {
            return Ok(t);
        }
        if let Some(b) = s.strip_prefix("I*") {
            return Ok(IStar {
                b: parse_u32(b, input)?,
            });
        }
        if let Some(body) = s.strip_suffix('*') {
            if let Some(b) = body.strip_prefix('I') {
                return Ok(IStar {
                    b: parse_u32(b, input)?,
                });
            }
        }
        if let Some((m, n)) = s.split_once('I') {
            let m = if m.is_empty() { 1 } else { parse_u32(m, input)? };
            return KodairaType::multiple_i(m, parse_u32(n, input)?);
        }
        Err(Error::domain(format!("unrecognised Kodaira type {input:?}")))
    }
}

impl TryFrom<String> for KodairaType {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<KodairaType> for String {
    fn from(t: KodairaType) -> String {
        t.to_string()
    }
}

/// Coefficient `d_P` of the divisorial part of adjunction.
pub fn divisorial_coeff(t: KodairaType) -> Rational {
    use KodairaType::*;
    match t {
        MultipleI { m, .. } => Rational::one() - Rational::new(1, m as i64),
        II => Rational::new(1, 6),
        III => Rational::new(1, 4),
        IV => Rational::new(1, 3),
        IStar { .. } => Rational::new(1, 2),
        IIStar => Rational::new(5, 6),
        IIIStar => Rational::new(3, 4),
        IVStar => Rational::new(2, 3),
    }
}

/// Index of `K + p f*P` for the maximally lc `p`.
pub fn complement_index(t: KodairaType) -> u64 {
    use KodairaType::*;
    match t {
        MultipleI { .. } => 1,
        IStar { .. } => 2,
        II | IIStar => 6,
        III | IIIStar => 4,
        IV | IVStar => 3,
    }
}

pub fn adjunction_index_elliptic() -> u64 {
    ELLIPTIC_ADJUNCTION_INDEX
}
