//! Exact rational numbers.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with
//! the sign on the numerator. Values whose numerator and denominator fit in an
//! `i64` are stored inline and combined through `i128` intermediates; anything
//! larger spills to a pair of `BigInt`s. The representation is canonical, so
//! derived equality and hashing agree with numeric equality.
//!
//! Text format: an optional leading `-` (or U+2212), digits, and either an
//! optional `/` followed by digits or a decimal fraction. Whitespace anywhere
//! is ignored. Decimals are converted exactly (`"0.6"` is `3/5`).

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact fraction in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // den > 0, gcd(|num|, den) = 1, num != i64::MIN
    Small { num: i64, den: i64 },
    // only used when the value does not fit `Small`
    Big { num: BigInt, den: BigInt },
}

fn fits_small(num: i128, den: i128) -> bool {
    num > i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128
}

impl Rational {
    /// Builds `num/den`, reducing to lowest terms.
    ///
    /// Panics if `den == 0`, like integer division.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    /// Builds `num/den` from big integers; fails on a zero denominator.
    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        Ok(Self::normalize_big(num, den))
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if fits_small(num, den) {
            Rational(Repr::Small {
                num: num as i64,
                den: den as i64,
            })
        } else {
            Rational(Repr::Big {
                num: BigInt::from(num),
                den: BigInt::from(den),
            })
        }
    }

    fn normalize_big(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        match (num.to_i128(), den.to_i128()) {
            (Some(n), Some(d)) if fits_small(n, d) => Rational(Repr::Small {
                num: n as i64,
                den: d as i64,
            }),
            _ => Rational(Repr::Big { num, den }),
        }
    }

    fn to_bigs(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small { num, den } => (BigInt::from(*num), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_bigs().0
    }

    pub fn denom(&self) -> BigInt {
        self.to_bigs().1
    }

    /// The denominator as a machine integer, when it fits.
    pub fn denom_u64(&self) -> Option<u64> {
        match &self.0 {
            Repr::Small { den, .. } => Some(*den as u64),
            Repr::Big { den, .. } => den.to_u64(),
        }
    }

    /// `(numerator, denominator)` as machine integers, when both fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small { num, den } => Some((*num, *den)),
            Repr::Big { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big { den, .. } => den.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big { num, .. } => num.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num > 0,
            Repr::Big { num, .. } => num.is_positive(),
        }
    }

    pub fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Greatest integer `<= self`, as a rational.
    pub fn floor(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational::from_integer(num.div_euclid(*den)),
            Repr::Big { num, den } => Self::normalize_big(num.div_floor(den), BigInt::one()),
        }
    }

    /// Least integer `>= self`, as a rational.
    pub fn ceil(&self) -> Rational {
        -(-self).floor()
    }

    pub fn floor_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(num.div_euclid(*den)),
            Repr::Big { num, den } => num.div_floor(den),
        }
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big { num, den } => Self::normalize_big(den.clone(), num.clone()),
        })
    }

    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        rhs.recip().map(|r| self * &r)
    }

    /// Decimal rendering with `digits` fractional digits, rounded half away
    /// from zero. Computed with integers only.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let (num, den) = self.to_bigs();
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = num.abs() * &scale;
        let (q, r) = scaled.div_rem(&den);
        let q = if r * 2u32 >= den { q + 1u32 } else { q };
        let mut body = q.to_string();
        if digits > 0 {
            if body.len() <= digits {
                body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
            }
            body.insert(body.len() - digits, '.');
        }
        let is_zero_rendered = body.chars().all(|c| c == '0' || c == '.');
        if num.is_negative() && !is_zero_rendered {
            format!("-{body}")
        } else {
            body
        }
    }

    fn add_ref(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a + c, b)
                } else {
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => {
                let (a, b) = self.to_bigs();
                let (c, d) = rhs.to_bigs();
                Self::normalize_big(&a * &d + &c * &b, b * d)
            }
        }
    }

    fn mul_ref(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => {
                let (a, b) = self.to_bigs();
                let (c, d) = rhs.to_bigs();
                Self::normalize_big(a * c, b * d)
            }
        }
    }

    fn neg_ref(&self) -> Rational {
        match &self.0 {
            // num != i64::MIN, so negation cannot overflow
            Repr::Small { num, den } => Rational(Repr::Small { num: -*num, den: *den }),
            Repr::Big { num, den } => Self::normalize_big(-num.clone(), den.clone()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_i128(n as i128, 1)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::from_i128(n as i128, 1)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::normalize_big(n, BigInt::one())
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => {
                let (a, b) = self.to_bigs();
                let (c, d) = other.to_bigs();
                (a * d).cmp(&(c * b))
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $imp<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(self, rhs)
            }
        }
        impl<'b> $imp<&'b Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $imp<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
        impl $imp<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a
    .mul_ref(&b.recip().expect("division by zero rational")));

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = self.mul_ref(rhs);
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big { num, den } if den.is_one() => write!(f, "{num}"),
            Repr::Big { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, input: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::ParseRational {
            input: input.to_string(),
            reason: format!("expected digits, found {s:?}"),
        });
    }
    Ok(BigInt::parse_bytes(s.as_bytes(), 10).expect("validated digits"))
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let (negative, body) = if let Some(rest) = compact.strip_prefix('-') {
            (true, rest)
        } else if let Some(rest) = compact.strip_prefix('\u{2212}') {
            (true, rest)
        } else {
            (false, compact.as_str())
        };
        let value = if let Some((p, q)) = body.split_once('/') {
            let num = parse_digits(p, input)?;
            let den = parse_digits(q, input)?;
            if den.is_zero() {
                return Err(Error::ParseRational {
                    input: input.to_string(),
                    reason: "zero denominator".into(),
                });
            }
            Rational::normalize_big(num, den)
        } else if let Some((int, frac)) = body.split_once('.') {
            let int = if int.is_empty() && !frac.is_empty() {
                BigInt::zero()
            } else {
                parse_digits(int, input)?
            };
            let frac_num = if frac.is_empty() {
                BigInt::zero()
            } else {
                parse_digits(frac, input)?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            Rational::normalize_big(int * &scale + frac_num, scale)
        } else {
            Rational::normalize_big(parse_digits(body, input)?, BigInt::one())
        };
        Ok(if negative { -value } else { value })
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational such as \"3/5\", \"-2\" or \"0.6\", or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational::from(v))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Greatest integer `<= a`.
pub fn floor_rational(a: &Rational) -> BigInt {
    a.floor_bigint()
}

/// Parses a comma separated list of rationals, e.g. `"1/2, 0.25,1"`.
pub fn parse_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn floor_examples() {
        assert_eq!(floor_rational(&q("3/2")), BigInt::from(1));
        assert_eq!(floor_rational(&q("-1/2")), BigInt::from(-1));
        assert_eq!(floor_rational(&q("2")), BigInt::from(2));
    }

    #[test]
    fn parses_text_forms() {
        assert_eq!(q("0.6"), Rational::new(3, 5));
        assert_eq!(q(" - 3 / 4 "), Rational::new(-3, 4));
        assert_eq!(q("\u{2212}5"), Rational::from_integer(-5));
        assert_eq!(q("6/4"), Rational::new(3, 2));
        assert_eq!(q(".5"), Rational::new(1, 2));
        assert_eq!(q("0.4142135"), Rational::new(4142135, 10_000_000));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!(".".parse::<Rational>().is_err());
    }

    #[test]
    fn display_and_serde() {
        assert_eq!(Rational::new(-6, 4).to_string(), "-3/2");
        assert_eq!(Rational::from_integer(7).to_string(), "7");
        let json = serde_json::to_string(&Rational::new(5, 12)).unwrap();
        assert_eq!(json, "\"5/12\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Rational::new(5, 12));
        let int: Rational = serde_json::from_str("3").unwrap();
        assert_eq!(int, Rational::from_integer(3));
    }

    #[test]
    fn overflow_spills_to_big_and_back() {
        let big = Rational::from_integer(i64::MAX) + Rational::one();
        assert_eq!(big.to_string(), "9223372036854775808");
        let back = &big - &Rational::one();
        assert_eq!(back, Rational::from_integer(i64::MAX));
        assert!(back.to_i64_pair().is_some());
        let tiny = Rational::new(1, i64::MAX) * Rational::new(1, 3);
        assert_eq!(tiny.denom(), BigInt::from(i64::MAX) * 3);
        assert!(tiny < Rational::new(1, i64::MAX));
        let min = Rational::from_integer(i64::MIN);
        assert_eq!((-&min).to_string(), "9223372036854775808");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::new(1, 3).to_decimal_string(4), "0.3333");
        assert_eq!(Rational::new(2, 3).to_decimal_string(2), "0.67");
        assert_eq!(Rational::new(-1, 8).to_decimal_string(2), "-0.13");
        assert_eq!(Rational::new(-1, 1000).to_decimal_string(2), "0.00");
        assert_eq!(Rational::new(5, 2).to_decimal_string(0), "3");
        assert_eq!(Rational::new(12, 1).to_decimal_string(1), "12.0");
    }

    fn big_pair(r: &Rational) -> (BigInt, BigInt) {
        (r.numer(), r.denom())
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (-50i64..50, 1i64..50).prop_map(|(n, d)| Rational::new(n, d)),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d)),
            (any::<i64>(), any::<i64>(), 1i64..i64::MAX)
                .prop_map(|(a, b, d)| { Rational::from(BigInt::from(a) * BigInt::from(b)) / Rational::new(1, d) }),
        ]
    }

    // Independent route: plain BigInt cross-multiplication.
    fn oracle_add(a: &Rational, b: &Rational) -> (BigInt, BigInt) {
        let (an, ad) = big_pair(a);
        let (bn, bd) = big_pair(b);
        let num = &an * &bd + &bn * &ad;
        let den = ad * bd;
        let g = num.gcd(&den);
        (num / &g, den / g)
    }

    proptest! {
        #[test]
        fn addition_matches_bigint_oracle(a in arb_rational(), b in arb_rational()) {
            prop_assert_eq!(big_pair(&(&a + &b)), oracle_add(&a, &b));
        }

        #[test]
        fn lowest_terms_and_positive_denominator(a in arb_rational(), b in arb_rational()) {
            for r in [&a * &b, &a - &b, &a + &b] {
                let (n, d) = big_pair(&r);
                prop_assert!(d.is_positive());
                prop_assert!(n.gcd(&d).is_one());
            }
        }

        #[test]
        fn ordering_matches_cross_multiplication(a in arb_rational(), b in arb_rational()) {
            let (an, ad) = big_pair(&a);
            let (bn, bd) = big_pair(&b);
            prop_assert_eq!(a.cmp(&b), (an * bd).cmp(&(bn * ad)));
        }

        #[test]
        fn division_inverts_multiplication(a in arb_rational(), b in arb_rational()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(&(&a * &b) / &b, a);
        }

        #[test]
        fn format_parse_round_trip(a in arb_rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }

        #[test]
        fn floor_is_greatest_integer_below(a in arb_rational()) {
            let f = a.floor();
            prop_assert!(f.is_integer());
            prop_assert!(f <= a);
            prop_assert!(a < &f + &Rational::one());
        }

        #[test]
        fn sum_of_floors_at_most_floor_of_sum(xs in proptest::collection::vec(arb_rational(), 0..12)) {
            let lhs: Rational = xs.iter().map(Rational::floor).sum();
            let rhs = xs.iter().sum::<Rational>().floor();
            prop_assert!(lhs <= rhs);
        }
    }
}
