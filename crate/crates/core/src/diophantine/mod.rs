//! Complementary indices.
//!
//! An integer `n` is under complementary restrictions for `(I, v, e, ε)` when
//! some `v_n` satisfies
//!
//! 1. `I | n`,
//! 2. `n v_n ∈ ℤ^l`,
//! 3. `‖v_n - v‖ < ε / n`,
//! 4. `‖(v_n - v)/‖v_n - v‖ - e‖ < ε`,
//!
//! with the maximum-absolute-value norm throughout. The target `v` is meant to
//! be a nonrational real vector; here it is an exact rational surrogate, so all
//! four conditions are decided exactly. A candidate equal to `v` is never a
//! witness since condition 4 is undefined for it.
//!
//! The affine-span condition on `e` is not checked: for a rational surrogate it
//! carries no information, so `e` is taken as given.

mod covering;

pub use covering::{
    construct_covering_set, farey_grid, find_simultaneous_n, verify_covering, CoverConstruction, CoveringProblem,
    CoveringVerdict,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::vector::{linf_norm, RationalVector};

/// The data `(I, v, e, ε)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionData {
    divisor: u64,
    v: RationalVector,
    e: RationalVector,
    epsilon: Rational,
}

impl RestrictionData {
    pub fn new(divisor: u64, v: RationalVector, e: RationalVector, epsilon: Rational) -> Result<Self> {
        if divisor == 0 {
            return Err(Error::domain("divisor I must be at least 1"));
        }
        if v.dim() != e.dim() {
            return Err(Error::Dimension {
                expected: v.dim(),
                found: e.dim(),
            });
        }
        if e.is_zero() {
            return Err(Error::domain("direction e must be nonzero"));
        }
        if !epsilon.is_positive() {
            return Err(Error::domain("epsilon must be positive"));
        }
        Ok(RestrictionData { divisor, v, e, epsilon })
    }

    pub fn divisor(&self) -> u64 {
        self.divisor
    }

    pub fn v(&self) -> &RationalVector {
        &self.v
    }

    pub fn e(&self) -> &RationalVector {
        &self.e
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    /// The same data with the divisor replaced.
    pub fn with_divisor(&self, divisor: u64) -> Result<Self> {
        Self::new(divisor, self.v.clone(), self.e.clone(), self.epsilon.clone())
    }
}

/// An index `n` together with its approximation `v_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionWitness {
    pub n: u64,
    pub v_n: RationalVector,
}

/// Checks the four complementary restrictions exactly.
pub fn check_restriction(w: &RestrictionWitness, data: &RestrictionData) -> Result<bool> {
    if w.v_n.dim() != data.dim() {
        return Err(Error::Dimension {
            expected: data.dim(),
            found: w.v_n.dim(),
        });
    }
    if w.n == 0 {
        return Err(Error::domain("index n must be positive"));
    }
    if !w.n.is_multiple_of(data.divisor) {
        return Ok(false);
    }
    let n = Rational::from(w.n);
    if !w.v_n.iter().all(|x| (x * &n).is_integer()) {
        return Ok(false);
    }
    let diff = &w.v_n - &data.v;
    let dist = diff.linf_norm();
    if dist.is_zero() || dist >= &data.epsilon / &n {
        return Ok(false);
    }
    let unit = diff.scale(&dist.recip().expect("nonzero"));
    Ok((&unit - &data.e).linf_norm() < data.epsilon)
}

fn nearest_integer(x: &Rational) -> Rational {
    let f = x.floor();
    if x - &f > Rational::new(1, 2) {
        f + Rational::one()
    } else {
        f
    }
}

/// Candidate approximations at level `n`: the componentwise nearest point
/// of `(1/n) ℤ^l` to `v`, optionally shifted by `1/n` in the direction of the
/// sign of each nonzero `e_i`. Shift patterns are produced in lexicographic
/// order with "no shift" first.
fn candidates(data: &RestrictionData, n: u64) -> Vec<RationalVector> {
    let nq = Rational::from(n);
    let base: Vec<Rational> = data.v.iter().map(|x| nearest_integer(&(x * &nq))).collect();
    let options: Vec<Vec<i64>> = data
        .e
        .iter()
        .map(|e| match e.signum() {
            0 => vec![0],
            s => vec![0, s as i64],
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; options.len()];
    loop {
        let entries = base
            .iter()
            .zip(&options)
            .zip(&choice)
            .map(|((b, opts), &c)| (b + &Rational::from_integer(opts[c])) / &nq)
            .collect();
        out.push(RationalVector::new(entries).expect("dimension >= 1"));
        // odometer with the first coordinate most significant
        let mut i = options.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if choice[i] + 1 < options[i].len() {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
        }
    }
}

/// The first candidate at level `n` passing [`check_restriction`], if any.
pub fn complementary_witness(data: &RestrictionData, n: u64) -> Option<RestrictionWitness> {
    if n == 0 || !n.is_multiple_of(data.divisor) {
        return None;
    }
    candidates(data, n)
        .into_iter()
        .filter(|v_n| *v_n != data.v)
        .map(|v_n| RestrictionWitness { n, v_n })
        .find(|w| check_restriction(w, data).unwrap_or(false))
}

/// Smallest `n ∈ {I, 2I, …} ∩ [1, n_max]` under complementary restrictions.
pub fn find_complementary_n(data: &RestrictionData, n_max: u64) -> Result<Option<RestrictionWitness>> {
    if n_max < data.divisor {
        return Err(Error::domain(format!(
            "n_max = {n_max} is below the divisor I = {}",
            data.divisor
        )));
    }
    Ok((1..=n_max / data.divisor)
        .map(|k| k * data.divisor)
        .find_map(|n| complementary_witness(data, n)))
}

/// An explicit radius for the continuity of normalised projections.
///
/// With `λ` the projection onto the first `l` coordinates and `N = ‖λ(e′)‖`,
/// returns `δ = min(N/2, ε N/4)`. For `‖x - e′‖ < δ` this gives
/// `‖λ(x)‖ > N/2 > 0` and
/// `‖λ(e′)/‖λ(e′)‖ - λ(x)/‖λ(x)‖‖ <= 2 ‖λ(x) - λ(e′)‖ / N < ε`.
pub fn continuity_delta(e_prime: &RationalVector, l: usize, epsilon: &Rational) -> Result<Rational> {
    if !epsilon.is_positive() {
        return Err(Error::domain("epsilon must be positive"));
    }
    let projected = e_prime.truncate(l)?;
    let norm = linf_norm(projected.entries())?;
    if norm.is_zero() {
        return Err(Error::domain("projection of e' onto the first l coordinates is zero"));
    }
    let half = &norm / &Rational::from_integer(2);
    let scaled = &(epsilon * &norm) / &Rational::from_integer(4);
    Ok(std::cmp::min(half, scaled))
}
