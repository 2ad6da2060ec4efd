//! Bounded complements on curves.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::classify::{classify, component_degree_data, top_up, CurveTag};
use super::{BoundaryPoint, CurvePair};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rounding::{complement_coeff_ok, round_unchecked, BoundaryCoefficient};

/// Joins pairs of multiplicities below `threshold` until at most one is
/// left. Entries at or above the threshold keep their order and come first;
/// merged values follow.
pub fn merge_small_multiplicities(b: &[Rational], threshold: &Rational) -> Result<Vec<Rational>> {
    if !threshold.is_positive() || *threshold > Rational::new(1, 2) {
        return Err(Error::domain("merge threshold must lie in (0, 1/2]"));
    }
    if let Some(x) = b.iter().find(|x| x.is_negative() || **x > Rational::one()) {
        return Err(Error::domain(format!("multiplicity {x} is outside [0, 1]")));
    }
    let (mut out, mut small): (Vec<Rational>, Vec<Rational>) = b.iter().cloned().partition(|x| x >= threshold);
    small.reverse();
    while small.len() >= 2 {
        let a = small.pop().unwrap();
        let sum = a + small.pop().unwrap();
        if sum < *threshold {
            small.push(sum);
        } else {
            out.push(sum);
        }
    }
    out.extend(small);
    Ok(out)
}

/// An `n`-complement `B⁺` of a curve pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NComplement {
    pub n: u64,
    pub boundary: Vec<BoundaryPoint>,
    /// `B⁺` uses points outside the support of `B`
    pub supports_extended: bool,
}

/// Smallest candidate `n` with an `n`-complement and one such complement.
///
/// On components with positive `-deg K` the multiplicities are first merged
/// below 1/2, and `n` must round the merged list within that degree. `B⁺`
/// starts at the rounding of `B` and is topped up to the required degrees.
pub fn find_n_complement(c: &CurvePair, candidates: &BTreeSet<u64>) -> Result<NComplement> {
    if candidates.is_empty() {
        return Err(Error::Precondition("candidate set is empty".into()));
    }
    if candidates.contains(&0) {
        return Err(Error::domain("candidates must be positive"));
    }
    if classify(c).tag == CurveTag::NoRComplement {
        return Err(Error::Precondition("the pair has no ℝ-complement".into()));
    }
    let half = Rational::new(1, 2);
    let groups = component_degree_data(c)
        .into_iter()
        .filter(|d| d.anticanonical_degree() > 0)
        .map(|d| {
            let own: Vec<Rational> = c
                .boundary()
                .iter()
                .filter(|p| p.component == d.id)
                .map(|p| p.mult.clone())
                .collect();
            let merged = merge_small_multiplicities(&own, &half)?;
            Ok((Rational::from_integer(d.anticanonical_degree()), merged))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = candidates
        .iter()
        .copied()
        .find(|&n| {
            groups
                .iter()
                .all(|(cap, merged)| merged.iter().map(|x| round_unchecked(x, n)).sum::<Rational>() <= *cap)
        })
        .ok_or_else(|| Error::NotFound(format!("no candidate in {candidates:?} satisfies the capacities")))?;
    let start = c
        .boundary()
        .iter()
        .map(|p| BoundaryPoint {
            mult: round_unchecked(&p.mult, n),
            ..p.clone()
        })
        .collect();
    let r = top_up(c, start);
    Ok(NComplement {
        n,
        boundary: r.boundary,
        supports_extended: r.supports_extended,
    })
}

/// Whether `b_plus` is an `n`-complement of `(C, B)`: it dominates `B` in
/// the rounded sense, has multiplicities in `[0, 1]` with `n·B⁺` integral,
/// and `K + B⁺` has degree 0 on every component.
pub fn is_n_complement(c: &CurvePair, b_plus: &[BoundaryPoint], n: u64) -> bool {
    if n == 0 || classify(c).tag == CurveTag::NoRComplement {
        return false;
    }
    let nq = Rational::from(n);
    let mut seen: BTreeMap<&str, &BoundaryPoint> = BTreeMap::new();
    for p in b_plus {
        if seen.insert(&p.point, p).is_some()
            || !c.components().iter().any(|k| k.id == p.component)
            || p.mult.is_negative()
            || p.mult > Rational::one()
            || !(&p.mult * &nq).is_integer()
        {
            return false;
        }
    }
    for p in c.boundary() {
        let plus = match seen.get(p.point.as_str()) {
            Some(q) if q.component != p.component => return false,
            Some(q) => q.mult.clone(),
            None => Rational::zero(),
        };
        let b = BoundaryCoefficient::new(p.mult.clone()).expect("validated multiplicity");
        if !complement_coeff_ok(&b, &plus, n).unwrap_or(false) {
            return false;
        }
    }
    component_degree_data(c).iter().all(|d| {
        let deg: Rational = b_plus.iter().filter(|p| p.component == d.id).map(|p| &p.mult).sum();
        deg == Rational::from_integer(d.anticanonical_degree())
    })
}
