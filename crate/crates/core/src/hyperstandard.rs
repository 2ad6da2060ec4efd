//! Hyperstandard sets and their enlargements.
//!
//! For a finite set `ℛ ⊂ [0, 1]` the hyperstandard set is
//! `Φ(ℛ) = {1 - r/l : r ∈ ℛ, l ≥ 1} ∩ [0, 1]`. Given a finite set `𝒩` of
//! positive integers, `Γ(𝒩, Φ)` collects
//! `1 - r/l + (1/l) Σ_{n ∈ 𝒩} m_n/(n + 1)` over `r ∈ ℛ`, `l ≥ 1`, `m_n ≥ 0`,
//! again intersected with `[0, 1]`.
//!
//! Every element of `Γ` below 1 has the form `1 - t/l` where `t = r - s`,
//! `s = Σ m_n/(n + 1)` and `0 < t <= r <= 1`. Only finitely many such
//! residues `t` exist (each `m_n <= n + 1` because `s <= 1`), so every query
//! reduces to a scan over the residue set, which is computed once per
//! [`GammaSpec`] and cached. An empty `𝒩` gives `Γ(∅, Φ) = Φ`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The finite set `ℛ`. Always contains 0 and 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct RSet(BTreeSet<Rational>);

impl RSet {
    /// `{0, 1}`, the standard multiplicities.
    pub fn standard() -> Self {
        RSet([Rational::zero(), Rational::one()].into_iter().collect())
    }

    /// Builds `ℛ` from arbitrary values in `[0, 1]`; 0 and 1 are added if
    /// missing and duplicates are merged.
    pub fn new(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let mut set = RSet::standard().0;
        for v in values {
            if v.is_negative() || v > Rational::one() {
                return Err(Error::domain(format!("element {v} of R outside [0, 1]")));
            }
            set.insert(v);
        }
        Ok(RSet(set))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Default for RSet {
    fn default() -> Self {
        RSet::standard()
    }
}

impl TryFrom<Vec<Rational>> for RSet {
    type Error = Error;

    fn try_from(v: Vec<Rational>) -> Result<Self> {
        RSet::new(v)
    }
}

impl From<RSet> for Vec<Rational> {
    fn from(r: RSet) -> Self {
        r.0.into_iter().collect()
    }
}

impl fmt::Debug for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

/// Descriptor of `Γ(𝒩, Φ(ℛ))`.
#[derive(Serialize, Deserialize)]
pub struct GammaSpec {
    r_set: RSet,
    n_set: BTreeSet<u64>,
    #[serde(skip)]
    residues: OnceLock<Vec<Rational>>,
}

impl GammaSpec {
    pub fn new(r_set: RSet, n_set: impl IntoIterator<Item = u64>) -> Result<Self> {
        let n_set: BTreeSet<u64> = n_set.into_iter().collect();
        if n_set.contains(&0) {
            return Err(Error::domain("elements of N must be positive integers"));
        }
        Ok(GammaSpec {
            r_set,
            n_set,
            residues: OnceLock::new(),
        })
    }

    /// `Γ(𝒩, Φ({0, 1}))`.
    pub fn standard(n_set: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(RSet::standard(), n_set)
    }

    pub fn r_set(&self) -> &RSet {
        &self.r_set
    }

    pub fn n_set(&self) -> &BTreeSet<u64> {
        &self.n_set
    }

    /// All sums `Σ m_n/(n + 1)` lying in `[0, 1]`.
    fn partial_sums(&self) -> BTreeSet<Rational> {
        let mut sums: BTreeSet<Rational> = [Rational::zero()].into_iter().collect();
        for &n in &self.n_set {
            let step = Rational::new(1, n as i64 + 1);
            let mut next = BTreeSet::new();
            for s in &sums {
                let mut x = s.clone();
                while x <= Rational::one() {
                    next.insert(x.clone());
                    x += &step;
                }
            }
            sums = next;
        }
        sums
    }

    /// The residues `t = r - s >= 0`, sorted ascending. Cached.
    pub fn residues(&self) -> &[Rational] {
        self.residues.get_or_init(|| {
            let sums = self.partial_sums();
            let mut out = BTreeSet::new();
            for r in self.r_set.iter() {
                for s in sums.range(..=r.clone()) {
                    out.insert(r - s);
                }
            }
            out.into_iter().collect()
        })
    }

    fn positive_residues(&self) -> impl Iterator<Item = &Rational> {
        self.residues().iter().filter(|t| t.is_positive())
    }
}

impl Clone for GammaSpec {
    fn clone(&self) -> Self {
        GammaSpec {
            r_set: self.r_set.clone(),
            n_set: self.n_set.clone(),
            residues: self.residues.clone(),
        }
    }
}

impl PartialEq for GammaSpec {
    fn eq(&self, other: &Self) -> bool {
        self.r_set == other.r_set && self.n_set == other.n_set
    }
}

impl Eq for GammaSpec {}

impl fmt::Debug for GammaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GammaSpec")
            .field("r_set", &self.r_set)
            .field("n_set", &self.n_set)
            .finish()
    }
}

fn check_unit(b: &Rational) -> Result<()> {
    if b.is_negative() || *b > Rational::one() {
        return Err(Error::domain(format!("{b} outside [0, 1]")));
    }
    Ok(())
}

/// Whether `t / gap` is a positive integer.
fn exact_index(t: &Rational, gap: &Rational) -> bool {
    let l = t / gap;
    l.is_integer() && l.is_positive()
}

/// Whether `b = 1 - r/l` for some `r ∈ ℛ` and positive integer `l`.
pub fn phi_contains(b: &Rational, r_set: &RSet) -> Result<bool> {
    check_unit(b)?;
    if b.is_one() {
        return Ok(true);
    }
    let gap = Rational::one() - b;
    Ok(r_set.iter().any(|r| exact_index(r, &gap)))
}

/// Exact membership in `Γ(𝒩, Φ)`.
pub fn gamma_contains(b: &Rational, spec: &GammaSpec) -> Result<bool> {
    check_unit(b)?;
    if b.is_one() {
        return Ok(true);
    }
    let gap = Rational::one() - b;
    Ok(spec.positive_residues().any(|t| exact_index(t, &gap)))
}

/// `Γ(𝒩, Φ) ∩ [0, cutoff]`, sorted and without duplicates.
///
/// Finite because `1 - t/l <= cutoff` forces `l <= t / (1 - cutoff)`.
pub fn gamma_enumerate_upto(cutoff: &Rational, spec: &GammaSpec) -> Result<Vec<Rational>> {
    if cutoff.is_negative() || *cutoff >= Rational::one() {
        return Err(Error::domain(format!("enumeration cutoff {cutoff} must lie in [0, 1)")));
    }
    let gap = Rational::one() - cutoff;
    let mut out = BTreeSet::new();
    for t in spec.positive_residues() {
        let l_max = (t / &gap).floor();
        let mut l = Rational::one();
        while l <= l_max {
            out.insert(Rational::one() - t / &l);
            l += &Rational::one();
        }
    }
    Ok(out.into_iter().collect())
}

/// The largest element of `Γ(𝒩, Φ)` not exceeding `b`.
pub fn low_approx(b: &Rational, spec: &GammaSpec) -> Result<Rational> {
    check_unit(b)?;
    if b.is_one() {
        return Ok(Rational::one());
    }
    let gap = Rational::one() - b;
    let best = spec
        .positive_residues()
        .filter_map(|t| {
            let l = (t / &gap).floor();
            l.is_positive().then(|| Rational::one() - t / &l)
        })
        .max()
        // t = 1 is always a residue and yields 0 <= b
        .expect("1 ∈ R guarantees a candidate");
    Ok(best)
}

/// [`low_approx`] applied to every coefficient of a boundary.
pub fn low_approx_boundary(b: &[Rational], spec: &GammaSpec) -> Result<Vec<Rational>> {
    b.iter().map(|x| low_approx(x, spec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rounding::round_rational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn spec(ns: &[u64]) -> GammaSpec {
        GammaSpec::standard(ns.iter().copied()).unwrap()
    }

    /// Direct search over the defining representation: `r ∈ ℛ`,
    /// `l <= 1/(1-b)` and every `m_n <= n + 1`.
    fn brute_contains(b: &Rational, r_set: &RSet, ns: &[u64]) -> bool {
        if b.is_one() {
            return true;
        }
        let l_max = (Rational::one() / (Rational::one() - b)).floor();
        let mut sums = vec![Rational::zero()];
        for &n in ns {
            let mut next = Vec::new();
            for s in &sums {
                for m in 0..=(n + 1) {
                    next.push(s + &q(m as i64, n as i64 + 1));
                }
            }
            sums = next;
        }
        let mut l = Rational::one();
        while l <= l_max {
            for r in r_set.iter() {
                for s in &sums {
                    let value = Rational::one() - r / &l + s / &l;
                    if value == *b {
                        return true;
                    }
                }
            }
            l += &Rational::one();
        }
        false
    }

    #[test]
    fn phi_examples() {
        let r = RSet::standard();
        assert!(phi_contains(&q(5, 6), &r).unwrap());
        assert!(phi_contains(&q(1, 1), &r).unwrap());
        assert!(!phi_contains(&q(5, 7), &r).unwrap());
        assert!(phi_contains(&q(3, 2), &r).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert!(gamma_contains(&q(5, 6), &spec(&[2])).unwrap());
        assert!(gamma_contains(&q(1, 1), &spec(&[3, 5])).unwrap());
        assert!(!gamma_contains(&q(5, 7), &spec(&[2])).unwrap());
        assert!(brute_contains(&q(5, 6), &RSet::standard(), &[2]));
        assert!(!brute_contains(&q(5, 7), &RSet::standard(), &[2]));
        assert!(gamma_contains(&q(-1, 7), &spec(&[2])).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(gamma_enumerate_upto(&q(0, 1), &spec(&[1])).unwrap(), vec![q(0, 1)]);
        assert_eq!(
            gamma_enumerate_upto(&q(3, 5), &spec(&[1, 2])).unwrap(),
            vec![q(0, 1), q(1, 3), q(1, 2)]
        );
        assert_eq!(gamma_enumerate_upto(&q(1, 4), &spec(&[1])).unwrap(), vec![q(0, 1)]);
        assert!(gamma_enumerate_upto(&q(1, 1), &spec(&[1])).is_err());
        assert!(gamma_enumerate_upto(&q(-1, 2), &spec(&[1])).is_err());
    }

    #[test]
    fn low_approx_examples() {
        assert_eq!(low_approx(&q(1, 1), &spec(&[4])).unwrap(), q(1, 1));
        assert_eq!(low_approx(&q(3, 5), &spec(&[1, 2])).unwrap(), q(1, 2));
        assert_eq!(low_approx(&q(0, 1), &spec(&[4, 5])).unwrap(), q(0, 1));
        assert!(low_approx(&q(2, 1), &spec(&[1])).is_err());
    }

    #[test]
    fn empty_n_set_is_phi() {
        let s = GammaSpec::new(RSet::standard(), []).unwrap();
        for d in 1..=12 {
            for n in 0..=d {
                let b = q(n, d);
                assert_eq!(
                    gamma_contains(&b, &s).unwrap(),
                    phi_contains(&b, &RSet::standard()).unwrap()
                );
            }
        }
    }

    #[test]
    fn rset_always_contains_standard() {
        let r = RSet::new([q(1, 3)]).unwrap();
        let v: Vec<_> = r.iter().cloned().collect();
        assert_eq!(v, vec![q(0, 1), q(1, 3), q(1, 1)]);
        assert!(RSet::new([q(4, 3)]).is_err());
        assert!(GammaSpec::standard([0]).is_err());
    }

    #[test]
    fn membership_matches_brute_force() {
        let r = RSet::new([q(1, 2)]).unwrap();
        for ns in [&[][..], &[1], &[2], &[1, 3], &[2, 4]] {
            let s = GammaSpec::new(r.clone(), ns.iter().copied()).unwrap();
            for d in 1..=14 {
                for n in 0..=d {
                    let b = q(n, d);
                    assert_eq!(
                        gamma_contains(&b, &s).unwrap(),
                        brute_contains(&b, &r, ns),
                        "b = {b}, N = {ns:?}"
                    );
                }
            }
        }
    }

    fn arb_ns() -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::btree_set(1u64..7, 0..4).prop_map(|s| s.into_iter().collect())
    }

    fn arb_unit() -> impl Strategy<Value = Rational> {
        (1i64..80)
            .prop_flat_map(|d| (0..=d, Just(d)))
            .prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn phi_inside_gamma(ns in arb_ns(), b in arb_unit()) {
            if phi_contains(&b, &RSet::standard()).unwrap() {
                prop_assert!(gamma_contains(&b, &spec(&ns)).unwrap());
            }
        }

        #[test]
        fn enumeration_agrees_with_membership(ns in arb_ns(), c in (1i64..10, 0i64..10)) {
            prop_assume!(c.1 < c.0);
            let cutoff = q(c.1, c.0);
            let s = spec(&ns);
            let listed = gamma_enumerate_upto(&cutoff, &s).unwrap();
            prop_assert!(listed.windows(2).all(|w| w[0] < w[1]));
            for x in &listed {
                prop_assert!(gamma_contains(x, &s).unwrap());
            }
            for d in 1..=24 {
                for n in 0..=d {
                    let b = q(n, d);
                    if b <= cutoff && gamma_contains(&b, &s).unwrap() {
                        prop_assert!(listed.contains(&b));
                    }
                }
            }
        }

        #[test]
        fn low_approx_preserves_rounding(ns in arb_ns(), b in arb_unit()) {
            let s = spec(&ns);
            let low = low_approx(&b, &s).unwrap();
            for &n in &ns {
                prop_assert_eq!(round_rational(&low, n).unwrap(), round_rational(&b, n).unwrap());
            }
        }

        #[test]
        fn low_approx_monotone_and_idempotent(ns in arb_ns(), a in arb_unit(), b in arb_unit()) {
            let s = spec(&ns);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let la = low_approx(&lo, &s).unwrap();
            prop_assert!(la <= low_approx(&hi, &s).unwrap());
            prop_assert_eq!(low_approx(&la, &s).unwrap(), la.clone());
            prop_assert!(la <= lo);
        }
    }
}
