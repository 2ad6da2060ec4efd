//! Simultaneous rounding under complementary restrictions.
//!
//! For capacities `c_1, …, c_m` and boundary vectors `B_i ∈ [0, 1]^d` with
//! `Σ_j b_ij <= c_i`, we look for indices `n` under complementary restrictions
//! such that `Σ_j b_ij^[n] <= c_i` for every `i`. A finite set of indices
//! serving every such tuple exists over the whole real cube; here coverage is
//! certified on the grid of entries with denominator at most a given bound.
//!
//! Rounding sums are invariant under permuting the entries of one block, so
//! the grid walk only visits blocks with nondecreasing entries. Tuples are
//! visited in lexicographic order of their entries, and "first" always refers
//! to that order. Grid arithmetic runs on integers scaled by
//! `lcm(1, …, denom_bound)`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::{complementary_witness, RestrictionData, RestrictionWitness};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rounding::round_unchecked;

/// Largest supported grid denominator; keeps the scaled grid inside `i64`.
pub const MAX_DENOM_BOUND: u64 = 40;

/// Restriction data plus the block shape `d` and capacities `c_1..c_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringProblem {
    data: RestrictionData,
    d: usize,
    capacities: Vec<Rational>,
}

impl CoveringProblem {
    pub fn new(data: RestrictionData, d: usize, capacities: Vec<Rational>) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("block length d must be at least 1"));
        }
        if capacities.is_empty() {
            return Err(Error::domain("at least one capacity is required"));
        }
        if let Some(c) = capacities.iter().find(|c| !c.is_positive()) {
            return Err(Error::domain(format!("capacity {c} is not positive")));
        }
        Ok(CoveringProblem { data, d, capacities })
    }

    pub fn data(&self) -> &RestrictionData {
        &self.data
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.capacities.len()
    }

    pub fn capacities(&self) -> &[Rational] {
        &self.capacities
    }

    /// `lcm(I, q_1, …, q_m)` with `q_i` the denominator of `c_i`.
    pub fn index_divisor(&self) -> Result<u64> {
        self.capacities.iter().try_fold(self.data.divisor(), |acc, c| {
            let q = c
                .denom_u64()
                .ok_or_else(|| Error::domain("capacity denominator too large"))?;
            Ok(acc.lcm(&q))
        })
    }

    fn validate(&self, boundaries: &[Vec<Rational>]) -> Result<()> {
        if boundaries.len() != self.m() {
            return Err(Error::Dimension {
                expected: self.m(),
                found: boundaries.len(),
            });
        }
        for (i, (b, c)) in boundaries.iter().zip(&self.capacities).enumerate() {
            if b.len() != self.d {
                return Err(Error::Precondition(format!(
                    "boundary {i} has {} entries, expected d = {}",
                    b.len(),
                    self.d
                )));
            }
            if let Some(x) = b.iter().find(|x| x.is_negative() || **x > Rational::one()) {
                return Err(Error::Precondition(format!(
                    "boundary {i} has entry {x} outside [0, 1]"
                )));
            }
            let total: Rational = b.iter().sum();
            if total > *c {
                return Err(Error::Precondition(format!(
                    "boundary {i} sums to {total}, above capacity {c}"
                )));
            }
        }
        Ok(())
    }

    fn fits(&self, boundaries: &[Vec<Rational>], n: u64) -> bool {
        boundaries
            .iter()
            .zip(&self.capacities)
            .all(|(b, c)| b.iter().map(|x| round_unchecked(x, n)).sum::<Rational>() <= *c)
    }
}

/// Smallest `n <= n_max` that is under complementary restrictions with
/// divisor `lcm(I, q_i)` and satisfies `Σ_j b_ij^[n] <= c_i` for all `i`.
pub fn find_simultaneous_n(
    problem: &CoveringProblem,
    boundaries: &[Vec<Rational>],
    n_max: u64,
) -> Result<Option<RestrictionWitness>> {
    problem.validate(boundaries)?;
    let step = problem.index_divisor()?;
    let data = problem.data.with_divisor(step)?;
    Ok((1..=n_max / step)
        .map(|k| k * step)
        .filter(|&n| problem.fits(boundaries, n))
        .find_map(|n| complementary_witness(&data, n)))
}

/// Outcome of [`verify_covering`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CoveringVerdict {
    Ok,
    /// An index of the set is not under complementary restrictions.
    Inadmissible {
        n: u64,
    },
    /// The first grid tuple no index of the set rounds within capacity.
    Counterexample {
        tuple: Vec<Vec<Rational>>,
    },
}

/// Outcome of [`construct_covering_set`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CoverConstruction {
    Covered {
        n_set: Vec<u64>,
    },
    /// No index up to `n_max` serves this tuple.
    Uncoverable {
        tuple: Vec<Vec<Rational>>,
    },
}

/// Rationals in `[0, 1]` with denominator at most `denom_bound`, ascending.
pub fn farey_grid(denom_bound: u64) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for q in 1..=denom_bound as i64 {
        for p in 0..=q {
            set.insert(Rational::new(p, q));
        }
    }
    set.into_iter().collect()
}

#[derive(Clone, Debug, Default)]
struct Bits(Vec<u64>);

impl Bits {
    fn with_len(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn any(&self) -> bool {
        self.0.iter().any(|&w| w != 0)
    }

    fn full(len: usize) -> Self {
        let mut b = Bits::with_len(len);
        for i in 0..len {
            b.set(i);
        }
        b
    }
}

/// The grid plus, per block position, all sorted blocks within capacity.
struct GridWalk {
    values: Vec<Rational>,
    /// `(p, q)` of each grid value
    parts: Vec<(i64, i64)>,
    d: usize,
    /// flattened blocks (stride `d`) of grid indices, one list per capacity
    blocks: Vec<Vec<u16>>,
    capacities: Vec<Rational>,
}

impl GridWalk {
    fn new(problem: &CoveringProblem, denom_bound: u64) -> Result<Self> {
        if denom_bound == 0 || denom_bound > MAX_DENOM_BOUND {
            return Err(Error::domain(format!("denom_bound must lie in [1, {MAX_DENOM_BOUND}]")));
        }
        let values = farey_grid(denom_bound);
        let scale = (1..=denom_bound as i64).fold(1i64, |acc, q| acc.lcm(&q));
        let parts: Vec<(i64, i64)> = values
            .iter()
            .map(|v| v.to_i64_pair().expect("small grid value"))
            .collect();
        let scaled: Vec<i64> = parts.iter().map(|&(p, q)| p * (scale / q)).collect();
        let blocks = problem
            .capacities
            .iter()
            .map(|c| {
                let cap = integer_floor(&(c * &Rational::from_integer(scale)));
                let mut out = Vec::new();
                let mut cur = vec![0u16; problem.d];
                push_blocks(&scaled, cap, 0, 0, 0, &mut cur, &mut out);
                out
            })
            .collect();
        Ok(GridWalk {
            values,
            parts,
            d: problem.d,
            blocks,
            capacities: problem.capacities.clone(),
        })
    }

    fn block_count(&self, level: usize) -> usize {
        self.blocks[level].len() / self.d
    }

    fn block(&self, level: usize, b: usize) -> &[u16] {
        &self.blocks[level][b * self.d..(b + 1) * self.d]
    }

    /// Whether `Σ_j b_j^[n] <= c_level` for block `b`.
    fn fits(&self, level: usize, b: usize, n: u64) -> bool {
        let n = n as i128;
        let cap = integer_floor(&(&self.capacities[level] * &Rational::from(n as u64)));
        let total: i128 = self
            .block(level, b)
            .iter()
            .map(|&i| {
                let (p, q) = self.parts[i as usize];
                if p == q {
                    n
                } else {
                    (n + 1) * p as i128 / q as i128
                }
            })
            .sum();
        total <= cap
    }

    fn masks(&self, n_set: &[u64]) -> Vec<Vec<Bits>> {
        (0..self.blocks.len())
            .map(|level| {
                (0..self.block_count(level))
                    .into_par_iter()
                    .map(|b| {
                        let mut bits = Bits::with_len(n_set.len());
                        for (k, &n) in n_set.iter().enumerate() {
                            if self.fits(level, b, n) {
                                bits.set(k);
                            }
                        }
                        bits
                    })
                    .collect()
            })
            .collect()
    }

    fn add_index(&self, masks: &mut [Vec<Bits>], bit: usize, n: u64) {
        for (level, level_masks) in masks.iter_mut().enumerate() {
            level_masks.par_iter_mut().enumerate().for_each(|(b, bits)| {
                if self.fits(level, b, n) {
                    bits.set(bit);
                }
            });
        }
    }

    fn tuple(&self, chosen: &[usize]) -> Vec<Vec<Rational>> {
        chosen
            .iter()
            .enumerate()
            .map(|(level, &b)| {
                self.block(level, b)
                    .iter()
                    .map(|&i| self.values[i as usize].clone())
                    .collect()
            })
            .collect()
    }

    /// First tuple (as block indices per level) whose combined mask is empty.
    fn first_uncovered(&self, masks: &[Vec<Bits>], n_len: usize) -> Option<Vec<usize>> {
        let full = Bits::full(n_len);
        (0..self.block_count(0)).into_par_iter().find_map_first(|b| {
            let mut chosen = vec![b];
            let acc = full.and(&masks[0][b]);
            descend(masks, 1, &acc, &mut chosen).then_some(chosen)
        })
    }
}

fn descend(masks: &[Vec<Bits>], level: usize, acc: &Bits, chosen: &mut Vec<usize>) -> bool {
    if !acc.any() {
        // every completion is uncovered; the first one uses block 0 throughout
        chosen.resize(masks.len(), 0);
        return true;
    }
    if level == masks.len() {
        return false;
    }
    for (b, bits) in masks[level].iter().enumerate() {
        chosen.push(b);
        if descend(masks, level + 1, &acc.and(bits), chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn push_blocks(
    scaled: &[i64],
    cap: i128,
    start: usize,
    depth: usize,
    sum: i128,
    cur: &mut Vec<u16>,
    out: &mut Vec<u16>,
) {
    if depth == cur.len() {
        out.extend_from_slice(cur);
        return;
    }
    for (idx, &s) in scaled.iter().enumerate().skip(start) {
        let next = sum + s as i128;
        if next > cap {
            break;
        }
        cur[depth] = idx as u16;
        push_blocks(scaled, cap, idx, depth + 1, next, cur, out);
    }
}

fn integer_floor(x: &Rational) -> i128 {
    x.floor_bigint().to_i128().expect("grid bound fits i128")
}

/// Checks that every grid tuple with entry denominators `<= denom_bound` is
/// served by some index of `n_set`, and that every index of `n_set` is under
/// complementary restrictions for the problem's data.
pub fn verify_covering(n_set: &BTreeSet<u64>, problem: &CoveringProblem, denom_bound: u64) -> Result<CoveringVerdict> {
    if n_set.is_empty() {
        return Err(Error::Precondition("index set must be nonempty".into()));
    }
    if let Some(&n) = n_set
        .iter()
        .find(|&&n| complementary_witness(&problem.data, n).is_none())
    {
        return Ok(CoveringVerdict::Inadmissible { n });
    }
    let walk = GridWalk::new(problem, denom_bound)?;
    let ns: Vec<u64> = n_set.iter().copied().collect();
    let masks = walk.masks(&ns);
    Ok(match walk.first_uncovered(&masks, ns.len()) {
        None => CoveringVerdict::Ok,
        Some(chosen) => CoveringVerdict::Counterexample {
            tuple: walk.tuple(&chosen),
        },
    })
}

/// Greedily builds an index set covering the grid of entry denominators
/// `<= denom_bound`: walk the tuples in order and, for each one no chosen
/// index serves, add the index [`find_simultaneous_n`] returns for it.
pub fn construct_covering_set(problem: &CoveringProblem, denom_bound: u64, n_max: u64) -> Result<CoverConstruction> {
    let walk = GridWalk::new(problem, denom_bound)?;
    let mut chosen: Vec<u64> = Vec::new();
    let mut masks = walk.masks(&chosen);
    while let Some(pos) = walk.first_uncovered(&masks, chosen.len()) {
        let tuple = walk.tuple(&pos);
        let Some(w) = find_simultaneous_n(problem, &tuple, n_max)? else {
            return Ok(CoverConstruction::Uncoverable { tuple });
        };
        if chosen.contains(&w.n) {
            return Err(Error::Precondition(format!(
                "index {} was already chosen but does not serve {tuple:?}",
                w.n
            )));
        }
        log::debug!("covering: adding n = {} for {:?}", w.n, tuple);
        walk.add_index(&mut masks, chosen.len(), w.n);
        chosen.push(w.n);
    }
    chosen.sort_unstable();
    Ok(CoverConstruction::Covered { n_set: chosen })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::RationalVector;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Data under which every `n` has a witness.
    fn loose() -> RestrictionData {
        RestrictionData::new(
            1,
            RationalVector::new(vec![q(1, 3)]).unwrap(),
            RationalVector::new(vec![q(-1, 1)]).unwrap(),
            Rational::from_integer(10),
        )
        .unwrap()
    }

    fn problem(d: usize, caps: &[i64]) -> CoveringProblem {
        CoveringProblem::new(loose(), d, caps.iter().map(|&c| Rational::from_integer(c)).collect()).unwrap()
    }

    /// Every grid tuple in full (unsorted) order, for the oracle.
    fn all_tuples(problem: &CoveringProblem, denom_bound: u64) -> Vec<Vec<Vec<Rational>>> {
        let grid = farey_grid(denom_bound);
        let mut blocks_per_level = Vec::new();
        for c in problem.capacities() {
            let mut blocks: Vec<Vec<Rational>> = vec![vec![]];
            for _ in 0..problem.d() {
                blocks = blocks
                    .into_iter()
                    .flat_map(|b| {
                        grid.iter().map(move |x| {
                            let mut nb = b.clone();
                            nb.push(x.clone());
                            nb
                        })
                    })
                    .collect();
            }
            blocks.retain(|b| b.iter().sum::<Rational>() <= *c);
            blocks_per_level.push(blocks);
        }
        let mut tuples: Vec<Vec<Vec<Rational>>> = vec![vec![]];
        for level in blocks_per_level {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    level.iter().map(move |b| {
                        let mut nt = t.clone();
                        nt.push(b.clone());
                        nt
                    })
                })
                .collect();
        }
        tuples
    }

    fn oracle_first_uncovered(
        n_set: &[u64],
        problem: &CoveringProblem,
        denom_bound: u64,
    ) -> Option<Vec<Vec<Rational>>> {
        all_tuples(problem, denom_bound).into_iter().find(|t| {
            !n_set.iter().any(|&n| {
                t.iter().zip(problem.capacities()).all(|(b, c)| {
                    b.iter()
                        .map(|x| crate::rounding::round_rational(x, n).unwrap())
                        .sum::<Rational>()
                        <= *c
                })
            })
        })
    }

    #[test]
    fn simultaneous_examples() {
        let p = problem(4, &[2]);
        let w = find_simultaneous_n(&p, &[vec![q(1, 2); 4]], 50).unwrap().unwrap();
        assert_eq!(w.n, 2);
        let p2 = problem(2, &[2]);
        let w = find_simultaneous_n(&p2, &[vec![q(1, 1), q(1, 1)]], 50)
            .unwrap()
            .unwrap();
        assert_eq!(w.n, 1);
        let w = find_simultaneous_n(&p, &[vec![q(0, 1); 4]], 50).unwrap().unwrap();
        assert_eq!(w.n, 1);
    }

    #[test]
    fn simultaneous_preconditions() {
        let p = problem(2, &[1]);
        let err = find_simultaneous_n(&p, &[vec![q(2, 3), q(2, 3)]], 10).unwrap_err();
        assert!(matches!(err, Error::Precondition(msg) if msg.contains("boundary 0")));
        assert!(find_simultaneous_n(&p, &[vec![q(3, 2), q(0, 1)]], 10).is_err());
        assert!(find_simultaneous_n(&p, &[vec![q(1, 2)]], 10).is_err());
        assert!(find_simultaneous_n(&p, &[], 10).is_err());
    }

    #[test]
    fn divisor_includes_capacity_denominators() {
        let p = CoveringProblem::new(loose().with_divisor(2).unwrap(), 1, vec![q(1, 3), q(3, 4)]).unwrap();
        assert_eq!(p.index_divisor().unwrap(), 12);
        let w = find_simultaneous_n(&p, &[vec![q(0, 1)], vec![q(1, 2)]], 100)
            .unwrap()
            .unwrap();
        assert_eq!(w.n % 12, 0);
    }

    #[test]
    fn verify_examples() {
        let p = problem(4, &[2]);
        assert_eq!(verify_covering(&[2].into(), &p, 2).unwrap(), CoveringVerdict::Ok);
        // (1/2, 1/2, 1/2, 1/2) fails too, but (0, 1/2, 1/2, 1/2) comes first
        assert_eq!(
            verify_covering(&[1].into(), &p, 2).unwrap(),
            CoveringVerdict::Counterexample {
                tuple: vec![vec![q(0, 1), q(1, 2), q(1, 2), q(1, 2)]]
            }
        );
        assert!(!p.fits(&[vec![q(1, 2); 4]], 1));
        assert!(p.fits(&[vec![q(1, 2); 4]], 2));
        let p1 = problem(1, &[1]);
        assert_eq!(verify_covering(&[3, 5].into(), &p1, 1).unwrap(), CoveringVerdict::Ok);
        assert!(verify_covering(&BTreeSet::new(), &p1, 1).is_err());
    }

    #[test]
    fn verify_rejects_inadmissible_indices() {
        let strict = RestrictionData::new(
            1,
            RationalVector::new(vec![q(4142135, 10_000_000)]).unwrap(),
            RationalVector::new(vec![q(1, 1)]).unwrap(),
            q(1, 10),
        )
        .unwrap();
        let p = CoveringProblem::new(strict, 1, vec![Rational::one()]).unwrap();
        assert_eq!(
            verify_covering(&[5, 12].into(), &p, 1).unwrap(),
            CoveringVerdict::Inadmissible { n: 5 }
        );
        assert_eq!(verify_covering(&[12].into(), &p, 1).unwrap(), CoveringVerdict::Ok);
    }

    #[test]
    fn verify_matches_full_grid_oracle() {
        for (d, caps, bound) in [(4, vec![2], 2), (2, vec![1, 1], 3), (3, vec![1], 4), (2, vec![1, 2], 3)] {
            let p = problem(d, &caps);
            for set in [
                vec![1u64],
                vec![2],
                vec![1, 2],
                vec![2, 3],
                vec![6],
                vec![4, 6],
                vec![12],
            ] {
                let ours = verify_covering(&set.iter().copied().collect(), &p, bound).unwrap();
                let expected = match oracle_first_uncovered(&set, &p, bound) {
                    None => CoveringVerdict::Ok,
                    Some(tuple) => CoveringVerdict::Counterexample { tuple },
                };
                assert_eq!(ours, expected, "d = {d}, caps = {caps:?}, set = {set:?}");
            }
        }
    }

    #[test]
    fn construction_examples() {
        let p = problem(4, &[2]);
        let CoverConstruction::Covered { n_set } = construct_covering_set(&p, 2, 100).unwrap() else {
            panic!("expected a covering");
        };
        let set: BTreeSet<u64> = n_set.into_iter().collect();
        assert_eq!(verify_covering(&set, &p, 2).unwrap(), CoveringVerdict::Ok);

        let p1 = problem(1, &[1]);
        let CoverConstruction::Covered { n_set } = construct_covering_set(&p1, 1, 10).unwrap() else {
            panic!("expected a covering");
        };
        assert_eq!(n_set.len(), 1);

        let p2 = problem(2, &[1, 1]);
        let CoverConstruction::Covered { n_set } = construct_covering_set(&p2, 3, 100).unwrap() else {
            panic!("expected a covering");
        };
        let set: Vec<u64> = n_set.clone();
        assert_eq!(oracle_first_uncovered(&set, &p2, 3), None);
    }

    #[test]
    fn construction_reports_uncoverable_tuple() {
        let p = problem(4, &[2]);
        assert_eq!(
            construct_covering_set(&p, 2, 1).unwrap(),
            CoverConstruction::Uncoverable {
                tuple: vec![vec![q(0, 1), q(1, 2), q(1, 2), q(1, 2)]]
            }
        );
    }

    #[test]
    fn grid_contents() {
        assert_eq!(farey_grid(1), vec![q(0, 1), q(1, 1)]);
        assert_eq!(farey_grid(3), vec![q(0, 1), q(1, 3), q(1, 2), q(2, 3), q(1, 1)]);
        assert_eq!(farey_grid(12).len(), 47);
        assert!(GridWalk::new(&problem(1, &[1]), MAX_DENOM_BOUND + 1).is_err());
    }
}
