//! A finite index set covering every boundary with small denominators.

use complements::diophantine::{
    construct_covering_set, find_simultaneous_n, verify_covering, CoverConstruction, CoveringProblem, RestrictionData,
};
use complements::{Rational, RationalVector};

fn main() -> complements::Result<()> {
    let data = RestrictionData::new(
        1,
        RationalVector::new(vec![Rational::new(4_142_135, 10_000_000)])?,
        RationalVector::new(vec![Rational::one()])?,
        Rational::new(1, 10),
    )?;
    let problem = CoveringProblem::new(data, 4, vec![Rational::from_integer(2)])?;
    let boundary: Vec<Rational> = ["1/2", "2/3", "1/3", "1/6"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    if let Some(w) = find_simultaneous_n(&problem, std::slice::from_ref(&boundary), 1000)? {
        println!("{boundary:?} rounds within capacity at n = {}", w.n);
    }
    match construct_covering_set(&problem, 12, 100_000)? {
        CoverConstruction::Covered { n_set } => {
            println!("covering set for denominators <= 12: {n_set:?}");
            let set = n_set.into_iter().collect();
            println!("verified: {:?}", verify_covering(&set, &problem, 12)?);
        }
        CoverConstruction::Uncoverable { tuple } => println!("no index fits {tuple:?}"),
    }
    Ok(())
}
