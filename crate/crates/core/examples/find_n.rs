//! Complementary indices for a rational stand-in of √2 - 1.

use complements::diophantine::{check_restriction, continuity_delta, find_complementary_n, RestrictionData};
use complements::{Rational, RationalVector};

fn main() -> complements::Result<()> {
    let v = RationalVector::new(vec![Rational::new(4_142_135, 10_000_000)])?;
    let e = RationalVector::new(vec![Rational::one()])?;
    let eps = Rational::new(1, 10);
    for divisor in [1, 2, 5] {
        let data = RestrictionData::new(divisor, v.clone(), e.clone(), eps.clone())?;
        match find_complementary_n(&data, 1000)? {
            Some(w) => println!(
                "I = {divisor}: n = {}, v_n = {}, checks: {}",
                w.n,
                w.v_n,
                check_restriction(&w, &data)?
            ),
            None => println!("I = {divisor}: nothing up to 1000"),
        }
    }
    println!(
        "δ for e' = (1, 1/2), l = 1: {}",
        continuity_delta(
            &RationalVector::new(vec![Rational::one(), Rational::new(1, 2)])?,
            1,
            &eps
        )?
    );
    Ok(())
}
