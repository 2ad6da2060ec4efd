//! The rounding operator and the coefficientwise complement rule.

use complements::{complement_coeff_ok, round_coeff, BoundaryCoefficient, Rational};

fn main() -> complements::Result<()> {
    let a = BoundaryCoefficient::new("5/7".parse()?)?;
    for n in 1..=6 {
        println!("(5/7)^[{n}] = {}", round_coeff(&a, n)?);
    }
    // d⁺ = 1 is always allowed; 3/4 is allowed for n = 4 since 3/4 >= (5/7)^[4]
    for d_plus in [Rational::one(), Rational::new(3, 4), Rational::new(1, 2)] {
        println!("d+ = {d_plus}: {}", complement_coeff_ok(&a, &d_plus, 4)?);
    }
    Ok(())
}
