//! Hyperstandard sets: enumeration and the largest lower approximation.

use complements::hyperstandard::{gamma_contains, gamma_enumerate_upto, low_approx, GammaSpec};
use complements::Rational;

fn main() -> complements::Result<()> {
    let spec = GammaSpec::standard([1, 2])?;
    let upto = Rational::new(4, 5);
    let elems = gamma_enumerate_upto(&upto, &spec)?;
    println!(
        "Γ({{1,2}}) ∩ [0, {upto}]: {}",
        elems.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    );
    for b in ["2/5", "7/10", "19/20"] {
        let b: Rational = b.parse()?;
        let la = low_approx(&b, &spec)?;
        println!("low_approx({b}) = {la}, in Γ: {}", gamma_contains(&la, &spec)?);
    }
    Ok(())
}
