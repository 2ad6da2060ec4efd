//! Zariski decomposition over an A2 configuration of (-2)-curves.

use complements::surfaces::{check_maximality, zariski_decompose, DivisorExpr, SurfaceModel};

fn main() -> complements::Result<()> {
    let model = SurfaceModel::from_json(r#"{"classes": ["E1", "E2"], "q": [["-2", "1"], ["1", "-2"]]}"#)?;
    // an ambient nef class meeting E1 once and E2 not at all
    let d = DivisorExpr::from_json(r#"{"coeffs": {"E1": "1", "E2": "1"}, "ambient": ["1", "0"]}"#)?;
    println!("D·E_i = {:?}", d.intersections(&model)?);
    let z = zariski_decompose(&model, &d)?;
    println!("fixed part: {:?}", z.fixed);
    println!("mobile coefficients: {:?}", z.mobile.coeffs);
    println!("M·E_i = {:?}", z.mobile.intersections(&model)?);
    let l = DivisorExpr::from_json(r#"{"coeffs": {"E1": "1/3"}, "ambient": ["1", "0"]}"#)?;
    println!("nef L = A + E1/3 lies below M: {}", check_maximality(&model, &d, &l)?);
    Ok(())
}
