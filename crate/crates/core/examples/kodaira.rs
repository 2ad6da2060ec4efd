//! The Kodaira fiber table.

use complements::elliptic::{adjunction_index_elliptic, complement_index, divisorial_coeff, KodairaType};

fn main() -> complements::Result<()> {
    println!("{:<6} {:>5} {:>6}", "fiber", "d_P", "index");
    for t in KodairaType::table_rows() {
        println!(
            "{:<6} {:>5} {:>6}",
            t.to_string(),
            divisorial_coeff(t).to_string(),
            complement_index(t)
        );
    }
    let t: KodairaType = "3I2".parse()?;
    println!("{t}: d_P = {}", divisorial_coeff(t));
    println!("adjunction index: {}", adjunction_index_elliptic());
    Ok(())
}
