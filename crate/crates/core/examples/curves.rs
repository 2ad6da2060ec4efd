//! Classifying a nodal curve pair and building an n-complement.

use std::collections::BTreeSet;

use complements::curves::{classify, find_n_complement, has_r_complement, is_n_complement, CurvePair};

const CHAIN: &str = r#"{
  "components": [{"id": "A", "genus": 0}, {"id": "B", "genus": 0}, {"id": "C", "genus": 0}],
  "nodes": [["A", "B"], ["B", "C"]],
  "boundary": [
    {"component": "A", "point": "p", "mult": "1/2"},
    {"component": "A", "point": "q", "mult": "1/3"},
    {"component": "C", "point": "r", "mult": "3/4"}
  ]
}"#;

fn main() -> complements::Result<()> {
    let pair = CurvePair::from_json(CHAIN)?;
    let class = classify(&pair);
    println!("class: {:?}, order {:?}", class.tag, class.chain_order);
    if let Some(r) = has_r_complement(&pair) {
        println!(
            "ℝ-complement: {:?}",
            r.boundary
                .iter()
                .map(|p| format!("{}@{}={}", p.point, p.component, p.mult))
                .collect::<Vec<_>>()
        );
    }
    let candidates: BTreeSet<u64> = (1..=6).collect();
    let c = find_n_complement(&pair, &candidates)?;
    println!("n = {}, extended support: {}", c.n, c.supports_extended);
    for p in &c.boundary {
        println!("  {} on {}: {}", p.point, p.component, p.mult);
    }
    println!("check: {}", is_n_complement(&pair, &c.boundary, c.n));
    Ok(())
}
