//! Driving the command line in-process, including a batch run of the shipped corpus.

use complements::cli::run;

fn main() {
    let out = run(["complements", "--decimal", "3", "round", "--a", "5/7", "--n", "4"]);
    print!("{}", out.stdout);
    let manifest = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/classification/manifest.json"
    );
    let out = run(["complements", "batch", manifest]);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).expect("json report");
    println!(
        "corpus: {} of {} cases pass (exit {})",
        report["passed"], report["total"], out.code
    );
}
