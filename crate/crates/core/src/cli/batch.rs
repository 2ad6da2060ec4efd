//! Manifest-driven runs of many command lines.
//!
//! A manifest looks like
//! `{"cases":[{"name":"..","args":["curve","classify","a.json"],"expect_exit":0,"expect_stdout":{..}}]}`.
//! Relative arguments ending in `.json` resolve against the manifest's
//! directory. `expect_stdout` is compared as JSON and may be omitted.

use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use super::commands::read_file;
use super::{run, EXIT_NOT_FOUND, EXIT_OK};
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    #[serde(default)]
    cases: Vec<Case>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Case {
    name: String,
    args: Vec<String>,
    #[serde(default)]
    expect_exit: i32,
    #[serde(default)]
    expect_stdout: Option<Value>,
}

fn resolve(arg: &str, base: &Path) -> String {
    let p = Path::new(arg);
    if arg.ends_with(".json") && p.is_relative() {
        base.join(p).to_string_lossy().into_owned()
    } else {
        arg.to_string()
    }
}

fn run_case(case: &Case, base: &Path) -> Value {
    let argv: Vec<String> = std::iter::once("complements".to_string())
        .chain(case.args.iter().map(|a| resolve(a, base)))
        .collect();
    let out = run(argv);
    let mut problems = Vec::new();
    if out.code != case.expect_exit {
        problems.push(format!("exit {} (expected {})", out.code, case.expect_exit));
    }
    if let Some(expected) = &case.expect_stdout {
        match serde_json::from_str::<Value>(&out.stdout) {
            Ok(actual) if &actual == expected => {}
            Ok(actual) => problems.push(format!("stdout {actual} (expected {expected})")),
            Err(_) => problems.push(format!("stdout is not JSON: {:?}", out.stdout)),
        }
    }
    let mut report = json!({
        "name": case.name,
        "pass": problems.is_empty(),
        "exit": out.code,
    });
    if !problems.is_empty() {
        report["reason"] = json!(problems.join("; "));
    }
    report
}

pub(crate) fn run_manifest(path: &Path) -> Result<(i32, Value)> {
    let text = read_file(path)?;
    let manifest: Manifest =
        serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let reports: Vec<Value> = manifest.cases.par_iter().map(|c| run_case(c, base)).collect();
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["name"].as_str().unwrap_or(""))
        .collect();
    let code = if failed.is_empty() { EXIT_OK } else { EXIT_NOT_FOUND };
    for name in &failed {
        log::warn!("batch case failed: {name}");
    }
    Ok((
        code,
        json!({
            "total": reports.len(),
            "passed": reports.len() - failed.len(),
            "failed": failed,
            "cases": reports,
        }),
    ))
}
