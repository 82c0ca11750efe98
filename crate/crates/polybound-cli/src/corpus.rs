//! Corpus replay: each line pairs a polynomial with a JSON fragment that
//! must be a deep subset of its analyze report, so expected values stay
//! readable while reports remain free to grow new keys.

use std::fs;
use std::path::Path;

use serde_json::Value;

use polybound::analyze_bi;
use polybound::criteria::AnalyzeOptions;
use polybound::field::{FieldDescriptor, PrimeField};
use polybound::oracle::oracle_count;
use polybound::parse::parse_field_descriptor;
use polybound::sweep::{random_content_free_bipoly, seeded_rng};

use crate::{analyze_parsed, effective_budget, split_vars, Failure};

/// Deep subset: objects must contain every expected key, arrays must contain
/// a match for every expected element, scalars must be equal.
fn subset_matches(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            e.iter().all(|(k, ev)| a.get(k).is_some_and(|av| subset_matches(ev, av)))
        }
        (Value::Array(e), Value::Array(a)) => {
            e.iter().all(|ev| a.iter().any(|av| subset_matches(ev, av)))
        }
        _ => expected == actual,
    }
}

fn at_line(shown: &std::path::Display<'_>, lineno: usize, e: Failure) -> Failure {
    let (Failure::Usage(m) | Failure::Budget(m)) = e;
    Failure::Usage(format!("{shown}:{lineno}: {m}"))
}

pub fn run(path: &Path, seed: Option<u64>) -> Result<(), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let shown = path.display();
    let mut field = FieldDescriptor::Rationals;
    let mut vars: Vec<String> = vec!["x".into(), "y".into()];
    let mut passed = 0usize;
    let mut failed = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("@field") {
            field = parse_field_descriptor(rest.trim())
                .map_err(|e| Failure::Usage(format!("{shown}:{lineno}: {}", e.message)))?;
            continue;
        }
        if let Some(rest) = line.strip_prefix("@vars") {
            vars = split_vars(rest.trim()).map_err(|e| at_line(&shown, lineno, e))?;
            continue;
        }
        let Some((poly_text, expected_text)) = line.split_once(';') else {
            return Err(Failure::Usage(format!(
                "{shown}:{lineno}: expected `polynomial ; json-fragment`"
            )));
        };
        let expected: Value = serde_json::from_str(expected_text)
            .map_err(|e| Failure::Usage(format!("{shown}:{lineno}: invalid expected JSON: {e}")))?;
        let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        let report = analyze_parsed(poly_text.trim(), field, &refs, &AnalyzeOptions::default())
            .map_err(|e| at_line(&shown, lineno, e))?;
        let actual = serde_json::to_value(&report).expect("report serializes");
        if subset_matches(&expected, &actual) {
            println!("{shown}:{lineno}: ok  {}", poly_text.trim());
            passed += 1;
        } else {
            println!("{shown}:{lineno}: MISMATCH  {}", poly_text.trim());
            println!("  expected fragment: {expected}");
            println!("  actual report:     {actual}");
            failed += 1;
        }
    }
    println!("corpus: {passed} passed, {failed} failed");
    if failed > 0 {
        return Err(Failure::Usage(format!("{failed} corpus line(s) mismatched")));
    }
    if let Some(seed) = seed {
        seeded_sweep(seed)?;
    }
    Ok(())
}

/// Randomized cross-validation: every applicable bound must sit at or above
/// the oracle's exact factor count.
fn seeded_sweep(seed: u64) -> Result<(), Failure> {
    let budget = effective_budget()?;
    let mut checked = 0u64;
    for p in [2u64, 3] {
        let field = PrimeField::new(p).expect("small prime");
        let mut rng = seeded_rng(seed);
        for _ in 0..50 {
            let f = random_content_free_bipoly(&mut rng, &field, 4, 3);
            let count = oracle_count(&f, &budget).map_err(|e| Failure::Budget(e.to_string()))?;
            let report = analyze_bi(&f).map_err(|e| Failure::Usage(e.to_string()))?;
            for v in &report.verdicts {
                if let Some(bound) = v.bound() {
                    checked += 1;
                    if count > bound {
                        println!(
                            "sweep violation over F{p}: {} claimed at most {bound}, \
                             oracle found {count}: {}",
                            v.id, report.input
                        );
                        return Err(Failure::Usage(
                            "randomized sweep found a violated bound".into(),
                        ));
                    }
                }
            }
        }
    }
    println!(
        "seeded sweep (seed {seed}): 100 draws, {checked} applicable verdicts, zero violations"
    );
    Ok(())
}
