//! JSON and TSV renderings of construction and audit reports.
//!
//! All documents carry `"schema": "v1"`. Fields that hold exact counts or
//! seeds, which may exceed the 2^53 range of a JSON double, are emitted as
//! decimal strings:
//!
//! - construction reports: `seed`, `verified_bounds[].observed`, and
//!   `verified_bounds[].bound` when the bound is exact;
//! - audit reports: `lhs_sup` and `finite_bound.observed` / `finite_bound.bound`;
//! - scans: `lhs_sup`.
//!
//! Per-n series go to TSV, never into JSON. Documents do not mention output
//! paths, so their bytes do not depend on where they are written.

use std::fmt::Write as _;

use addrep::audit::{AuditReport, Direction, ExponentScan};
use addrep::construct::{BoundValue, ConstructionReport, ParamValue, VerifiedBound};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "v1";

fn param_json(v: &ParamValue) -> Value {
    match v {
        ParamValue::Int(x) => {
            if x.unsigned_abs() < (1u128 << 53) {
                json!(*x as i64)
            } else {
                json!(x.to_string())
            }
        }
        ParamValue::Real(x) => json!(x),
        ParamValue::Weights(w) => json!(w),
        ParamValue::Text(t) => json!(t),
    }
}

fn bound_json(b: &VerifiedBound) -> Value {
    let bound = match b.bound {
        BoundValue::Exact(x) => json!(x.to_string()),
        BoundValue::Real(x) => json!(x),
    };
    json!({
        "name": b.name,
        "relation": b.relation.symbol(),
        "bound": bound,
        "observed": b.observed.to_string(),
        "holds": b.holds,
    })
}

pub fn construction_json(report: &ConstructionReport, set_size: usize) -> Value {
    let params: Map<String, Value> = report
        .params
        .iter()
        .map(|(k, v)| (k.clone(), param_json(v)))
        .collect();
    json!({
        "schema": SCHEMA,
        "kind": "construction",
        "recipe": report.recipe.name(),
        "params": params,
        "seed": report.seed.map(|s| s.to_string()),
        "rng_algorithm": report.rng_algorithm,
        "trials_used": report.trials_used,
        "verified_bounds": report.verified_bounds.iter().map(bound_json).collect::<Vec<_>>(),
        "all_hold": report.all_hold(),
        "set_size": set_size,
        "notes": report.notes,
    })
}

fn float_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn audit_json(report: &AuditReport) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "audit",
        "label": "proxy",
        "theorem": report.theorem.name(),
        "lambda": report.lambda.weights(),
        "horizon": report.horizon,
        "exponent": report.exponent,
        "constant": float_or_null(report.constant),
        "direction": match report.direction {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
        },
        "lhs_sup": report.lhs_sup.to_string(),
        "rhs_sup": float_or_null(report.rhs_sup),
        "margin": float_or_null(report.margin),
        "holds": report.holds,
        "relative_tolerance": addrep::audit::REL_TOL,
        "skipped": report.skipped,
        "finite_bound": report.finite_bound.as_ref().map(bound_json),
    })
}

/// Header `n<TAB>lhs<TAB>rhs`; undefined right-hand entries are written as `NA`.
pub fn audit_tsv(report: &AuditReport) -> String {
    let mut out = String::from("n\tlhs\trhs\n");
    for (i, (l, r)) in report.lhs_series.iter().zip(&report.rhs_series).enumerate() {
        match r {
            Some(r) => writeln!(out, "{}\t{l}\t{r}", i + 1).unwrap(),
            None => writeln!(out, "{}\t{l}\tNA", i + 1).unwrap(),
        }
    }
    out
}

pub fn scan_json(scan: &ExponentScan) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "exponent-scan",
        "label": "exploratory",
        "theorem": "P1-scan",
        "lambda": scan.lambda.weights(),
        "horizon": scan.horizon,
        "lhs_sup": scan.lhs_sup.to_string(),
        "base_sup": scan.base_sup,
        "rows": scan.rows.iter().map(|r| json!({"theta": r.theta, "ratio": float_or_null(r.ratio)})).collect::<Vec<_>>(),
    })
}

pub fn scan_tsv(scan: &ExponentScan) -> String {
    let mut out = String::from("theta\tratio\n");
    for r in &scan.rows {
        writeln!(out, "{}\t{}", r.theta, r.ratio).unwrap();
    }
    out
}

/// Pretty JSON with a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}
