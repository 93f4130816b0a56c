//! `key = value` renderings of reports and derived parameters.
//!
//! Keys are stable; offenders render as `sets=(k,k') shift=(t1,t2) magnitude=x`.

use std::fmt::Write as _;

use crate::correlation::{Offender, Optimality, VerificationReport};
use crate::generator::DerivedParams;

fn offender(o: &Offender) -> String {
    format!(
        "sets=({},{}) shift=({},{}) magnitude={:e}",
        o.sets.0, o.sets.1, o.shift.0, o.shift.1, o.magnitude
    )
}

pub fn render_report(r: &VerificationReport) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| writeln!(out, "{k} = {v}").unwrap();
    kv("verdict", if r.pass { "pass" } else { "fail" }.into());
    kv("kind", r.kind.to_string());
    kv("sets", r.sets.to_string());
    kv("flock", r.flock.to_string());
    kv("shape", format!("{}x{}", r.rows, r.cols));
    kv("zone", format!("{}x{}", r.z1, r.z2));
    kv("modulus", r.modulus.to_string());
    kv("engine", r.engine.as_str().into());
    kv("tolerance", format!("{:e}", r.tolerance));
    kv("evaluations", r.evaluations.to_string());
    kv("peak.expected", r.peak_expected.to_string());
    kv("peak.observed", r.peak_observed.to_string());
    kv("peak.deviation", format!("{:e}", r.peak_deviation));
    kv("peak.set", r.peak_set.to_string());
    kv("worst_auto", r.worst_auto.as_ref().map_or("none".into(), offender));
    kv("worst_cross", r.worst_cross.as_ref().map_or("none".into(), offender));
    match &r.exact {
        Some(e) => {
            kv("exact", "true".into());
            kv("exact.peaks", e.peaks_exact.to_string());
            kv("exact.nonzero_auto", e.nonzero_auto.to_string());
            kv("exact.nonzero_cross", e.nonzero_cross.to_string());
        }
        None => kv("exact", "false".into()),
    }
    kv("structural", r.structural.len().to_string());
    for (i, s) in r.structural.iter().enumerate() {
        kv(&format!("structural.{i}"), s.clone());
    }
    kv("violations", r.violations.len().to_string());
    for (i, o) in r.violations.iter().enumerate() {
        kv(&format!("violation.{i}"), offender(o));
    }
    out
}

pub fn render_optimality(o: &Optimality) -> String {
    let mut out = String::new();
    for (k, v) in [
        ("bound.lhs", o.bound_lhs.to_string()),
        ("bound.rhs", o.bound_rhs.to_string()),
        ("optimal_sets", o.optimal_sets.to_string()),
        ("within_bound", o.within_bound.to_string()),
        ("optimal", o.optimal.to_string()),
    ] {
        writeln!(out, "{k} = {v}").unwrap();
    }
    out
}

pub fn render_params(d: &DerivedParams) -> String {
    let c = &d.code;
    let mut out = String::new();
    for (k, v) in [
        ("family", c.to_string()),
        ("kind", c.kind.to_string()),
        ("sets", c.sets.to_string()),
        ("flock", c.flock.to_string()),
        ("shape", format!("{}x{}", c.rows, c.cols)),
        ("zone", format!("{}x{}", c.z1, c.z2)),
        ("modulus", c.modulus.to_string()),
        ("lambda", d.lambda.to_string()),
    ] {
        writeln!(out, "{k} = {v}").unwrap();
    }
    out + &render_optimality(&d.optimality)
}

/// Parses `key = value` lines back into pairs, skipping blank lines.
pub fn parse_key_values(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}
