//! Report rendering.

use qgpd::StructureReport;
use serde_json::{json, Value};

use crate::{canonical, Format};

pub fn format_report(r: &StructureReport, format: Format) -> String {
    match format {
        Format::Human => r.to_string(),
        Format::Machine => canonical::emit(&report_value(r)),
    }
}

pub fn report_value(r: &StructureReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let violations: Vec<Value> = c
                .violations
                .iter()
                .map(|v| json!({"witness": v.witness, "detail": v.detail}))
                .collect();
            json!({
                "axiom": c.axiom,
                "cases": c.cases,
                "recorded": c.recorded,
                "violations": violations,
            })
        })
        .collect();
    json!({
        "subject": r.subject,
        "checks": checks,
        "violations": r.violation_count(),
        "pass": r.is_pass(),
    })
}
