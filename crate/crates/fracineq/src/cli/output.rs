//! Rendering of reports and summaries as text, json-lines, and CSV.
//!
//! CSV uses `.` decimals and 17 significant digits so every real
//! round-trips exactly; json-lines emits one object per line with field
//! names matching `CheckReport` (non-finite reals serialize as null).

use super::fuzz::FuzzSummary;
use super::{OutputFormat, ScalarParams, TheoremSelector, PARAM_NAMES};
use crate::theorems::CheckReport;

use serde::Serialize;
use std::collections::BTreeMap;
use std::io::{self, Write};

/// 17 significant digits, '.' decimal, no locale.
pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub const SWEEP_CSV_HEADER: &str =
    "theorem,f,a,b,m,alpha,alpha1,q,lhs,rhs,margin,status,notes";

fn param_cell(p: &ScalarParams, name: &str) -> String {
    let v = p.get(name);
    if v.is_nan() {
        String::new()
    } else {
        fmt_g17(v)
    }
}

pub fn csv_report_row(
    report: &CheckReport,
    f_text: &str,
    params: &ScalarParams,
) -> String {
    let mut cells = vec![report.theorem_id.as_str().to_string(), csv_escape(f_text)];
    for name in PARAM_NAMES {
        cells.push(param_cell(params, name));
    }
    cells.push(fmt_g17(report.lhs));
    cells.push(fmt_g17(report.rhs));
    cells.push(fmt_g17(report.margin));
    cells.push(report.status.as_str().to_string());
    cells.push(csv_escape(&report.notes.join("; ")));
    cells.join(",")
}

/// Row for a parameter point whose checker returned an error instead of a
/// report; the sweep never aborts.
pub fn csv_error_row(
    sel: TheoremSelector,
    f_text: &str,
    params: &ScalarParams,
    error: &str,
) -> String {
    let mut cells = vec![sel.name().to_string(), csv_escape(f_text)];
    for name in PARAM_NAMES {
        cells.push(param_cell(params, name));
    }
    cells.push(String::new());
    cells.push(String::new());
    cells.push(String::new());
    cells.push("error".to_string());
    cells.push(csv_escape(error));
    cells.join(",")
}

#[derive(Serialize)]
struct JsonReportRow<'a> {
    #[serde(flatten)]
    report: &'a CheckReport,
    f: &'a str,
    params: BTreeMap<&'static str, f64>,
}

#[derive(Serialize)]
struct JsonErrorRow<'a> {
    theorem_id: &'a str,
    status: &'a str,
    error: &'a str,
    f: &'a str,
    params: BTreeMap<&'static str, f64>,
}

fn params_map(params: &ScalarParams) -> BTreeMap<&'static str, f64> {
    PARAM_NAMES
        .into_iter()
        .filter(|n| !params.get(n).is_nan())
        .map(|n| (n, params.get(n)))
        .collect()
}

pub fn json_report_row(
    report: &CheckReport,
    f_text: &str,
    params: &ScalarParams,
) -> serde_json::Result<String> {
    serde_json::to_string(&JsonReportRow {
        report,
        f: f_text,
        params: params_map(params),
    })
}

pub fn json_error_row(
    sel: TheoremSelector,
    f_text: &str,
    params: &ScalarParams,
    error: &str,
) -> serde_json::Result<String> {
    serde_json::to_string(&JsonErrorRow {
        theorem_id: sel.name(),
        status: "error",
        error,
        f: f_text,
        params: params_map(params),
    })
}

fn text_report(out: &mut impl Write, report: &CheckReport) -> io::Result<()> {
    writeln!(out, "theorem: {}", report.theorem_id)?;
    writeln!(out, "status: {}", report.status)?;
    writeln!(out, "lhs: {}", fmt_g17(report.lhs))?;
    writeln!(out, "rhs: {}", fmt_g17(report.rhs))?;
    writeln!(out, "margin: {}", fmt_g17(report.margin))?;
    if !report.hypotheses.is_empty() {
        writeln!(out, "hypotheses:")?;
        for h in &report.hypotheses {
            let c = &h.certificate;
            write!(
                out,
                "  {}: {} (max_violation {}, grid {}",
                h.name,
                if c.holds { "holds" } else { "FAILS" },
                fmt_g17(c.max_violation),
                c.grid_size
            )?;
            match c.witness {
                Some((x, y, t)) => writeln!(
                    out,
                    ", witness x={} y={} t={})",
                    fmt_g17(x),
                    fmt_g17(y),
                    fmt_g17(t)
                )?,
                None => writeln!(out, ")")?,
            }
        }
    }
    if !report.notes.is_empty() {
        writeln!(out, "notes:")?;
        for n in &report.notes {
            writeln!(out, "  - {n}")?;
        }
    }
    Ok(())
}

pub fn render_check(
    out: &mut impl Write,
    report: &CheckReport,
    f_text: &str,
    params: &ScalarParams,
    sel: TheoremSelector,
    format: OutputFormat,
) -> io::Result<()> {
    let _ = sel;
    match format {
        OutputFormat::Text => text_report(out, report),
        OutputFormat::JsonLines => {
            let line = json_report_row(report, f_text, params)
                .map_err(io::Error::other)?;
            writeln!(out, "{line}")
        }
        OutputFormat::Csv => {
            writeln!(out, "{SWEEP_CSV_HEADER}")?;
            writeln!(out, "{}", csv_report_row(report, f_text, params))
        }
    }
}

pub fn render_fuzz(
    out: &mut impl Write,
    summary: &FuzzSummary,
    format: OutputFormat,
) -> io::Result<()> {
    match format {
        OutputFormat::Text => {
            writeln!(out, "fuzz: trials={} seed={}", summary.trials, summary.seed)?;
            writeln!(
                out,
                "{:<6} {:>9} {:>9} {:>17} {:>13} {:>8} {:>7}",
                "check", "verified", "violated", "hypotheses_unmet", "inconclusive", "skipped",
                "errors"
            )?;
            for t in &summary.tallies {
                writeln!(
                    out,
                    "{:<6} {:>9} {:>9} {:>17} {:>13} {:>8} {:>7}",
                    t.theorem,
                    t.verified,
                    t.violated,
                    t.hypotheses_unmet,
                    t.inconclusive,
                    t.skipped,
                    t.errors
                )?;
                if let Some(e) = &t.first_error {
                    writeln!(out, "       first error: {e}")?;
                }
            }
            writeln!(out, "minimum-margin instances (k = {}):", summary.min_margin.len())?;
            for inst in &summary.min_margin {
                writeln!(
                    out,
                    "  margin={} status={} {} | {}",
                    fmt_g17(inst.margin),
                    inst.status,
                    inst.theorem,
                    inst.replay
                )?;
            }
            if !summary.violation_examples.is_empty() {
                writeln!(out, "violated instances:")?;
                for v in &summary.violation_examples {
                    writeln!(out, "  {v}")?;
                }
            }
            Ok(())
        }
        OutputFormat::JsonLines => {
            for t in &summary.tallies {
                let line = serde_json::to_string(t)
                    .map_err(io::Error::other)?;
                writeln!(out, "{line}")?;
            }
            for inst in &summary.min_margin {
                let line = serde_json::to_string(inst)
                    .map_err(io::Error::other)?;
                writeln!(out, "{line}")?;
            }
            Ok(())
        }
        OutputFormat::Csv => {
            writeln!(
                out,
                "theorem,verified,violated,hypotheses_unmet,inconclusive,skipped,errors"
            )?;
            for t in &summary.tallies {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    t.theorem,
                    t.verified,
                    t.violated,
                    t.hypotheses_unmet,
                    t.inconclusive,
                    t.skipped,
                    t.errors
                )?;
            }
            Ok(())
        }
    }
}

pub fn render_identities(
    out: &mut impl Write,
    reports: &[CheckReport],
    format: OutputFormat,
) -> io::Result<()> {
    match format {
        OutputFormat::Text => {
            let mut pass = 0usize;
            for r in reports {
                let tag = r.notes.first().map(String::as_str).unwrap_or("");
                writeln!(
                    out,
                    "{}: {} |lhs-rhs|={}{}",
                    tag,
                    r.status,
                    fmt_g17(r.margin),
                    r.notes
                        .get(1)
                        .map(|n| format!(" [{n}]"))
                        .unwrap_or_default()
                )?;
                if r.status == crate::theorems::Status::Verified {
                    pass += 1;
                }
            }
            writeln!(out, "identities: {pass}/{} verified", reports.len())
        }
        OutputFormat::JsonLines => {
            for r in reports {
                let line = serde_json::to_string(r)
                    .map_err(io::Error::other)?;
                writeln!(out, "{line}")?;
            }
            Ok(())
        }
        OutputFormat::Csv => {
            writeln!(out, "tag,lhs,rhs,margin,status,notes")?;
            for r in reports {
                let tag = r.notes.first().map(String::as_str).unwrap_or("");
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    csv_escape(tag),
                    fmt_g17(r.lhs),
                    fmt_g17(r.rhs),
                    fmt_g17(r.margin),
                    r.status,
                    csv_escape(&r.notes[1..].join("; "))
                )?;
            }
            Ok(())
        }
    }
}
