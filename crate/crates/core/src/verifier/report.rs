//! JSON, CSV and Markdown renderings of conjecture reports.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{case_label, ConjectureReport, Mode};
use crate::partition::Ell;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown format '{0}', expected json, csv or markdown")]
pub struct FormatError(pub String);

impl FromStr for Format {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(FormatError(s.to_string())),
        }
    }
}

pub const CSV_HEADER: [&str; 23] = [
    "mode", "ell", "case", "a", "atilde", "d", "w", "kB", "kB_source", "k0B", "k0B_source", "lB_lower",
    "kD", "kD_source", "kD_via", "kDprime", "kDprime_source", "kDprime_via", "c1_rhs", "c2_rhs",
    "c1_verdict", "c2_verdict", "reason",
];

fn csv_bytes(reports: &[ConjectureReport]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        let p = &r.params;
        let atilde = p.atilde.map(|t| t.to_string()).unwrap_or_default();
        w.write_record([
            r.mode.to_string(),
            p.ell.to_string(),
            case_label(p).to_string(),
            p.a.to_string(),
            atilde,
            p.d.to_string(),
            p.w.to_string(),
            r.kB.value.to_string(),
            r.kB.source.to_string(),
            r.k0B.value.to_string(),
            r.k0B.source.to_string(),
            r.lB_lower.value.to_string(),
            r.kD.value.to_string(),
            r.kD.source.to_string(),
            r.kD.via.clone(),
            r.kDprime.value.to_string(),
            r.kDprime.source.to_string(),
            r.kDprime.via.clone(),
            r.c1_rhs.to_string(),
            r.c2_rhs.to_string(),
            r.c1_verdict.to_string(),
            r.c2_verdict.to_string(),
            r.reason.clone(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn group_title(r: &ConjectureReport) -> String {
    let p = &r.params;
    let mode = match r.mode {
        Mode::Gl => "GL",
        Mode::Sl => "SL",
    };
    match (p.ell, p.atilde) {
        (Ell::Two, Some(t)) => format!("{mode}, ell = 2, 3 mod 4, atilde = {t}"),
        (Ell::Two, None) => format!("{mode}, ell = 2, 1 mod 4, a = {}", p.a),
        (Ell::Three, _) if r.mode == Mode::Sl => format!("{mode}, ell = 3, a = {}", p.a),
        (Ell::Three, _) => format!("{mode}, ell = 3, a = {}, d = {}", p.a, p.d),
    }
}

fn markdown(reports: &[ConjectureReport]) -> String {
    let mut out = String::new();
    let mut current: Option<String> = None;
    for r in reports {
        let title = group_title(r);
        if current.as_ref() != Some(&title) {
            if current.is_some() {
                out.push('\n');
            }
            let _ = writeln!(out, "### {title}\n");
            out.push_str("| w | k^w(B) | lower bound for k0(B)*k(D') | lower bound for l(B)*k(D) | (C1) | (C2) |\n");
            out.push_str("|---|---|---|---|---|---|\n");
            current = Some(title);
        }
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            r.params.w, r.kB.value, r.c1_rhs, r.c2_rhs, r.c1_verdict, r.c2_verdict
        );
    }
    out
}

/// Renders reports with a fixed field order.
pub fn emit_report(reports: &[ConjectureReport], format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => csv_bytes(reports),
        Format::Markdown => markdown(reports).into_bytes(),
    }
}
