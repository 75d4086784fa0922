//! Human-readable tables. Numbers are shown with 4 decimals.

use std::fmt::Write;

use semedge_core::{CovMatrix, IdentifiabilityReport, UsedQuantity};

pub fn num(x: f64) -> String {
    format!("{x:.4}")
}

pub fn matrix(s: &CovMatrix) -> String {
    let labels = s.labels();
    let n = labels.len();
    let cells: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| num(s.at(i, j))).collect()).collect();
    let head = labels.iter().map(String::len).max().unwrap_or(0);
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain(labels.iter().map(String::len))
        .max()
        .unwrap_or(0);
    let mut out = format!("{:head$}", "");
    for l in labels {
        let _ = write!(out, "  {l:>width$}");
    }
    out.push('\n');
    for (i, row) in cells.iter().enumerate() {
        let _ = write!(out, "{:<head$}", labels[i]);
        for c in row {
            let _ = write!(out, "  {c:>width$}");
        }
        out.push('\n');
    }
    out
}

pub fn report(r: &IdentifiabilityReport) -> String {
    let mut out = String::new();
    report_into(&mut out, r, 0);
    out
}

fn report_into(out: &mut String, r: &IdentifiabilityReport, depth: usize) {
    let pad = "  ".repeat(depth);
    let _ = write!(out, "{pad}{}: {}", r.target, r.status.as_str());
    if let Some(adj) = &r.adjustment {
        let _ = write!(out, ", adjustment {adj}");
    }
    out.push('\n');
    if let Some(steps) = &r.recipe {
        for s in steps {
            let _ = writeln!(out, "{pad}  regress {} on {} given {}", s.to, s.from, s.adjustment);
        }
    }
    if let Some(reason) = &r.reason {
        let _ = writeln!(out, "{pad}  reason: {reason}");
    }
    for c in &r.checks {
        let mark = if c.passed { "pass" } else { "FAIL" };
        let _ = write!(out, "{pad}  [{mark}] {}", c.name);
        if let Some(d) = &c.detail {
            let _ = write!(out, " ({d})");
        }
        out.push('\n');
    }
    for p in &r.parts {
        report_into(out, p, depth + 1);
    }
}

pub fn used(items: &[UsedQuantity]) -> String {
    let width = items.iter().map(|u| u.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for u in items {
        let _ = write!(out, "{:<width$}  {:>10}", u.name, num(u.value));
        if let Some(adj) = &u.adjustment {
            let _ = write!(out, "  adjustment {adj}");
        } else if let Some(steps) = &u.recipe {
            let via: Vec<String> = steps.iter().map(|s| format!("{}->{} | {}", s.from, s.to, s.adjustment)).collect();
            let _ = write!(out, "  recipe {}", via.join(" ; "));
        }
        out.push('\n');
    }
    out
}

/// Left-aligned columns separated by two spaces.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let k = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (j, c) in r.iter().enumerate().take(k) {
            widths[j] = widths[j].max(c.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells.iter().enumerate().map(|(j, c)| format!("{c:<w$}", w = widths[j])).collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
