use std::fmt::Write as _;

use super::{DocKind, Document, Record};

/// Four significant digits; infinities as `+∞` / `-∞`.
pub fn sig4(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "+∞" } else { "-∞" }.into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let e = format!("{v:.3e}");
    let exp: i32 = e.split_once('e').and_then(|(_, x)| x.parse().ok()).unwrap_or(0);
    if (-4..6).contains(&exp) {
        format!("{:.*}", (3 - exp).max(0) as usize, v)
    } else {
        e
    }
}

fn cell(r: &Record) -> String {
    let mut s = match (r.number(), &r.value) {
        // counts and lengths outside the table print exactly
        (Some(v), _) if r.section != "table" && v.fract() == 0.0 && v.abs() < 1e9 => {
            format!("{}", v as i64)
        }
        (Some(v), _) => sig4(v),
        (None, Some(raw)) => raw.clone(),
        (None, None) => String::new(),
    };
    if r.diagnostic.as_deref() == Some("diverging") && r.section == "table" {
        s = "+∞(div)".into();
    }
    s
}

fn render_table(doc: &Document) -> String {
    let header = ["family", "α̂", "β̂", "expected α", "expected β", "ε̂", "|Δ|"];
    let fields = ["alpha_hat", "beta_hat", "expected_alpha", "expected_beta", "eps_hat", "delta"];
    let mut subjects: Vec<&str> = Vec::new();
    for r in &doc.records {
        if !subjects.contains(&r.subject.as_str()) {
            subjects.push(&r.subject);
        }
    }
    let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for s in subjects {
        let mut row = vec![s.to_string()];
        for f in fields {
            row.push(doc.find(s, "table", f).map_or("-".into(), cell));
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

/// Human-readable rendering. Tables are laid out in columns; other
/// documents are grouped by subject and section.
pub fn render_pretty(doc: &Document) -> String {
    if doc.kind == DocKind::Table {
        return render_table(doc);
    }
    let mut out = String::new();
    let mut current: Option<(&str, &str)> = None;
    for r in &doc.records {
        if current != Some((&r.subject, &r.section)) {
            if current.map(|c| c.0) != Some(&r.subject) {
                let _ = writeln!(out, "{}", r.subject);
            }
            let _ = writeln!(out, "  [{}]", r.section);
            current = Some((&r.subject, &r.section));
        }
        let mut line = format!("    {}", r.name);
        if let Some(i) = r.index {
            let _ = write!(line, "[{i}]");
        }
        let v = cell(r);
        if !v.is_empty() {
            let _ = write!(line, " = {v}");
        }
        for extra in [&r.status, &r.diagnostic, &r.text].into_iter().flatten() {
            let _ = write!(line, "  {extra}");
        }
        let _ = writeln!(out, "{line}");
    }
    out
}
