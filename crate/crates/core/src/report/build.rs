use super::{decimal, decimal_float, DocKind, Document, Record};
use crate::estimators::{DensityProfile, EstimateTrace};
use crate::generators::FiniteSetReport;
use crate::sequence::{SequencePrefix, TermValue};
use crate::series::{SumTrace, TauBracket, VerdictRule};
use crate::table::TableRow;
use crate::verifier::{CheckReport, ImpliedInterval};

pub fn sequence_document(prefix: &SequencePrefix) -> Document {
    let subject = prefix.family_tag();
    let mut doc = Document::new(DocKind::Sequence);
    doc.push(Record::new(subject, "meta", "length").num(prefix.len() as f64));
    doc.push(Record::new(subject, "meta", "precision_bits").num(prefix.precision_bits() as f64));
    for note in &prefix.meta().notes {
        doc.push(Record::new(subject, "meta", "note").text(note.as_str()));
    }
    for (i, t) in prefix.terms().enumerate() {
        let n = prefix.index_of(i);
        doc.push(match t {
            TermValue::Exact(v) => Record::new(subject, "terms", "term").index(n).value(v.to_string()),
            TermValue::LogDomain { ln_value, .. } => {
                Record::new(subject, "terms", "ln_term").index(n).value(decimal_float(&ln_value))
            }
        });
    }
    doc
}

pub fn finite_set_document(r: &FiniteSetReport) -> Document {
    let s = r.family_tag.as_str();
    let mut doc = Document::new(DocKind::FiniteSet);
    doc.push(Record::new(s, "meta", "distinct_values").num(r.values.len() as f64));
    doc.push(Record::new(s, "meta", "terms_evaluated").num(r.terms_evaluated as f64));
    doc.push(Record::new(s, "meta", "stall_window").num(r.stall_window as f64));
    for (i, v) in r.values.iter().enumerate() {
        doc.push(Record::new(s, "values", "value").index(i + 1).value(v.to_string()));
    }
    doc
}

fn push_trace(doc: &mut Document, subject: &str, section: &str, t: &EstimateTrace) {
    doc.push(
        Record::new(subject, section, "tail_estimate")
            .value(decimal_float(&t.tail_estimate))
            .index(t.tail_argument)
            .diagnostic(t.diagnostic)
            .text(t.mode.name()),
    );
    doc.push(Record::new(subject, section, "global_extremum").value(decimal_float(&t.global_extremum)));
    doc.push(Record::new(subject, section, "samples").num(t.samples as f64));
    for (n, v) in &t.block_extrema {
        doc.push(Record::new(subject, section, "block_extremum").index(*n).value(decimal_float(v)));
    }
}

pub fn profile_document(p: &DensityProfile, implied: Option<&ImpliedInterval>) -> Document {
    let s = p.family_tag.as_str();
    let mut doc = Document::new(DocKind::Profile);
    doc.push(Record::new(s, "meta", "length").num(p.length as f64));
    doc.push(Record::new(s, "meta", "precision_bits").num(p.precision_bits as f64));
    doc.push(Record::new(s, "meta", "tail_fraction").num(p.policy.tail_fraction));
    doc.push(Record::new(s, "meta", "spread_tol").num(p.policy.spread_tol));

    doc.push(Record::new(s, "summary", "eps_hat").num(p.eps_hat()).diagnostic(p.eps_upper.diagnostic));
    doc.push(
        Record::new(s, "summary", "alpha_hat")
            .num(p.alpha_hat())
            .diagnostic(p.alpha_stat_liminf.diagnostic),
    );
    doc.push(
        Record::new(s, "summary", "beta_hat")
            .num(p.beta_hat())
            .diagnostic(p.beta_stat_limsup.diagnostic),
    );
    doc.push(Record::new(s, "summary", "lambda").num(p.lambda()));
    doc.push(Record::new(s, "summary", "implied_lo").num(p.implied_interval.0));
    doc.push(Record::new(s, "summary", "implied_hi").num(p.implied_interval.1));
    doc.push(Record::new(s, "summary", "eps_harmonic_discrepancy").num(p.eps_harmonic_discrepancy));

    for (name, t) in p.traces() {
        push_trace(&mut doc, s, name, t);
    }
    if let Some(iv) = implied {
        doc.push(Record::new(s, "implied-interval", "lo").num(iv.lo));
        doc.push(Record::new(s, "implied-interval", "hi").num(iv.hi));
        for r in &iv.trace {
            doc.push(
                Record::new(s, "implied-interval", r.rule.name())
                    .num(r.bound)
                    .text(format!("statistic={}", decimal(r.statistic))),
            );
        }
    }
    doc
}

pub fn checks_document(reports: &[CheckReport]) -> Document {
    let mut doc = Document::new(DocKind::Checks);
    for r in reports {
        let (s, c) = (r.subject.as_str(), r.check_id.as_str());
        doc.push(Record::new(s, c, "status").status(r.status));
        doc.push(Record::new(s, c, "tolerance").num(r.tolerance));
        for (k, v) in &r.measurements {
            doc.push(Record::new(s, c, k).num(*v));
        }
        for w in &r.witnesses {
            for (k, v) in &w.values {
                doc.push(Record::new(s, c, &format!("witness.{k}")).index(w.index).num(*v));
            }
        }
        for n in &r.notes {
            doc.push(Record::new(s, c, "note").text(n.as_str()));
        }
    }
    doc
}

fn rule_text(rule: &VerdictRule) -> String {
    match *rule {
        VerdictRule::Absolute {
            converge_below,
            diverge_above,
        } => format!(
            "absolute converge<{} diverge>={}",
            decimal(converge_below),
            decimal(diverge_above)
        ),
        VerdictRule::HarmonicReference {
            converge_factor,
            diverge_factor,
        } => format!(
            "harmonic-reference converge<{}h diverge>={}h",
            decimal(converge_factor),
            decimal(diverge_factor)
        ),
    }
}

pub fn series_document(t: &SumTrace, subject: &str) -> Document {
    let mut doc = Document::new(DocKind::Series);
    doc.push(
        Record::new(subject, "series", "sigma")
            .num(t.sigma)
            .diagnostic(t.verdict)
            .text(rule_text(&t.rule)),
    );
    doc.push(Record::new(subject, "series", "tail_increment_ratio").num(t.tail_increment_ratio));
    doc.push(Record::new(subject, "series", "reference_ratio").num(t.reference_ratio));
    doc.push(Record::new(subject, "series", "log_total").num(t.log_total()));
    for (n, v) in &t.partial_sums_log {
        doc.push(Record::new(subject, "partial-sums", "log_partial_sum").index(*n).num(*v));
    }
    doc
}

pub fn bracket_document(b: &TauBracket, subject: &str) -> Document {
    let mut doc = Document::new(DocKind::Bracket);
    doc.push(Record::new(subject, "bracket", "lo").num(b.lo).diagnostic(b.lo_verdict));
    doc.push(Record::new(subject, "bracket", "hi").num(b.hi).diagnostic(b.hi_verdict));
    doc.push(Record::new(subject, "bracket", "width").num(b.width()));
    doc.push(Record::new(subject, "bracket", "midpoint").num(b.midpoint()));
    if b.widened() {
        doc.push(Record::new(subject, "bracket", "note").text("widened: an end is not a definite verdict"));
    }
    if let Some(e) = b.eps_upper {
        let mut r = Record::new(subject, "bracket", "eps_upper").num(e);
        if let Some(ok) = b.consistent_with_eps(0.05) {
            r = r.text(if ok { "consistent" } else { "inconsistent" });
        }
        doc.push(r);
    }
    for (i, (s, v, ratio)) in b.evaluations.iter().enumerate() {
        doc.push(Record::new(subject, "evaluations", "sigma").index(i).num(*s).diagnostic(v));
        doc.push(Record::new(subject, "evaluations", "block_share").index(i).num(*ratio));
    }
    doc
}

pub fn table_document(rows: &[TableRow]) -> Document {
    let mut doc = Document::new(DocKind::Table);
    for r in rows {
        let s = r.family.as_str();
        doc.push(Record::new(s, "table", "length").num(r.length as f64));
        doc.push(Record::new(s, "table", "alpha_hat").num(r.alpha_hat).diagnostic(r.alpha_diagnostic));
        doc.push(Record::new(s, "table", "beta_hat").num(r.beta_hat).diagnostic(r.beta_diagnostic));
        if let Some((a, b)) = r.expected {
            doc.push(Record::new(s, "table", "expected_alpha").num(a));
            doc.push(Record::new(s, "table", "expected_beta").num(b));
        }
        doc.push(Record::new(s, "table", "eps_hat").num(r.eps_hat));
        if let Some(d) = r.delta {
            doc.push(Record::new(s, "table", "delta").num(d));
        }
    }
    doc
}
