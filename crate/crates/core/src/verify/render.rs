use std::fmt::Write;

use serde::Serialize;

use super::refute::{Direction, RefutationReason};
use super::{InclusionAnalysis, TransferCertificate};
use crate::morphism::Morphism;

/// One line of an inclusion table. Letters are labels (`1^` for a hatted 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub label: String,
    pub ab: String,
    pub t: String,
    pub c: String,
    pub u: String,
    /// `e c e'` for embedding rows.
    pub ece: Option<String>,
    pub v: Option<String>,
    pub w: Option<String>,
    pub detail: String,
}

fn labels(m: &Morphism, xs: &[u8]) -> String {
    xs.iter().map(|&x| m.letter_label(x)).collect()
}

fn detail(reason: &Option<RefutationReason>) -> String {
    match reason {
        None => "open".into(),
        Some(RefutationReason::Trivial) => "trivial".into(),
        Some(RefutationReason::SourceForbidsFactor { factor }) => format!("{factor} is forbidden"),
        Some(RefutationReason::SuffixOrPrefixMismatch { side, word }) => {
            format!("{word} is not a {side:?} of any image").to_lowercase()
        }
        Some(RefutationReason::LetterCoincidence { factor }) => format!("{factor} repeats a letter"),
        Some(RefutationReason::ForcedExtension { direction, illegal, .. }) => {
            let side = match direction {
                Direction::Left => "left",
                Direction::Right => "right",
            };
            format!("{side} extension forced into {}", illegal.join(", "))
        }
        Some(RefutationReason::GapPatternAbsent { pattern, .. }) => format!("{pattern} does not occur"),
        Some(RefutationReason::AlignmentExhausted { steps, span, dead_ends }) => {
            format!("two-parse search closed: {dead_ends} dead ends, {steps} steps, span {span}")
        }
    }
}

/// Rows for every admissible inclusion, one per embedding in case `a.iv`.
pub fn table_rows(m: &Morphism, analyses: &[InclusionAnalysis]) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for a in analyses {
        let w = &a.witness;
        let base = TableRow {
            label: a.case.clone(),
            ab: labels(m, &[w.a, w.b]),
            t: w.t.to_string(),
            c: m.letter_label(w.c),
            u: w.u.to_string(),
            ece: None,
            v: None,
            w: None,
            detail: detail(&a.reason),
        };
        if a.embeddings.is_empty() {
            rows.push(base);
            continue;
        }
        for e in &a.embeddings {
            rows.push(TableRow {
                label: format!("{}.{}", a.case, e.label),
                ece: Some(labels(m, &[e.e, w.c, e.e_prime])),
                v: Some(e.v.to_string()),
                w: Some(e.w.to_string()),
                detail: detail(&e.reason),
                ..base.clone()
            });
        }
    }
    rows
}

/// Plain-text certificate with an inclusion table.
pub fn render_certificate(m: &Morphism, cert: &TransferCertificate) -> String {
    let name = &cert.morphism;
    let mut s = String::new();
    let _ = writeln!(s, "morphism {name} (width {}, depth {})", cert.width, cert.depth);
    let _ = writeln!(s, "source: {}", cert.source.render().trim_end().replace('\n', "; "));
    let _ = writeln!(s, "target: {}", cert.target.render().trim_end().replace('\n', "; "));
    let b = &cert.bounded;
    let _ = writeln!(
        s,
        "short squares: roots <= {}, source words up to length {}, {} checked, {} violations",
        b.root_cap, b.max_source_length, b.words_checked, b.violation_count
    );
    if !b.avoided_patterns.is_empty() {
        let ps: Vec<String> = b.avoided_patterns.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "  source words restricted to avoid {}", ps.join(", "));
    }
    if let Some(f) = &b.factor_source {
        let _ = writeln!(s, "  source words restricted to {f}");
    }
    for v in &b.violations {
        let _ = writeln!(s, "  {name}({}): {}", v.source, v.violation);
    }
    let _ = writeln!(
        s,
        "inclusions: {} found, {} admissible",
        cert.raw_inclusions,
        cert.inclusions.len()
    );
    for r in table_rows(m, &cert.inclusions) {
        let head = format!("{name}({}) = {} {name}({}) {}", r.ab, r.t, r.c, r.u);
        let embed = match (&r.v, &r.w, &r.ece) {
            (Some(v), Some(w), Some(ece)) => format!("{v} {name}({}) {w} = {name}({ece})", r.ab),
            _ => "-".into(),
        };
        let _ = writeln!(s, "  {:<12} {:<32} {:<40} {}", r.label, head, embed, r.detail);
    }
    let _ = writeln!(s, "interchanges: {}", cert.interchanges.len());
    for i in &cert.interchanges {
        let w = &i.witness;
        let _ = writeln!(
            s,
            "  ({}, {}, {}) s={} t={} u={} v={}: {}",
            m.letter_label(w.a),
            m.letter_label(w.b),
            m.letter_label(w.c),
            w.s,
            w.t,
            w.u,
            w.v,
            detail(&i.reason)
        );
    }
    for r in &cert.residual {
        let _ = writeln!(s, "open: {r}");
    }
    let _ = writeln!(s, "{}", if cert.complete { "COMPLETE" } else { "INCOMPLETE" });
    s
}
