//! Square-freeness transfer through uniform morphisms: witness search,
//! refutation, the bounded short-square check and certificates.

mod align;
mod bounded;
mod gap;
mod refute;
mod render;
mod witness;

use serde::Serialize;

pub use align::AlignmentOutcome;
pub use bounded::{
    bounded_case_check, bounded_case_check_restricted, bounded_source_length, fixed_point_factors, BoundedReport,
    BoundedViolation, FactorSet, SourceRestriction,
};
pub use gap::{empirical_gap_evidence, prove_gap_pattern_absence, sync_delay, GapEvidence, GapProof, WINDOWS};
pub use refute::{
    interchange_pattern, refute_inclusion, refute_interchange, Direction, EmbeddingCase, InclusionAnalysis,
    RefutationReason, Side,
};
pub use render::{render_certificate, table_rows, TableRow};
pub use witness::{find_inclusions, find_interchanges, InclusionWitness, InterchangeWitness};

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::spec::{AvoidanceSpec, SquarePolicy};
use crate::word::Symbol;

pub const DEFAULT_DEPTH: usize = 2;

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Refutation depth; see [`refute_inclusion`].
    pub depth: usize,
    /// Lower bound for the bounded-case root cap; raised automatically to
    /// cover the widest refutation.
    pub root_cap: Option<usize>,
    /// Gap-pattern evidence supplied by the caller, used before the
    /// built-in square and window arguments.
    pub gap_evidence: Vec<GapEvidence>,
    /// Restrict the short-square check to factors of `h^ω(seed)`, for
    /// claims about the images of one fixed point.
    pub fixed_point_source: Option<(String, Morphism, Symbol)>,
}

impl VerifyOptions {
    pub fn with_depth(depth: usize) -> Self {
        VerifyOptions {
            depth,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterchangeAnalysis {
    pub witness: InterchangeWitness,
    pub reason: Option<RefutationReason>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferCertificate {
    pub morphism: String,
    pub width: usize,
    pub source: AvoidanceSpec,
    pub target: AvoidanceSpec,
    pub depth: usize,
    pub raw_inclusions: usize,
    pub inclusions: Vec<InclusionAnalysis>,
    pub interchanges: Vec<InterchangeAnalysis>,
    pub bounded: BoundedReport,
    /// Obligations left open; empty exactly when `complete`.
    pub residual: Vec<String>,
    pub complete: bool,
}

impl TransferCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }
}

/// Checks that `m` maps every `source`-legal word to a `target`-legal word.
///
/// Short squares are handled by exhaustive image checks, long ones by
/// refuting every inclusion and interchange of `m`. Inclusions `m(ab) ⊂
/// t m(c) u` with `ab` forbidden by the source are skipped as inadmissible.
/// The certificate is `complete` only when nothing is left open.
pub fn verify_square_transfer(
    name: &str,
    m: &Morphism,
    source: &AvoidanceSpec,
    target: &AvoidanceSpec,
    opts: &VerifyOptions,
) -> Result<TransferCertificate> {
    let width = m.require_uniform()?;
    if let Some((a, b)) = first_collision(m) {
        return Err(Error::NonInjective(a, b));
    }
    if source.alphabet_size != m.class_alphabet() {
        return Err(Error::AlphabetMismatch {
            expected: m.class_alphabet(),
            found: source.alphabet_size,
        });
    }
    if target.alphabet_size != m.target_alphabet() {
        return Err(Error::AlphabetMismatch {
            expected: m.target_alphabet(),
            found: target.alphabet_size,
        });
    }
    let raw = find_inclusions(m)?;
    let raw_inclusions = raw.len();
    let inclusions: Vec<InclusionAnalysis> = raw
        .iter()
        .map(|w| refute_inclusion(m, w, source, opts.depth))
        .filter(|a| a.case != "a.source")
        .collect();

    let mut evidence = opts.gap_evidence.clone();
    let mut interchanges = Vec::new();
    for w in find_interchanges(m)? {
        let mut reason = refute_interchange(m, &w, &evidence);
        if reason.is_none() {
            if let Some(ev) = prove_gap_pattern_absence(source, interchange_pattern(m, &w), None, 0)? {
                evidence.push(ev);
                reason = refute_interchange(m, &w, &evidence);
            }
        }
        interchanges.push(InterchangeAnalysis { witness: w, reason });
    }

    let widest = inclusions.iter().filter(|a| a.refuted).map(|a| a.span).max().unwrap_or(0);
    let root_cap = opts.root_cap.unwrap_or(0).max(2 * width).max(widest + width);
    let mut assumed: Vec<_> = interchanges
        .iter()
        .filter_map(|i| match &i.reason {
            Some(RefutationReason::GapPatternAbsent { pattern, .. }) => Some(*pattern),
            _ => None,
        })
        .collect();
    assumed.sort();
    assumed.dedup();
    let max_len = bounded_source_length(width, root_cap, target);
    let factors = match &opts.fixed_point_source {
        Some((label, h, seed)) => Some((
            format!("factors of {label}^ω({seed})"),
            fixed_point_factors(h, *seed, max_len)?,
        )),
        None => None,
    };
    let restrict = SourceRestriction { avoid: assumed, factors };
    let bounded = bounded_case_check_restricted(m, source, &restrict, target, root_cap);

    let mut residual = Vec::new();
    if source.square_policy != SquarePolicy::AllForbidden {
        residual.push("source is not squarefree; aligned long squares cannot be pulled back".into());
    }
    if !target.forbids_all_roots_above(root_cap) {
        residual.push(format!("target allows squares with root above {root_cap}"));
    }
    if !bounded.passed() {
        residual.push(format!("{} short-square violations in images", bounded.violation_count));
    }
    for a in inclusions.iter().filter(|a| !a.refuted) {
        let w = &a.witness;
        residual.push(format!(
            "inclusion {name}({}{}) = {} {name}({}) {}",
            m.letter_label(w.a),
            m.letter_label(w.b),
            w.t,
            m.letter_label(w.c),
            w.u
        ));
    }
    for i in interchanges.iter().filter(|i| i.reason.is_none()) {
        residual.push(format!(
            "interchange ({}, {}, {}): gap pattern {} not excluded",
            m.letter_label(i.witness.a),
            m.letter_label(i.witness.b),
            m.letter_label(i.witness.c),
            interchange_pattern(m, &i.witness)
        ));
    }
    Ok(TransferCertificate {
        morphism: name.to_string(),
        width,
        source: source.clone(),
        target: target.clone(),
        depth: opts.depth,
        raw_inclusions,
        complete: residual.is_empty(),
        inclusions,
        interchanges,
        bounded,
        residual,
    })
}

fn first_collision(m: &Morphism) -> Option<(u8, u8)> {
    let k = m.source_alphabet();
    (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .find(|&(a, b)| m.image(a) == m.image(b))
}
