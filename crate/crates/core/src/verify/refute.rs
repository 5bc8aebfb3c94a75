use serde::Serialize;

use super::align::{search, Alignment, AlignmentOutcome, SourceView};
use super::gap::GapEvidence;
use super::witness::{InclusionWitness, InterchangeWitness};
use crate::morphism::Morphism;
use crate::scan::GapPattern;
use crate::spec::AvoidanceSpec;
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Prefix,
    Suffix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RefutationReason {
    Trivial,
    /// The source forbids a factor the embedding would need (labels, hats kept).
    SourceForbidsFactor { factor: String },
    /// `word` is not a prefix (or suffix) of any image.
    SuffixOrPrefixMismatch { side: Side, word: Word },
    /// Two adjacent parse letters fall in the same class.
    LetterCoincidence { factor: String },
    /// Every letter that can extend the short parse in `direction` makes it illegal.
    ForcedExtension {
        direction: Direction,
        candidates: Vec<String>,
        illegal: Vec<String>,
    },
    GapPatternAbsent { pattern: GapPattern, evidence: GapEvidence },
    AlignmentExhausted { steps: usize, span: usize, dead_ends: usize },
}

/// One way of placing `m(ab)` inside `m(e c e')`, with `v m(ab) w = m(e c e')`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingCase {
    pub e: Symbol,
    pub e_prime: Symbol,
    pub v: Word,
    pub w: Word,
    /// `A`..`G`, `ext`, or `open`.
    pub label: String,
    pub reason: Option<RefutationReason>,
    /// Target letters the argument relies on.
    pub span: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alignment: Option<AlignmentOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionAnalysis {
    pub witness: InclusionWitness,
    /// `a.i`, `a.source`, `a.ii`, `a.iii` or `a.iv`.
    pub case: String,
    pub reason: Option<RefutationReason>,
    pub embeddings: Vec<EmbeddingCase>,
    pub refuted: bool,
    pub span: usize,
}

impl InclusionAnalysis {
    /// Full row label, e.g. `a.iv.F`.
    pub fn labels(&self) -> Vec<String> {
        if self.embeddings.is_empty() {
            vec![self.case.clone()]
        } else {
            self.embeddings.iter().map(|e| format!("{}.{}", self.case, e.label)).collect()
        }
    }
}

fn ends_with_any(m: &Morphism, x: &[Symbol]) -> bool {
    m.images().iter().any(|im| im.ends_with(x))
}

fn starts_with_any(m: &Morphism, x: &[Symbol]) -> bool {
    m.images().iter().any(|im| im.symbols().starts_with(x))
}

/// Tries the cases in order: trivial, source-forbidden `ab`, prefix and
/// suffix mismatch, then each embedding `m(ab) ⊂ m(e c e')` with labels
/// `A D E B C` at depth 1, the forced extensions `F G` from depth 2, and the
/// two-parse search (`2·depth` steps) from depth 3.
pub fn refute_inclusion(m: &Morphism, w: &InclusionWitness, source: &AvoidanceSpec, depth: usize) -> InclusionAnalysis {
    let view = SourceView { m, spec: source };
    let width = m.uniform_width().unwrap_or(0);
    let done = |case: &str, reason: RefutationReason, span: usize| InclusionAnalysis {
        witness: w.clone(),
        case: case.into(),
        reason: Some(reason),
        embeddings: Vec::new(),
        refuted: true,
        span,
    };
    if w.is_trivial() {
        return done("a.i", RefutationReason::Trivial, 0);
    }
    if !view.legal(&[w.a, w.b]) {
        let factor = view.label(&[w.a, w.b]);
        return done("a.source", RefutationReason::SourceForbidsFactor { factor }, 0);
    }
    if !starts_with_any(m, &w.u) {
        let reason = RefutationReason::SuffixOrPrefixMismatch {
            side: Side::Prefix,
            word: w.u.clone(),
        };
        return done("a.ii", reason, 2 * width);
    }
    if !ends_with_any(m, &w.t) {
        let reason = RefutationReason::SuffixOrPrefixMismatch {
            side: Side::Suffix,
            word: w.t.clone(),
        };
        return done("a.iii", reason, 2 * width);
    }
    let mut out = InclusionAnalysis {
        witness: w.clone(),
        case: "a.iv".into(),
        reason: None,
        embeddings: Vec::new(),
        refuted: false,
        span: 0,
    };
    if depth == 0 {
        return out;
    }
    let k = m.source_alphabet();
    let tk = m.target_alphabet();
    for e in (0..k).filter(|&e| m.image(e).ends_with(&w.t)) {
        for e2 in (0..k).filter(|&e2| m.image(e2).starts_with(&w.u)) {
            let v = Word::new(m.image(e)[..width - w.t.len()].to_vec(), tk).expect("image letters");
            let wt = Word::new(m.image(e2)[w.u.len()..].to_vec(), tk).expect("image letters");
            out.embeddings.push(embedding(&view, w, depth, width, e, e2, v, wt));
        }
    }
    out.refuted = out.embeddings.iter().all(|c| c.reason.is_some());
    out.span = out.embeddings.iter().map(|c| c.span).max().unwrap_or(2 * width);
    out
}

#[allow(clippy::too_many_arguments)]
fn embedding(
    view: &SourceView,
    w: &InclusionWitness,
    depth: usize,
    width: usize,
    e: Symbol,
    e2: Symbol,
    v: Word,
    wt: Word,
) -> EmbeddingCase {
    let m = view.m;
    let k = m.source_alphabet();
    let mut case = EmbeddingCase {
        e,
        e_prime: e2,
        v,
        w: wt,
        label: "open".into(),
        reason: None,
        span: 3 * width,
        alignment: None,
    };
    let settle = |case: &mut EmbeddingCase, label: &str, reason: RefutationReason| {
        case.label = label.into();
        case.reason = Some(reason);
    };
    if case.v.is_empty() || case.w.is_empty() {
        settle(&mut case, "A", RefutationReason::Trivial);
        return case;
    }
    for pair in [[e, w.c], [w.c, e2]] {
        if m.class_of(pair[0]) == m.class_of(pair[1]) && !view.legal(&pair) {
            let factor = view.label(&pair);
            settle(&mut case, "D", RefutationReason::LetterCoincidence { factor });
            return case;
        }
    }
    if !view.legal(&[e, w.c, e2]) {
        let factor = view.label(&[e, w.c, e2]);
        settle(&mut case, "E", RefutationReason::SourceForbidsFactor { factor });
        return case;
    }
    if !starts_with_any(m, &case.w) {
        let reason = RefutationReason::SuffixOrPrefixMismatch {
            side: Side::Prefix,
            word: case.w.clone(),
        };
        settle(&mut case, "B", reason);
        return case;
    }
    if !ends_with_any(m, &case.v) {
        let reason = RefutationReason::SuffixOrPrefixMismatch {
            side: Side::Suffix,
            word: case.v.clone(),
        };
        settle(&mut case, "C", reason);
        return case;
    }
    if depth >= 2 {
        let left: Vec<Symbol> = (0..k).filter(|&x| m.image(x).ends_with(&case.v)).collect();
        let right: Vec<Symbol> = (0..k).filter(|&x| m.image(x).starts_with(&case.w)).collect();
        let same = |xs: &[Symbol], y: Symbol| xs.iter().all(|&x| m.class_of(x) == m.class_of(y));
        let left_dead = |xs: &[Symbol]| xs.iter().all(|&x| !view.legal(&[x, w.a, w.b]));
        let right_dead = |xs: &[Symbol]| xs.iter().all(|&x| !view.legal(&[w.a, w.b, x]));
        // the square-forced cases first, then any illegal extension
        let forced = if same(&left, w.a) && left_dead(&left) {
            Some(Direction::Left)
        } else if same(&right, w.b) && right_dead(&right) {
            Some(Direction::Right)
        } else if left_dead(&left) {
            Some(Direction::Left)
        } else if right_dead(&right) {
            Some(Direction::Right)
        } else {
            None
        };
        if let Some(direction) = forced {
            let (label, xs) = match direction {
                Direction::Left => ("F", &left),
                Direction::Right => ("G", &right),
            };
            let word = |x: Symbol| match direction {
                Direction::Left => view.label(&[x, w.a, w.b]),
                Direction::Right => view.label(&[w.a, w.b, x]),
            };
            let reason = RefutationReason::ForcedExtension {
                direction,
                candidates: xs.iter().map(|&x| m.letter_label(x)).collect(),
                illegal: xs.iter().map(|&x| word(x)).collect(),
            };
            case.span = 4 * width;
            settle(&mut case, label, reason);
            return case;
        }
    }
    if depth >= 3 {
        let start = Alignment {
            p: vec![w.a, w.b],
            p_start: 0,
            q: vec![e, w.c, e2],
            q_start: w.t.len() as isize - width as isize,
        };
        let outcome = search(view, start, 2, 2 * depth);
        case.span = outcome.span;
        if outcome.refuted {
            let reason = RefutationReason::AlignmentExhausted {
                steps: outcome.steps,
                span: outcome.span,
                dead_ends: outcome.dead_ends,
            };
            settle(&mut case, "ext", reason);
        }
        case.alignment = Some(outcome);
    }
    case
}

/// Interchange refutation from letter coincidence or a proof that the gap
/// pattern `b α c α a` (in letter classes) is absent.
pub fn refute_interchange(m: &Morphism, w: &InterchangeWitness, evidence: &[GapEvidence]) -> Option<RefutationReason> {
    if m.class_of(w.a) == m.class_of(w.c) || m.class_of(w.b) == m.class_of(w.c) {
        return Some(RefutationReason::Trivial);
    }
    let pattern = interchange_pattern(m, w);
    evidence
        .iter()
        .find(|ev| ev.pattern() == pattern && ev.is_proven())
        .map(|ev| RefutationReason::GapPatternAbsent {
            pattern,
            evidence: ev.clone(),
        })
}

pub fn interchange_pattern(m: &Morphism, w: &InterchangeWitness) -> GapPattern {
    GapPattern::new(m.class_of(w.b), m.class_of(w.c), m.class_of(w.a))
}
