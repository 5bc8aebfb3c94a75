use serde::Serialize;

use crate::morphism::Morphism;
use crate::spec::AvoidanceSpec;
use crate::word::Symbol;

/// Source legality seen through the letter classes of a morphism.
pub(crate) struct SourceView<'a> {
    pub m: &'a Morphism,
    pub spec: &'a AvoidanceSpec,
}

impl SourceView<'_> {
    pub fn classes(&self, letters: &[Symbol]) -> Vec<Symbol> {
        letters.iter().map(|&a| self.m.class_of(a)).collect()
    }

    pub fn legal(&self, letters: &[Symbol]) -> bool {
        self.spec.is_legal_small(&self.classes(letters))
    }

    pub fn label(&self, letters: &[Symbol]) -> String {
        letters.iter().map(|&a| self.m.letter_label(a)).collect()
    }
}

/// Two parses of one stretch of target text: `p` starts at position
/// `p_start`, `q` at `q_start`, both in units of target letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Alignment {
    pub p: Vec<Symbol>,
    pub p_start: isize,
    pub q: Vec<Symbol>,
    pub q_start: isize,
}

/// Outcome of the bounded two-parse search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlignmentOutcome {
    pub refuted: bool,
    /// Extension steps taken along the deepest branch.
    pub steps: usize,
    /// Widest stretch of text the search relied on.
    pub span: usize,
    pub dead_ends: usize,
    /// Both parses of a surviving branch, as source labels.
    pub open: Option<(String, String)>,
}

impl Alignment {
    fn end(start: isize, len: usize, width: usize) -> isize {
        start + (len * width) as isize
    }

    fn span(&self, width: usize) -> usize {
        let lo = self.p_start.min(self.q_start);
        let hi = Self::end(self.p_start, self.p.len(), width).max(Self::end(self.q_start, self.q.len(), width));
        (hi - lo) as usize
    }

    fn letter_at(m: &Morphism, parse: &[Symbol], start: isize, pos: isize, width: usize) -> Option<Symbol> {
        if pos < start || pos >= Self::end(start, parse.len(), width) {
            return None;
        }
        let off = (pos - start) as usize;
        Some(m.image(parse[off / width])[off % width])
    }

    fn agrees(m: &Morphism, x: Symbol, block_start: isize, other: &[Symbol], other_start: isize, width: usize) -> bool {
        m.image(x).iter().enumerate().all(|(j, &s)| {
            Self::letter_at(m, other, other_start, block_start + j as isize, width).is_none_or(|t| t == s)
        })
    }
}

/// Extends both parses alternately to the right and to the left, the lagging
/// parse on that side taking every letter consistent with the other parse's
/// text. A branch dies when a parse becomes illegal or no letter fits. The
/// alignment is refuted when every branch dies within `budget` steps.
pub(crate) fn search(view: &SourceView, start: Alignment, first_step: usize, budget: usize) -> AlignmentOutcome {
    let m = view.m;
    let width = m.uniform_width().expect("uniform morphism");
    let k = m.source_alphabet();
    let mut out = AlignmentOutcome {
        refuted: true,
        steps: first_step,
        span: start.span(width),
        dead_ends: 0,
        open: None,
    };
    let mut stack = vec![(start, first_step)];
    while let Some((node, step)) = stack.pop() {
        out.steps = out.steps.max(step);
        if step >= budget {
            out.refuted = false;
            out.open = Some((view.label(&node.p), view.label(&node.q)));
            break;
        }
        let right = step % 2 == 0;
        let p_lags = if right {
            Alignment::end(node.p_start, node.p.len(), width) <= Alignment::end(node.q_start, node.q.len(), width)
        } else {
            node.p_start >= node.q_start
        };
        let mut children = 0;
        for x in 0..k {
            let mut next = node.clone();
            let (parse, pstart, other, ostart) = if p_lags {
                (&mut next.p, &mut next.p_start, &node.q, node.q_start)
            } else {
                (&mut next.q, &mut next.q_start, &node.p, node.p_start)
            };
            let block = if right {
                Alignment::end(*pstart, parse.len(), width)
            } else {
                *pstart - width as isize
            };
            if !Alignment::agrees(m, x, block, other, ostart, width) {
                continue;
            }
            if right {
                parse.push(x);
            } else {
                parse.insert(0, x);
                *pstart = block;
            }
            out.span = out.span.max(next.span(width));
            let parse: &[Symbol] = if p_lags { &next.p } else { &next.q };
            if !view.legal(parse) {
                out.dead_ends += 1;
                continue;
            }
            children += 1;
            stack.push((next, step + 1));
        }
        if children == 0 {
            out.dead_ends += 1;
        }
    }
    out
}
