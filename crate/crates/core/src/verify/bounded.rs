use std::collections::HashSet;

use serde::Serialize;

use super::align::SourceView;
use crate::enumerate::walk;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::scan::GapPattern;
use crate::spec::{AvoidanceSpec, Violation};
use crate::word::Symbol;

const KEPT_VIOLATIONS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedViolation {
    /// Source word, as letter labels.
    pub source: String,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedReport {
    pub root_cap: usize,
    /// Gap patterns the source words were additionally required to avoid.
    pub avoided_patterns: Vec<GapPattern>,
    /// Set when source words were restricted to factors of a fixed point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_source: Option<String>,
    pub max_source_length: usize,
    /// Legal source words per length, starting at length 0.
    pub words_by_length: Vec<u64>,
    pub words_checked: u64,
    pub violation_count: u64,
    pub violations: Vec<BoundedViolation>,
}

impl BoundedReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Source length needed so that every target factor of length
/// `2·root_cap` (and every forbidden factor) lies inside the image of a
/// legal source word.
pub fn bounded_source_length(width: usize, root_cap: usize, target: &AvoidanceSpec) -> usize {
    let by_root = 2 * root_cap / width + 2;
    let by_factor = target.max_factor_len().saturating_sub(1).div_ceil(width) + 1;
    by_root.max(by_factor)
}

/// Checks the image of every legal source word up to
/// [`bounded_source_length`] against `target`, with squares and cubes
/// limited to roots at most `root_cap`. Source legality is taken through
/// the letter classes of `m`.
pub fn bounded_case_check(m: &Morphism, source: &AvoidanceSpec, target: &AvoidanceSpec, root_cap: usize) -> BoundedReport {
    bounded_case_check_restricted(m, source, &SourceRestriction::default(), target, root_cap)
}

/// Extra conditions on source words beyond the source spec, all in letter
/// classes.
#[derive(Debug, Clone, Default)]
pub struct SourceRestriction {
    pub avoid: Vec<GapPattern>,
    /// Only factors of this fixed point, with a description for reports.
    pub factors: Option<(String, FactorSet)>,
}

/// Every factor of a fixed point up to some length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    pub max_length: usize,
    pub words: HashSet<Vec<Symbol>>,
}

impl FactorSet {
    pub fn contains(&self, w: &[Symbol]) -> bool {
        self.words.contains(w)
    }
}

/// Exact factors of `h^ω(seed)` of length at most `max_length`.
///
/// Length-2 factors are closed under taking factors of images starting from
/// the first two letters; a factor of length `n > 2` lies in the image of a
/// factor of length `⌈(n-1)/W⌉ + 1 < n`.
pub fn fixed_point_factors(h: &Morphism, seed: Symbol, max_length: usize) -> Result<FactorSet> {
    let width = h.require_uniform()?;
    if width < 2 {
        return Err(Error::Precondition("fixed-point factors need width at least 2".into()));
    }
    let prefix = h.fixed_point_prefix(seed, 2)?;
    let mut by_len: Vec<HashSet<Vec<Symbol>>> = vec![HashSet::new(); max_length.max(2) + 1];
    by_len[0].insert(Vec::new());
    by_len[2].insert(prefix[..2].to_vec());
    let mut todo: Vec<Vec<Symbol>> = vec![prefix[..2].to_vec()];
    while let Some(u) = todo.pop() {
        for f in h.apply_symbols(&u)?.windows(2) {
            if by_len[2].insert(f.to_vec()) {
                todo.push(f.to_vec());
            }
        }
    }
    by_len[1] = by_len[2].iter().flat_map(|f| f.iter().map(|&a| vec![a])).collect();
    for n in 3..=max_length {
        let m = (n - 2) / width + 2;
        let mut next = HashSet::new();
        for u in &by_len[m] {
            for f in h.apply_symbols(u)?.windows(n) {
                next.insert(f.to_vec());
            }
        }
        by_len[n] = next;
    }
    by_len.truncate(max_length + 1);
    Ok(FactorSet {
        max_length,
        words: by_len.into_iter().flatten().collect(),
    })
}

/// [`bounded_case_check`] over source words that also satisfy `restrict`.
pub fn bounded_case_check_restricted(
    m: &Morphism,
    source: &AvoidanceSpec,
    restrict: &SourceRestriction,
    target: &AvoidanceSpec,
    root_cap: usize,
) -> BoundedReport {
    let avoid = &restrict.avoid;
    let width = m.uniform_width().expect("uniform morphism");
    let view = SourceView { m, spec: source };
    let max_len = bounded_source_length(width, root_cap, target);
    let mut report = BoundedReport {
        root_cap,
        avoided_patterns: avoid.to_vec(),
        factor_source: restrict.factors.as_ref().map(|(d, _)| d.clone()),
        max_source_length: max_len,
        words_by_length: vec![0; max_len + 1],
        words_checked: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    let mut classes: Vec<Symbol> = Vec::new();
    let mut image: Vec<Symbol> = Vec::new();
    walk(
        m.source_alphabet(),
        max_len,
        |w| {
            classes.truncate(w.len() - 1);
            classes.push(m.class_of(w[w.len() - 1]));
            let end = classes.len() - 1;
            source.violation_ending_at(&classes, end, usize::MAX).is_none()
                && !avoid.iter().any(|&p| gap_ends_at(&classes, p, end))
                && restrict.factors.as_ref().is_none_or(|(_, f)| {
                    classes.len() > f.max_length || f.contains(&classes)
                })
        },
        |w| {
            report.words_by_length[w.len()] += 1;
            report.words_checked += 1;
            let Some(&last) = w.last() else {
                return true;
            };
            image.truncate((w.len() - 1) * width);
            image.extend_from_slice(m.image(last));
            for end in (w.len() - 1) * width..image.len() {
                if let Some(v) = target.violation_ending_at(&image, end, root_cap) {
                    report.violation_count += 1;
                    if report.violations.len() < KEPT_VIOLATIONS {
                        report.violations.push(BoundedViolation {
                            source: view.label(w),
                            violation: v,
                        });
                    }
                    break;
                }
            }
            true
        },
    );
    report
}

fn gap_ends_at(w: &[Symbol], p: GapPattern, end: usize) -> bool {
    if w[end] != p.last {
        return false;
    }
    (0..)
        .map(|l| (l, 2 * l + 3))
        .take_while(|&(_, len)| len <= end + 1)
        .any(|(l, len)| {
            let start = end + 1 - len;
            w[start] == p.first && w[start + l + 1] == p.middle && w[start + 1..start + 1 + l] == w[start + l + 2..end]
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thue_morse_factors() {
        let tm = Morphism::from_strs(&["01", "10"]).unwrap();
        let f = fixed_point_factors(&tm, 0, 6).unwrap();
        let prefix = tm.fixed_point_prefix(0, 4096).unwrap();
        for n in 1..=6 {
            let direct: HashSet<Vec<u8>> = prefix.windows(n).map(|w| w.to_vec()).collect();
            let ours: HashSet<Vec<u8>> = f.words.iter().filter(|w| w.len() == n).cloned().collect();
            assert_eq!(ours, direct, "n = {n}");
        }
    }

    #[test]
    fn identity_exposes_source_squares() {
        let id = Morphism::from_strs(&["0", "1"]).unwrap();
        let r = bounded_case_check(&id, &AvoidanceSpec::unconstrained(2), &AvoidanceSpec::squarefree_avoiding(2, &[]).unwrap(), 2);
        assert!(!r.passed());
        assert_eq!(r.violations[0].source, "00");
        assert_eq!(r.words_by_length[..3], [1, 2, 4]);
    }

    #[test]
    fn avoided_patterns_prune_sources() {
        let id = Morphism::from_strs(&["0", "1", "2"]).unwrap();
        let any = AvoidanceSpec::unconstrained(3);
        let p = GapPattern::new(0, 1, 2);
        let restrict = SourceRestriction {
            avoid: vec![p],
            factors: None,
        };
        let r = bounded_case_check_restricted(&id, &any, &restrict, &any, 3);
        // 3^n minus words containing 0α1α2
        let naive = |n: u32| {
            (0..3u32.pow(n))
                .filter(|&i| {
                    let w: Vec<u8> = (0..n).map(|j| (i / 3u32.pow(j) % 3) as u8).collect();
                    crate::scan::contains_gap_pattern(&w, p).is_none()
                })
                .count() as u64
        };
        for n in 0..=r.max_source_length {
            assert_eq!(r.words_by_length[n], naive(n as u32), "n = {n}");
        }
    }
}
