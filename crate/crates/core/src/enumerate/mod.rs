//! Exact enumeration of constrained languages by pruned depth-first search.

mod automaton;
mod family;
mod growth;

pub use automaton::FactorAutomaton;
pub use family::{lower_bound_family, FamilyReport};
pub use growth::{growth_rate, GrowthEstimate};

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::spec::AvoidanceSpec;
use crate::word::{Symbol, Word};

/// Visits every word over `{0..k}` of length at most `max_len` whose every
/// prefix passes `accept`. `accept` sees a word whose last letter is new and
/// must decide whether that extension is legal; `visit` returns whether to
/// descend below the word. Iterative, so depth is bounded only by memory.
pub fn walk(
    k: u8,
    max_len: usize,
    mut accept: impl FnMut(&[Symbol]) -> bool,
    mut visit: impl FnMut(&[Symbol]) -> bool,
) {
    let mut w: Vec<Symbol> = Vec::with_capacity(max_len);
    if !visit(&w) || max_len == 0 || k == 0 {
        return;
    }
    w.push(0);
    loop {
        let descend = accept(&w) && visit(&w) && w.len() < max_len;
        if descend {
            w.push(0);
            continue;
        }
        loop {
            let last = w.len() - 1;
            if w[last] + 1 < k {
                w[last] += 1;
                break;
            }
            w.pop();
            if w.is_empty() {
                return;
            }
        }
    }
}

/// [`walk`] over the words legal for `spec`.
pub fn walk_legal(spec: &AvoidanceSpec, max_len: usize, visit: impl FnMut(&[Symbol]) -> bool) {
    walk(
        spec.alphabet_size,
        max_len,
        |w| spec.violation_ending_at(w, w.len() - 1, usize::MAX).is_none(),
        visit,
    );
}

/// All legal words of length exactly `n`, in lexicographic order.
pub fn legal_words(spec: &AvoidanceSpec, n: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    walk_legal(spec, n, |w| {
        if w.len() == n {
            out.push(w.to_vec());
        }
        true
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub spec: AvoidanceSpec,
    pub counts: Vec<BigUint>,
}

impl CountTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{n},{c}");
        }
        out
    }
}

pub fn count_avoiding(spec: &AvoidanceSpec, n_max: usize) -> CountTable {
    let mut counts = vec![0u64; n_max + 1];
    walk_legal(spec, n_max, |w| {
        counts[w.len()] += 1;
        true
    });
    CountTable {
        spec: spec.clone(),
        counts: counts.into_iter().map(BigUint::from).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalForbiddenSet {
    pub alphabet_size: u8,
    pub max_length: usize,
    pub words: Vec<Word>,
}

impl MinimalForbiddenSet {
    pub fn new(alphabet_size: u8, max_length: usize, mut words: Vec<Word>) -> Self {
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        words.dedup();
        MinimalForbiddenSet {
            alphabet_size,
            max_length,
            words,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &str) -> bool {
        self.words.iter().any(|x| x.to_string() == w)
    }
}

/// Spec-violating words of length at most `max_len` whose two one-letter
/// truncations are both legal, sorted by length then lexicographically.
pub fn minimal_forbidden(spec: &AvoidanceSpec, max_len: usize) -> MinimalForbiddenSet {
    let k = spec.alphabet_size;
    let mut found = Vec::new();
    walk_legal(spec, max_len.saturating_sub(1), |w| {
        let mut x = w.to_vec();
        for c in 0..k {
            x.push(c);
            if !x.is_empty()
                && spec.violation_ending_at(&x, x.len() - 1, usize::MAX).is_some()
                && spec.is_legal_small(&x[1..])
            {
                found.push(Word::new(x.clone(), k).expect("letters in range"));
            }
            x.pop();
        }
        true
    });
    MinimalForbiddenSet::new(k, max_len, found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum MaxLength {
    Finite { max_length: usize, witness: Word },
    ExceedsCap { cap: usize },
}

/// Longest legal word, if the legal language is finite and its words are
/// shorter than `hard_cap`.
pub fn exhaust_max_length(spec: &AvoidanceSpec, hard_cap: usize) -> MaxLength {
    let mut best: Vec<Symbol> = Vec::new();
    let mut hit_cap = false;
    walk_legal(spec, hard_cap, |w| {
        if w.len() > best.len() {
            best = w.to_vec();
        }
        if w.len() == hard_cap {
            hit_cap = true;
        }
        !hit_cap
    });
    if hit_cap {
        MaxLength::ExceedsCap { cap: hard_cap }
    } else {
        MaxLength::Finite {
            max_length: best.len(),
            witness: Word::new(best, spec.alphabet_size).expect("letters in range"),
        }
    }
}

/// Number of words of each length `0..=n_max` reaching no dead state.
pub fn path_counts(a: &FactorAutomaton, n_max: usize) -> Vec<BigUint> {
    let mut cur: Vec<BigUint> = vec![BigUint::zero(); a.num_states()];
    cur[0] = BigUint::one();
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        out.push(cur.iter().sum());
        if n == n_max {
            break;
        }
        let mut next = vec![BigUint::zero(); a.num_states()];
        for (s, count) in cur.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for c in 0..a.alphabet_size() {
                if let Some(t) = a.step(s, c) {
                    next[t] += count;
                }
            }
        }
        cur = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::render;

    #[test]
    fn walk_visits_everything_once() {
        let mut seen = Vec::new();
        walk(2, 3, |_| true, |w| {
            seen.push(render(w));
            true
        });
        assert_eq!(seen.len(), 1 + 2 + 4 + 8);
        assert_eq!(seen[..4], ["", "0", "00", "000"]);
    }

    #[test]
    fn golden_counts() {
        let spec = AvoidanceSpec::parse("alphabet 2\nforbid 000 111\n").unwrap();
        let t = count_avoiding(&spec, 5);
        let want: Vec<BigUint> = [1u32, 2, 4, 6, 10, 16].into_iter().map(BigUint::from).collect();
        assert_eq!(t.counts, want);
        assert!(t.to_csv().ends_with("5,16\n"));
    }

    #[test]
    fn squarefree_binary_is_finite() {
        let spec = AvoidanceSpec::parse("alphabet 2\nsquares all\n").unwrap();
        match exhaust_max_length(&spec, 50) {
            MaxLength::Finite { max_length, witness } => {
                assert_eq!(max_length, 3);
                assert_eq!(witness.to_string(), "010");
            }
            other => panic!("{other:?}"),
        }
        let open = AvoidanceSpec::parse("alphabet 2\nsquares min-root 3\n").unwrap();
        assert_eq!(exhaust_max_length(&open, 60), MaxLength::ExceedsCap { cap: 60 });
    }

    #[test]
    fn minimal_forbidden_small() {
        let spec = AvoidanceSpec::parse("alphabet 2\ncubefree\nsquares min-root 4\n").unwrap();
        let fs = minimal_forbidden(&spec, 3);
        let got: Vec<String> = fs.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(got, ["000", "111"]);
    }
}
