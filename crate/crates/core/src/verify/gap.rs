use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::witness::find_inclusions;
use crate::enumerate::legal_words;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::scan::{contains_gap_pattern, GapPattern};
use crate::spec::AvoidanceSpec;
use crate::word::Symbol;

/// Prefix/suffix window sizes tried by [`prove_gap_pattern_absence`], in order.
pub const WINDOWS: [(usize, usize); 6] = [(1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum GapProof {
    /// `first = middle` or `middle = last` puts a square in every instance.
    Square,
    /// Every instance with a short `α` is illegal, and for longer `α` every
    /// choice of the `prefix` letters after `first` and the `suffix` letters
    /// before `middle` leaves an illegal factor around one of the three letters.
    Window { prefix: usize, suffix: usize },
    /// Desubstitution through the generator: an occurrence with long `α`
    /// forces one of `family` with shorter `α`; short ones are checked
    /// directly up to `base_alpha_max`.
    Descent {
        sync_delay: usize,
        family: Vec<GapPattern>,
        base_alpha_max: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum GapEvidence {
    Proven { pattern: GapPattern, proof: GapProof },
    /// Not found in a prefix of this length; not a proof.
    Empirical { pattern: GapPattern, prefix_length: usize },
}

impl GapEvidence {
    pub fn pattern(&self) -> GapPattern {
        match self {
            GapEvidence::Proven { pattern, .. } | GapEvidence::Empirical { pattern, .. } => *pattern,
        }
    }

    pub fn is_proven(&self) -> bool {
        matches!(self, GapEvidence::Proven { .. })
    }
}

/// Tries the square, window and (given a generator) descent arguments in
/// that order. `Ok(None)` means none applies.
///
/// The descent needs `generator` to be an injective uniform endomorphism of
/// the source alphabet with no nontrivial inclusions; `base_bound` is the
/// longest instance checked directly.
pub fn prove_gap_pattern_absence(
    source: &AvoidanceSpec,
    pattern: GapPattern,
    generator: Option<&Morphism>,
    base_bound: usize,
) -> Result<Option<GapEvidence>> {
    pattern.check_alphabet(source.alphabet_size)?;
    let proven = |proof| Some(GapEvidence::Proven { pattern, proof });
    if (pattern.first == pattern.middle || pattern.middle == pattern.last) && source.forbids_all_roots_above(0) {
        return Ok(proven(GapProof::Square));
    }
    for (prefix, suffix) in WINDOWS {
        if window_proof(source, pattern, prefix, suffix) {
            return Ok(proven(GapProof::Window { prefix, suffix }));
        }
    }
    if let Some(h) = generator {
        if let Some(proof) = descent(h, source, pattern, base_bound)? {
            return Ok(proven(proof));
        }
    }
    Ok(None)
}

/// Scans a prefix of the fixed point `h^ω(seed)` for the pattern.
pub fn empirical_gap_evidence(h: &Morphism, seed: Symbol, pattern: GapPattern, prefix_length: usize) -> Result<Option<GapEvidence>> {
    let w = h.fixed_point_prefix(seed, prefix_length)?;
    Ok(contains_gap_pattern(&w, pattern)
        .is_none()
        .then_some(GapEvidence::Empirical { pattern, prefix_length }))
}

fn all_words(k: u8, n: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = (k as usize).pow(n as u32);
    (0..total).map(move |mut i| {
        let mut w = vec![0; n];
        for s in w.iter_mut().rev() {
            *s = (i % k as usize) as Symbol;
            i /= k as usize;
        }
        w
    })
}

fn window_proof(source: &AvoidanceSpec, p: GapPattern, prefix: usize, suffix: usize) -> bool {
    let k = source.alphabet_size;
    let short = (0..prefix + suffix).all(|n| all_words(k, n).all(|alpha| !source.satisfies(&p.instance(&alpha))));
    if !short {
        return false;
    }
    // α = P·…·S: b·P, S·c·P and S·a are all factors of the instance
    all_words(k, prefix).all(|pw| {
        all_words(k, suffix).all(|sw| {
            let bp = [&[p.first][..], &pw].concat();
            let scp = [&sw[..], &[p.middle], &pw].concat();
            let sa = [&sw[..], &[p.last]].concat();
            !source.satisfies(&bp) || !source.satisfies(&scp) || !source.satisfies(&sa)
        })
    })
}

/// Smallest `D` such that every length-`D` factor of an image of a legal
/// word sits at a single phase modulo the width.
pub fn sync_delay(h: &Morphism, source: &AvoidanceSpec, max_delay: usize) -> Result<Option<usize>> {
    let width = h.require_uniform()?;
    for d in 1..=max_delay {
        let n = d.div_ceil(width) + 1;
        let mut phase: HashMap<Vec<Symbol>, usize> = HashMap::new();
        let mut ok = true;
        'words: for u in legal_words(source, n) {
            let img = h.apply_symbols(&u)?;
            for i in 0..=img.len() - d {
                let ph = i % width;
                if *phase.entry(img[i..i + d].to_vec()).or_insert(ph) != ph {
                    ok = false;
                    break 'words;
                }
            }
        }
        if ok {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn descendants(h: &Morphism, p: GapPattern, width: usize) -> Vec<GapPattern> {
    let k = h.source_alphabet();
    let mut out = BTreeSet::new();
    for ph in 0..width {
        for x in 0..k {
            let ix = h.image(x);
            if ix[ph] != p.first {
                continue;
            }
            for y in 0..k {
                let iy = h.image(y);
                if iy[ph] != p.middle || ix[ph + 1..] != iy[ph + 1..] {
                    continue;
                }
                for z in 0..k {
                    let iz = h.image(z);
                    if iz[ph] == p.last && iy[..ph] == iz[..ph] {
                        out.insert(GapPattern::new(x, y, z));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn descent(h: &Morphism, source: &AvoidanceSpec, p: GapPattern, base_bound: usize) -> Result<Option<GapProof>> {
    let width = h.require_uniform()?;
    if h.source_alphabet() != source.alphabet_size || h.target_alphabet() != source.alphabet_size {
        return Err(Error::AlphabetMismatch {
            expected: source.alphabet_size,
            found: h.target_alphabet(),
        });
    }
    if !h.is_injective() {
        return Err(Error::Precondition("generator must be injective on letters".into()));
    }
    if !find_inclusions(h)?.is_empty() {
        return Err(Error::Precondition("generator has nontrivial inclusions".into()));
    }
    let Some(d) = sync_delay(h, source, 4 * width)? else {
        return Ok(None);
    };
    let mut family = BTreeSet::from([p]);
    let mut todo = vec![p];
    while let Some(q) = todo.pop() {
        for r in descendants(h, q, width) {
            if family.insert(r) {
                todo.push(r);
            }
        }
    }
    let alpha_max = (d - 1).max(base_bound.saturating_sub(3) / 2);
    let longest = 2 * alpha_max + 3;
    let n = (longest - 1).div_ceil(width) + 1;
    let mut factors: HashSet<Vec<Symbol>> = HashSet::new();
    for u in legal_words(source, n) {
        let img = h.apply_symbols(&u)?;
        for len in 3..=longest {
            for f in img.windows(len) {
                factors.insert(f.to_vec());
            }
        }
    }
    let k = source.alphabet_size;
    for q in &family {
        for len in 0..=alpha_max {
            if all_words(k, len).any(|alpha| factors.contains(&q.instance(&alpha))) {
                return Ok(None);
            }
        }
    }
    Ok(Some(GapProof::Descent {
        sync_delay: d,
        family: family.into_iter().collect(),
        base_alpha_max: alpha_max,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_and_window() {
        let sf = AvoidanceSpec::squarefree_avoiding(3, &[]).unwrap();
        let e = prove_gap_pattern_absence(&sf, GapPattern::new(1, 1, 2), None, 0).unwrap();
        assert!(matches!(e, Some(GapEvidence::Proven { proof: GapProof::Square, .. })));
        let e = prove_gap_pattern_absence(&sf, GapPattern::new(0, 1, 2), None, 0).unwrap();
        assert!(e.is_none());
    }

    #[test]
    fn descent_needs_inclusion_free_generator() {
        let s = AvoidanceSpec::unconstrained(2);
        let tm = Morphism::from_strs(&["01", "10"]).unwrap();
        let r = prove_gap_pattern_absence(&s, GapPattern::new(0, 1, 0), Some(&tm), 9);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
