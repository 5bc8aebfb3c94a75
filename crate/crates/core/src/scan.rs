//! Factor-level scanners: squares, cubes, forbidden factors, gap patterns
//! and the perfect shuffle.
//!
//! Repetition scans sample positions: a square `xx` with `|x| = p` starting at
//! `s` covers the multiple of `p` in `(s - p, s]` together with the position
//! `p` to its right, so one LCE query in each direction at every multiple of
//! `p` finds all of them. With O(1) LCE this is `O(n log n + occ)` for a full
//! scan over all roots. Gap patterns use the same sampling with period
//! `|alpha| + 1` and run length `|alpha|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lce::LceIndex;
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SquareOccurrence {
    pub position: usize,
    pub root_length: usize,
}

impl SquareOccurrence {
    /// Re-checks the occurrence against `w` symbol by symbol.
    pub fn holds_in(&self, w: &[Symbol]) -> bool {
        let (p, r) = (self.position, self.root_length);
        r >= 1 && p + 2 * r <= w.len() && w[p..p + r] == w[p + r..p + 2 * r]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CubeOccurrence {
    pub position: usize,
    pub root_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOccurrence {
    pub factor: String,
    pub position: usize,
}

/// The shape `first · alpha · middle · alpha · last` for an arbitrary,
/// possibly empty, word `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GapPattern {
    pub first: Symbol,
    pub middle: Symbol,
    pub last: Symbol,
}

impl GapPattern {
    pub fn new(first: Symbol, middle: Symbol, last: Symbol) -> Self {
        GapPattern {
            first,
            middle,
            last,
        }
    }

    /// The instance `first · alpha · middle · alpha · last`.
    pub fn instance(&self, alpha: &[Symbol]) -> Vec<Symbol> {
        let mut w = Vec::with_capacity(2 * alpha.len() + 3);
        w.push(self.first);
        w.extend_from_slice(alpha);
        w.push(self.middle);
        w.extend_from_slice(alpha);
        w.push(self.last);
        w
    }

    pub fn check_alphabet(&self, alphabet: u8) -> Result<()> {
        for (index, s) in [self.first, self.middle, self.last].into_iter().enumerate() {
            if s >= alphabet {
                return Err(Error::SymbolOutOfRange {
                    symbol: s,
                    index,
                    alphabet,
                });
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for GapPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}a{}a{}", self.first, self.middle, self.last)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapOccurrence {
    pub first_position: usize,
    pub middle_position: usize,
    pub last_position: usize,
    pub alpha_length: usize,
}

/// A word together with its LCE index, for running several scans.
pub struct Scanner<'a> {
    w: &'a [Symbol],
    lce: LceIndex,
}

impl<'a> Scanner<'a> {
    pub fn new(w: &'a [Symbol]) -> Self {
        Scanner {
            w,
            lce: LceIndex::new(w),
        }
    }

    /// Every square with root in `min_root..=max_root`, sorted by (position, root).
    pub fn squares(&self, min_root: usize, max_root: usize) -> Vec<SquareOccurrence> {
        let mut out = Vec::new();
        for p in min_root.max(1)..=max_root.min(self.w.len() / 2) {
            self.lce.periodic_starts(p, p, |s| {
                out.push(SquareOccurrence {
                    position: s,
                    root_length: p,
                });
                true
            });
        }
        out.sort_unstable();
        out
    }

    /// The square with the smallest (position, root) among roots in range.
    pub fn leftmost_square(&self, min_root: usize, max_root: usize) -> Option<SquareOccurrence> {
        let mut best: Option<SquareOccurrence> = None;
        for p in min_root.max(1)..=max_root.min(self.w.len() / 2) {
            self.lce.periodic_starts(p, p, |s| {
                let occ = SquareOccurrence {
                    position: s,
                    root_length: p,
                };
                if best.is_none_or(|b| occ < b) {
                    best = Some(occ);
                }
                false
            });
        }
        best
    }

    pub fn max_square_root(&self) -> usize {
        for p in (1..=self.w.len() / 2).rev() {
            let mut found = false;
            self.lce.periodic_starts(p, p, |_| {
                found = true;
                false
            });
            if found {
                return p;
            }
        }
        0
    }

    pub fn cubes(&self, max_root: usize) -> Vec<CubeOccurrence> {
        let mut out = Vec::new();
        for p in 1..=max_root.min(self.w.len() / 3) {
            self.lce.periodic_starts(p, 2 * p, |s| {
                out.push(CubeOccurrence {
                    position: s,
                    root_length: p,
                });
                true
            });
        }
        out.sort_unstable();
        out
    }

    pub fn leftmost_cube(&self, max_root: usize) -> Option<CubeOccurrence> {
        let mut best: Option<CubeOccurrence> = None;
        for p in 1..=max_root.min(self.w.len() / 3) {
            self.lce.periodic_starts(p, 2 * p, |s| {
                let occ = CubeOccurrence {
                    position: s,
                    root_length: p,
                };
                if best.is_none_or(|b| occ < b) {
                    best = Some(occ);
                }
                false
            });
        }
        best
    }

    /// Leftmost occurrence of `p`, ties broken by shortest `alpha`.
    pub fn gap_pattern(&self, p: GapPattern) -> Option<GapOccurrence> {
        let w = self.w;
        let n = w.len();
        let mut best: Option<(usize, usize)> = None;
        // alpha empty: the factor first·middle·last
        if let Some(i) = w
            .windows(3)
            .position(|t| t == [p.first, p.middle, p.last])
        {
            best = Some((i, 0));
        }
        let mut len = 1;
        while 2 * len + 3 <= n {
            let period = len + 1;
            if best.is_some_and(|(i, _)| i == 0) {
                break;
            }
            self.lce.periodic_starts(period, len, |s| {
                if s == 0 {
                    return true;
                }
                let i = s - 1;
                if best.is_some_and(|(bi, _)| i >= bi) {
                    return false;
                }
                if i + 2 * period < n
                    && w[i] == p.first
                    && w[i + period] == p.middle
                    && w[i + 2 * period] == p.last
                {
                    best = Some((i, len));
                    return false;
                }
                true
            });
            len += 1;
        }
        best.map(|(i, len)| GapOccurrence {
            first_position: i,
            middle_position: i + len + 1,
            last_position: i + 2 * len + 2,
            alpha_length: len,
        })
    }
}

/// All squares with root at least `min_root` (values below 1 are treated as 1).
pub fn find_squares(w: &[Symbol], min_root: usize) -> Vec<SquareOccurrence> {
    Scanner::new(w).squares(min_root, usize::MAX)
}

/// Largest root of a square factor of `w`, 0 if `w` is squarefree.
pub fn max_square_root(w: &[Symbol]) -> usize {
    Scanner::new(w).max_square_root()
}

pub fn find_cubes(w: &[Symbol]) -> Vec<CubeOccurrence> {
    Scanner::new(w).cubes(usize::MAX)
}

pub fn contains_gap_pattern(w: &[Symbol], p: GapPattern) -> Option<GapOccurrence> {
    Scanner::new(w).gap_pattern(p)
}

pub fn contains_factor(w: &Word, f: &Word) -> Result<bool> {
    w.same_alphabet(f)?;
    Ok(find_factor(w, f).is_some())
}

pub(crate) fn find_factor(w: &[Symbol], f: &[Symbol]) -> Option<usize> {
    if f.is_empty() {
        return Some(0);
    }
    w.windows(f.len()).position(|x| x == f)
}

/// Leftmost occurrence of any member of `fs`; ties go to the shorter factor.
pub fn scan_forbidden(w: &Word, fs: &[Word]) -> Result<Option<FactorOccurrence>> {
    for f in fs {
        w.same_alphabet(f)?;
    }
    Ok(leftmost_factor(w, fs.iter().map(|f| f.symbols())).map(|(position, f)| {
        FactorOccurrence {
            factor: crate::word::render(f),
            position,
        }
    }))
}

pub(crate) fn leftmost_factor<'f>(
    w: &[Symbol],
    fs: impl Iterator<Item = &'f [Symbol]> + Clone,
) -> Option<(usize, &'f [Symbol])> {
    for i in 0..w.len() {
        let mut hit: Option<&[Symbol]> = None;
        for f in fs.clone() {
            if !f.is_empty() && w[i..].starts_with(f) && hit.is_none_or(|h| f.len() < h.len()) {
                hit = Some(f);
            }
        }
        if let Some(f) = hit {
            return Some((i, f));
        }
    }
    None
}

/// `a1 b1 a2 b2 ... an bn` for `w = a1..an`, `x = b1..bn`.
pub fn perfect_shuffle(w: &Word, x: &Word) -> Result<Word> {
    w.same_alphabet(x)?;
    if w.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: w.len(),
            right: x.len(),
        });
    }
    let symbols = w.iter().zip(x.iter()).flat_map(|(&a, &b)| [a, b]).collect();
    Word::new(symbols, w.alphabet_size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::digits;
    use proptest::prelude::*;

    fn naive_squares(w: &[u8], min_root: usize) -> Vec<SquareOccurrence> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            for r in min_root.max(1)..=(w.len() - i) / 2 {
                if w[i..i + r] == w[i + r..i + 2 * r] {
                    out.push(SquareOccurrence {
                        position: i,
                        root_length: r,
                    });
                }
            }
        }
        out
    }

    fn naive_gap(w: &[u8], p: GapPattern) -> Option<(usize, usize)> {
        for i in 0..w.len() {
            for l in 0..w.len() {
                if i + 2 * l + 3 > w.len() {
                    break;
                }
                let a = &w[i + 1..i + 1 + l];
                if p.instance(a) == w[i..i + 2 * l + 3] {
                    return Some((i, l));
                }
            }
        }
        None
    }

    #[test]
    fn square_examples() {
        assert_eq!(
            find_squares(&digits("0101"), 1),
            vec![SquareOccurrence {
                position: 0,
                root_length: 2
            }]
        );
        assert_eq!(
            find_squares(&digits("010010"), 3),
            vec![SquareOccurrence {
                position: 0,
                root_length: 3
            }]
        );
        assert!(find_squares(&[], 1).is_empty());
        assert_eq!(max_square_root(&digits("0102")), 0);
    }

    #[test]
    fn cube_examples() {
        assert_eq!(
            find_cubes(&digits("010101")),
            vec![CubeOccurrence {
                position: 0,
                root_length: 2
            }]
        );
    }

    #[test]
    fn every_binary_word_of_length_four_has_a_square() {
        for bits in 0u8..16 {
            let w: Vec<u8> = (0..4).map(|i| (bits >> i) & 1).collect();
            assert!(!find_squares(&w, 1).is_empty(), "{w:?}");
        }
    }

    #[test]
    fn forbidden_scan() {
        let w = Word::parse("10302", 4).unwrap();
        let fs = vec![Word::parse("10302", 4).unwrap()];
        assert_eq!(
            scan_forbidden(&w, &fs).unwrap(),
            Some(FactorOccurrence {
                factor: "10302".into(),
                position: 0
            })
        );
        let bad = vec![Word::parse("1", 2).unwrap()];
        assert!(scan_forbidden(&w, &bad).is_err());
    }

    #[test]
    fn gap_examples() {
        let occ = contains_gap_pattern(&digits("013"), GapPattern::new(0, 1, 3)).unwrap();
        assert_eq!(occ.alpha_length, 0);
        let occ = contains_gap_pattern(&digits("00100"), GapPattern::new(0, 1, 0)).unwrap();
        assert_eq!(
            occ,
            GapOccurrence {
                first_position: 0,
                middle_position: 2,
                last_position: 4,
                alpha_length: 1
            }
        );
    }

    #[test]
    fn shuffle_examples() {
        let e = Word::empty(2);
        assert_eq!(perfect_shuffle(&e, &e).unwrap(), e);
        let a = Word::parse("010", 2).unwrap();
        let b = Word::parse("001", 2).unwrap();
        assert_eq!(perfect_shuffle(&a, &b).unwrap().to_string(), "001001");
        assert!(matches!(
            perfect_shuffle(&a, &Word::parse("01", 2).unwrap()),
            Err(Error::LengthMismatch { left: 3, right: 2 })
        ));
    }

    proptest! {
        #[test]
        fn squares_match_naive(w in proptest::collection::vec(0u8..2, 0..48), min_root in 1usize..5) {
            let got = find_squares(&w, min_root);
            prop_assert_eq!(&got, &naive_squares(&w, min_root));
            for occ in &got {
                prop_assert!(occ.holds_in(&w));
            }
            let max = naive_squares(&w, 1).iter().map(|o| o.root_length).max().unwrap_or(0);
            prop_assert_eq!(max_square_root(&w), max);
        }

        #[test]
        fn cubes_match_naive(w in proptest::collection::vec(0u8..2, 0..40)) {
            let mut want = Vec::new();
            for i in 0..w.len() {
                for r in 1..=(w.len() - i) / 3 {
                    if w[i..i + r] == w[i + r..i + 2 * r] && w[i..i + r] == w[i + 2 * r..i + 3 * r] {
                        want.push(CubeOccurrence { position: i, root_length: r });
                    }
                }
            }
            prop_assert_eq!(find_cubes(&w), want);
        }

        #[test]
        fn gap_matches_naive(w in proptest::collection::vec(0u8..3, 0..30), b in 0u8..3, c in 0u8..3, a in 0u8..3) {
            let p = GapPattern::new(b, c, a);
            let got = contains_gap_pattern(&w, p).map(|o| (o.first_position, o.alpha_length));
            prop_assert_eq!(got, naive_gap(&w, p));
            if let Some(o) = contains_gap_pattern(&w, p) {
                let alpha = &w[o.first_position + 1..o.middle_position];
                prop_assert_eq!(&p.instance(alpha)[..], &w[o.first_position..=o.last_position]);
            }
        }

        #[test]
        fn empty_alpha_agrees_with_factor(w in proptest::collection::vec(0u8..3, 0..30), b in 0u8..3, c in 0u8..3, a in 0u8..3) {
            let p = GapPattern::new(b, c, a);
            let has_empty = contains_gap_pattern(&w, p).is_some_and(|o| o.alpha_length == 0);
            let leftmost_is_factor = find_factor(&w, &[b, c, a]);
            if leftmost_is_factor.is_some() {
                prop_assert!(contains_gap_pattern(&w, p).is_some());
            }
            if has_empty {
                prop_assert!(leftmost_is_factor.is_some());
            }
            if leftmost_is_factor.is_none() {
                prop_assert!(!has_empty);
            }
        }

        #[test]
        fn shuffle_splits(w in proptest::collection::vec(0u8..2, 0..30), seed in proptest::collection::vec(0u8..2, 30)) {
            let x = Word::new(seed[..w.len()].to_vec(), 2).unwrap();
            let w = Word::new(w, 2).unwrap();
            let s = perfect_shuffle(&w, &x).unwrap();
            let even: Vec<u8> = s.iter().step_by(2).copied().collect();
            let odd: Vec<u8> = s.iter().skip(1).step_by(2).copied().collect();
            prop_assert_eq!(&even[..], w.symbols());
            prop_assert_eq!(&odd[..], x.symbols());
        }

        #[test]
        fn scan_forbidden_consistent(w in proptest::collection::vec(0u8..2, 0..30), fs in proptest::collection::vec(proptest::collection::vec(0u8..2, 1..4), 0..4)) {
            let word = Word::new(w, 2).unwrap();
            let fws: Vec<Word> = fs.into_iter().map(|f| Word::new(f, 2).unwrap()).collect();
            let any = fws.iter().any(|f| contains_factor(&word, f).unwrap());
            prop_assert_eq!(scan_forbidden(&word, &fws).unwrap().is_some(), any);
        }
    }
}
