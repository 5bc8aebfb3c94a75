//! Morphisms, fixed points and finite substitutions.
//!
//! File format, one letter per line (`#` comments allowed):
//!
//! ```text
//! 0 -> 0310201023
//! 1 -> 0310230102, 0310230201     # substitutions list alternatives
//! ```
//!
//! The source alphabet is the set of letters on the left, which must be
//! exactly `0..k`. The target alphabet is inferred from the images
//! (at least 2).

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{render, Symbol, Word};

/// Default refusal threshold for explicit image-language enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Morphism {
    source_alphabet: u8,
    target_alphabet: u8,
    images: Vec<Word>,
    /// For hatted morphisms: the original letter each source letter stands for.
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<Symbol>>,
}

impl Morphism {
    pub fn new(images: Vec<Word>, target_alphabet: u8) -> Result<Self> {
        if images.is_empty() || images.len() > 255 {
            return Err(Error::BadAlphabet(images.len()));
        }
        for img in &images {
            if img.alphabet_size() != target_alphabet {
                return Err(Error::AlphabetMismatch {
                    expected: target_alphabet,
                    found: img.alphabet_size(),
                });
            }
        }
        Ok(Morphism {
            source_alphabet: images.len() as u8,
            target_alphabet,
            images,
            classes: None,
        })
    }

    /// Builds from digit strings, inferring the target alphabet.
    pub fn from_strs(images: &[&str]) -> Result<Self> {
        let k = infer_alphabet(images.iter().copied());
        let images = images
            .iter()
            .map(|s| Word::parse(s, k))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(images, k)
    }

    /// Attaches a letter-class map (hatted letters map to their originals).
    pub fn with_classes(mut self, classes: Vec<Symbol>) -> Result<Self> {
        if classes.len() != self.images.len() {
            return Err(Error::LengthMismatch {
                left: classes.len(),
                right: self.images.len(),
            });
        }
        self.classes = Some(classes);
        Ok(self)
    }

    pub fn source_alphabet(&self) -> u8 {
        self.source_alphabet
    }

    pub fn target_alphabet(&self) -> u8 {
        self.target_alphabet
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, a: Symbol) -> &Word {
        &self.images[a as usize]
    }

    pub fn class_of(&self, a: Symbol) -> Symbol {
        self.classes.as_ref().map_or(a, |c| c[a as usize])
    }

    pub fn has_classes(&self) -> bool {
        self.classes.is_some()
    }

    /// Alphabet the class letters live in.
    pub fn class_alphabet(&self) -> u8 {
        match &self.classes {
            Some(c) => c.iter().max().map_or(1, |&m| m + 1),
            None => self.source_alphabet,
        }
    }

    /// Human label for a source letter: hatted letters get a trailing `^`.
    pub fn letter_label(&self, a: Symbol) -> String {
        let c = self.class_of(a);
        let hats = if c != a { "^" } else { "" };
        format!("{}{}", render(&[c]), hats)
    }

    pub fn uniform_width(&self) -> Option<usize> {
        let w = self.images[0].len();
        self.images.iter().all(|i| i.len() == w).then_some(w)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<&[Symbol]> = self.images.iter().map(|w| w.symbols()).collect();
        seen.sort();
        seen.windows(2).all(|p| p[0] != p[1])
    }

    pub fn require_uniform(&self) -> Result<usize> {
        self.uniform_width()
            .filter(|&w| w > 0)
            .ok_or(Error::NonUniform)
    }

    pub fn apply_symbols(&self, w: &[Symbol]) -> Result<Vec<Symbol>> {
        let mut out = Vec::with_capacity(w.len() * self.images[0].len());
        for (index, &s) in w.iter().enumerate() {
            if s >= self.source_alphabet {
                return Err(Error::SymbolOutOfRange {
                    symbol: s,
                    index,
                    alphabet: self.source_alphabet,
                });
            }
            out.extend_from_slice(&self.images[s as usize]);
        }
        Ok(out)
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet_size() != self.source_alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.source_alphabet,
                found: w.alphabet_size(),
            });
        }
        Word::new(self.apply_symbols(w)?, self.target_alphabet)
    }

    fn require_endomorphism(&self) -> Result<()> {
        if self.source_alphabet != self.target_alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.source_alphabet,
                found: self.target_alphabet,
            });
        }
        Ok(())
    }

    /// `m^n(w)`.
    pub fn power(&self, n: u32, w: &Word) -> Result<Word> {
        if n > 0 {
            self.require_endomorphism()?;
        }
        let mut cur = w.clone();
        for _ in 0..n {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    pub fn is_prolongable(&self, a: Symbol) -> bool {
        self.source_alphabet == self.target_alphabet
            && a < self.source_alphabet
            && self.images[a as usize].len() >= 2
            && self.images[a as usize][0] == a
    }

    pub fn fixed_point(&self, seed: Symbol) -> Result<FixedPointStream> {
        FixedPointStream::new(self.clone(), seed)
    }

    /// Length-`n` prefix of the fixed point starting with `seed`.
    pub fn fixed_point_prefix(&self, seed: Symbol, n: usize) -> Result<Word> {
        let mut s = self.fixed_point(seed)?;
        s.prefix_word(n)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let rows = parse_rows(text)?;
        let mut images = Vec::with_capacity(rows.len());
        for (line, alts) in rows {
            if alts.len() != 1 {
                return Err(Error::parse(line, "a morphism has exactly one image per letter"));
            }
            images.push(alts.into_iter().next().unwrap());
        }
        let k = images[0].alphabet_size();
        Morphism::new(images, k)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (a, img) in self.images.iter().enumerate() {
            let _ = writeln!(out, "{} -> {}", render(&[a as u8]), img);
        }
        out
    }
}

fn infer_alphabet<'a>(words: impl Iterator<Item = &'a str>) -> u8 {
    words
        .flat_map(|s| s.bytes())
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0' + 1)
        .max()
        .unwrap_or(2)
        .max(2)
}

/// Parses `a -> w1, w2, ...` lines into per-letter alternatives, in letter order.
fn parse_rows(text: &str) -> Result<Vec<(usize, Vec<Word>)>> {
    let mut raw: Vec<(usize, u8, Vec<&str>)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| Error::parse(line_no, "expected `letter -> image`"))?;
        let letter = match lhs.trim().as_bytes() {
            [d] if d.is_ascii_digit() => d - b'0',
            _ => return Err(Error::parse(line_no, format!("bad letter `{}`", lhs.trim()))),
        };
        let alts: Vec<&str> = rhs.split(',').map(str::trim).collect();
        for a in &alts {
            if a.is_empty() || !a.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(line_no, format!("`{a}` is not a digit word")));
            }
        }
        raw.push((line_no, letter, alts));
    }
    if raw.is_empty() {
        return Err(Error::parse(0, "no letters defined"));
    }
    raw.sort_by_key(|r| r.1);
    for (expected, (line, letter, _)) in raw.iter().enumerate() {
        if *letter as usize != expected {
            return Err(Error::parse(
                *line,
                format!("letters must be exactly 0..{} without repeats", raw.len()),
            ));
        }
    }
    let k = infer_alphabet(raw.iter().flat_map(|r| r.2.iter().copied()));
    raw.into_iter()
        .map(|(line, _, alts)| {
            let words = alts
                .into_iter()
                .map(|a| Word::parse(a, k).map_err(|e| Error::parse(line, e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            Ok((line, words))
        })
        .collect()
}

/// Lazily grown prefix of `m^ω(seed)`. Not meant to be shared between threads.
#[derive(Debug, Clone)]
pub struct FixedPointStream {
    morphism: Morphism,
    seed: Symbol,
    buffer: Vec<Symbol>,
}

impl FixedPointStream {
    pub fn new(morphism: Morphism, seed: Symbol) -> Result<Self> {
        if !morphism.is_prolongable(seed) {
            return Err(Error::NotProlongable(seed));
        }
        Ok(FixedPointStream {
            morphism,
            seed,
            buffer: vec![seed],
        })
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn seed(&self) -> Symbol {
        self.seed
    }

    pub fn prefix(&mut self, n: usize) -> &[Symbol] {
        while self.buffer.len() < n {
            self.buffer = self
                .morphism
                .apply_symbols(&self.buffer)
                .expect("fixed point stays in alphabet");
        }
        &self.buffer[..n]
    }

    pub fn prefix_word(&mut self, n: usize) -> Result<Word> {
        let k = self.morphism.target_alphabet;
        Word::new(self.prefix(n).to_vec(), k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Substitution {
    source_alphabet: u8,
    target_alphabet: u8,
    image_sets: Vec<Vec<Word>>,
}

impl Substitution {
    pub fn new(image_sets: Vec<Vec<Word>>, target_alphabet: u8) -> Result<Self> {
        if image_sets.is_empty() || image_sets.len() > 255 {
            return Err(Error::BadAlphabet(image_sets.len()));
        }
        for set in &image_sets {
            let Some(first) = set.first() else {
                return Err(Error::Precondition("empty image set".into()));
            };
            for w in set {
                if w.alphabet_size() != target_alphabet {
                    return Err(Error::AlphabetMismatch {
                        expected: target_alphabet,
                        found: w.alphabet_size(),
                    });
                }
                if w.len() != first.len() {
                    return Err(Error::NonUniform);
                }
            }
        }
        Ok(Substitution {
            source_alphabet: image_sets.len() as u8,
            target_alphabet,
            image_sets,
        })
    }

    /// Each letter gets its morphism image plus the listed extra alternatives.
    pub fn extend(m: &Morphism, extra: &[(Symbol, Word)]) -> Result<Self> {
        let mut sets: Vec<Vec<Word>> = m.images().iter().map(|w| vec![w.clone()]).collect();
        for (a, w) in extra {
            sets.get_mut(*a as usize)
                .ok_or(Error::SymbolOutOfRange {
                    symbol: *a,
                    index: 0,
                    alphabet: m.source_alphabet(),
                })?
                .push(w.clone());
        }
        Substitution::new(sets, m.target_alphabet())
    }

    pub fn source_alphabet(&self) -> u8 {
        self.source_alphabet
    }

    pub fn target_alphabet(&self) -> u8 {
        self.target_alphabet
    }

    pub fn image_sets(&self) -> &[Vec<Word>] {
        &self.image_sets
    }

    pub fn uniform_width(&self) -> Option<usize> {
        let w = self.image_sets[0][0].len();
        self.image_sets.iter().all(|s| s[0].len() == w).then_some(w)
    }

    fn check_word(&self, w: &[Symbol]) -> Result<()> {
        match w.iter().position(|&s| s >= self.source_alphabet) {
            Some(index) => Err(Error::SymbolOutOfRange {
                symbol: w[index],
                index,
                alphabet: self.source_alphabet,
            }),
            None => Ok(()),
        }
    }

    /// Number of words in `s(w)`, counting choice sequences.
    pub fn count(&self, w: &[Symbol]) -> Result<BigUint> {
        self.check_word(w)?;
        Ok(w.iter().fold(BigUint::one(), |acc, &a| {
            acc * BigUint::from(self.image_sets[a as usize].len())
        }))
    }

    /// Enumerates `s(w)` in lexicographic choice order.
    pub fn image_language<'a>(&'a self, w: &'a [Symbol], cap: u64) -> Result<ImageLanguage<'a>> {
        let count = self.count(w)?;
        if count > BigUint::from(cap) {
            return Err(Error::EnumerationCap {
                count: count.to_string(),
                cap,
            });
        }
        Ok(ImageLanguage {
            sub: self,
            source: w,
            choices: vec![0; w.len()],
            done: false,
        })
    }

    pub fn sample_image(&self, w: &[Symbol], seed: u64) -> Result<Word> {
        self.check_word(w)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for &a in w {
            let set = &self.image_sets[a as usize];
            let pick = if set.len() == 1 { 0 } else { rng.gen_range(0..set.len()) };
            out.extend_from_slice(&set[pick]);
        }
        Word::new(out, self.target_alphabet)
    }

    /// The morphism picking each letter's first alternative.
    pub fn primary(&self) -> Morphism {
        let images = self.image_sets.iter().map(|s| s[0].clone()).collect();
        Morphism::new(images, self.target_alphabet).expect("validated on construction")
    }

    /// Every alternative becomes its own letter; the first alternative of
    /// letter `a` keeps index `a`, the others are numbered after the
    /// original alphabet. The class map sends each back to `a`.
    pub fn hatted(&self) -> Morphism {
        let mut images: Vec<Word> = self.image_sets.iter().map(|s| s[0].clone()).collect();
        let mut classes: Vec<Symbol> = (0..self.source_alphabet).collect();
        for (a, set) in self.image_sets.iter().enumerate() {
            for alt in &set[1..] {
                images.push(alt.clone());
                classes.push(a as Symbol);
            }
        }
        Morphism::new(images, self.target_alphabet)
            .and_then(|m| m.with_classes(classes))
            .expect("validated on construction")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let rows = parse_rows(text)?;
        let k = rows[0].1[0].alphabet_size();
        let line_of: Vec<usize> = rows.iter().map(|r| r.0).collect();
        let sets: Vec<Vec<Word>> = rows.into_iter().map(|r| r.1).collect();
        for (i, set) in sets.iter().enumerate() {
            if set.iter().any(|w| w.len() != set[0].len()) {
                return Err(Error::parse(line_of[i], "alternatives must have equal length"));
            }
        }
        Substitution::new(sets, k)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (a, set) in self.image_sets.iter().enumerate() {
            let alts: Vec<String> = set.iter().map(Word::to_string).collect();
            let _ = writeln!(out, "{} -> {}", render(&[a as u8]), alts.join(", "));
        }
        out
    }
}

/// Iterator over the image language of one source word.
pub struct ImageLanguage<'a> {
    sub: &'a Substitution,
    source: &'a [Symbol],
    choices: Vec<usize>,
    done: bool,
}

impl Iterator for ImageLanguage<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let mut out = Vec::new();
        for (&a, &c) in self.source.iter().zip(&self.choices) {
            out.extend_from_slice(&self.sub.image_sets[a as usize][c]);
        }
        // odometer with the last position varying fastest
        self.done = true;
        for i in (0..self.choices.len()).rev() {
            let n = self.sub.image_sets[self.source[i] as usize].len();
            if self.choices[i] + 1 < n {
                self.choices[i] += 1;
                self.done = false;
                break;
            }
            self.choices[i] = 0;
        }
        Some(Word::new(out, self.sub.target_alphabet).expect("images are in range"))
    }
}
