//! Finite words over a small alphabet `{0, 1, ..., k-1}`.
//!
//! Symbols are stored as bytes. Textual form renders each symbol as one
//! decimal digit, so the text format only covers alphabets of size at most 10.

use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A letter of an alphabet `{0, ..., k-1}`.
pub type Symbol = u8;

/// A finite word together with the size of its alphabet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: u8,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, alphabet: u8) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::BadAlphabet(0));
        }
        if let Some((index, &symbol)) = symbols.iter().enumerate().find(|(_, &s)| s >= alphabet) {
            return Err(Error::SymbolOutOfRange {
                symbol,
                index,
                alphabet,
            });
        }
        Ok(Word { alphabet, symbols })
    }

    pub fn empty(alphabet: u8) -> Self {
        Word {
            alphabet,
            symbols: Vec::new(),
        }
    }

    /// Parses a digit string such as `"0310201023"`.
    pub fn parse(text: &str, alphabet: u8) -> Result<Self> {
        if alphabet == 0 || alphabet > 10 {
            return Err(Error::BadAlphabet(alphabet as usize));
        }
        let mut symbols = Vec::with_capacity(text.len());
        for (index, ch) in text.trim().chars().enumerate() {
            let digit = ch.to_digit(10).ok_or(Error::SymbolOutOfRange {
                symbol: u8::MAX,
                index,
                alphabet,
            })? as u8;
            symbols.push(digit);
        }
        Word::new(symbols, alphabet)
    }

    /// Parses a digit string, taking the alphabet to be `max(2, largest digit + 1)`.
    pub fn parse_infer(text: &str) -> Result<Self> {
        let max = text
            .trim()
            .chars()
            .filter_map(|c| c.to_digit(10))
            .max()
            .unwrap_or(0) as u8;
        Word::parse(text, (max + 1).max(2))
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: Symbol) -> usize {
        self.symbols.iter().filter(|&&s| s == letter).count()
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word {
            alphabet: self.alphabet,
            symbols: self.symbols[..n.min(self.len())].to_vec(),
        }
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word {
            alphabet: self.alphabet,
            symbols: self.symbols[start..end].to_vec(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.same_alphabet(other)?;
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(Word {
            alphabet: self.alphabet,
            symbols,
        })
    }

    pub fn push(&mut self, letter: Symbol) -> Result<()> {
        if letter >= self.alphabet {
            return Err(Error::SymbolOutOfRange {
                symbol: letter,
                index: self.len(),
                alphabet: self.alphabet,
            });
        }
        self.symbols.push(letter);
        Ok(())
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.symbols.starts_with(&other.symbols)
    }

    pub(crate) fn same_alphabet(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet,
                found: other.alphabet,
            });
        }
        Ok(())
    }

    /// Same symbols, viewed over a different (large enough) alphabet.
    pub fn with_alphabet(&self, alphabet: u8) -> Result<Word> {
        Word::new(self.symbols.clone(), alphabet)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.symbols
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.symbols))
    }
}

/// Serialized as its digit string; the alphabet is carried by the enclosing value.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}/{})", render(&self.symbols), self.alphabet)
    }
}

/// Renders symbols as digits; symbols above 9 are rendered as letters `a..`.
pub fn render(symbols: &[Symbol]) -> String {
    symbols
        .iter()
        .map(|&s| char::from_digit(s as u32, 36).unwrap_or('?'))
        .collect()
}

/// Test helper and shorthand: parse digits without alphabet checking.
pub fn digits(text: &str) -> Vec<Symbol> {
    text.bytes().map(|b| b - b'0').collect()
}

/// Parses a newline separated list of digit words; blank lines and `#` comments are skipped.
pub fn parse_word_list(text: &str, alphabet: Option<u8>) -> Result<Vec<Word>> {
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !line.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::parse(i + 1, format!("`{line}` is not a digit word")));
        }
        raw.push((i + 1, line));
    }
    let k = match alphabet {
        Some(k) => k,
        None => raw
            .iter()
            .flat_map(|(_, l)| l.bytes())
            .map(|b| b - b'0' + 1)
            .max()
            .unwrap_or(2)
            .max(2),
    };
    raw.into_iter()
        .map(|(line, text)| Word::parse(text, k).map_err(|e| Error::parse(line, e.to_string())))
        .collect()
}

pub fn render_word_list(words: &[Word]) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let w = Word::parse("0310201023", 4).unwrap();
        assert_eq!(w.len(), 10);
        assert_eq!(w.to_string(), "0310201023");
        assert_eq!(w.count(1), 2);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            Word::parse("0120", 2),
            Err(Error::SymbolOutOfRange { symbol: 2, index: 2, .. })
        ));
        assert!(Word::parse("01a", 4).is_err());
    }

    #[test]
    fn empty_word() {
        let w = Word::parse("", 2).unwrap();
        assert!(w.is_empty());
        assert_eq!(w.to_string(), "");
    }

    #[test]
    fn word_list_reports_line() {
        let err = parse_word_list("000\n111\n0x1\n", None).unwrap_err();
        assert_eq!(err, Error::parse(3, "`0x1` is not a digit word"));
        let ws = parse_word_list("# forbidden\n000\n\n111\n", None).unwrap();
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[0].alphabet_size(), 2);
    }
}
