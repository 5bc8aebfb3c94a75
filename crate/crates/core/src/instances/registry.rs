use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::{Morphism, Substitution};
use crate::spec::AvoidanceSpec;
use crate::word::{parse_word_list, Word};

macro_rules! pinned {
    ($($path:literal),* $(,)?) => {
        &[$(($path, include_str!(concat!("../../scenarios/", $path)))),*]
    };
}

/// The checked-in data files, as `(relative path, contents)`.
pub const PINNED_FILES: &[(&str, &str)] = pinned!(
    "morphisms/dekking-g.txt",
    "morphisms/dekking-h.txt",
    "morphisms/fs-g.txt",
    "morphisms/fs-h.txt",
    "morphisms/pu-f.txt",
    "morphisms/pu-g1.txt",
    "morphisms/pu-g2.txt",
    "morphisms/pu-h.txt",
    "specs/avoid-000-111.spec",
    "specs/binary-squarefree.spec",
    "specs/dekking-source-short.spec",
    "specs/dekking-source.spec",
    "specs/dekking.spec",
    "specs/ejs2.spec",
    "specs/ejs3.spec",
    "specs/fraenkel-simpson.spec",
    "specs/fs-fixed.spec",
    "specs/fs-g-source.spec",
    "specs/fs-source.spec",
    "specs/pu-a.spec",
    "specs/pu-target.spec",
    "specs/squarefree-4.spec",
    "substitutions/dekking-sub.txt",
    "substitutions/fs-sub.txt",
    "table1.txt",
    "words/prefixes.txt",
    "words/set-a.txt",
);

/// One row of the inclusion table: `label` is the expected case, e.g. `a.iv.F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub morphism: String,
    pub label: String,
    pub ab: String,
    pub c: String,
    pub v: Option<String>,
    pub w: Option<String>,
    pub ece: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Registry {
    pub morphisms: BTreeMap<String, Morphism>,
    pub substitutions: BTreeMap<String, Substitution>,
    pub specs: BTreeMap<String, AvoidanceSpec>,
    pub set_a: Vec<Word>,
    pub prefixes: BTreeMap<String, String>,
    pub table1: Vec<Table1Row>,
}

fn context(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::Precondition(format!("{path}: {e}"))
}

fn stem<'a>(path: &'a str, dir: &str, ext: &str) -> Option<&'a str> {
    path.strip_prefix(dir)?.strip_prefix('/')?.strip_suffix(ext)
}

impl Registry {
    /// The registry built from [`PINNED_FILES`].
    pub fn pinned() -> Registry {
        Registry::from_files(PINNED_FILES).expect("pinned registry files parse")
    }

    pub fn from_files(files: &[(&str, &str)]) -> Result<Registry> {
        let mut reg = Registry {
            morphisms: BTreeMap::new(),
            substitutions: BTreeMap::new(),
            specs: BTreeMap::new(),
            set_a: Vec::new(),
            prefixes: BTreeMap::new(),
            table1: Vec::new(),
        };
        for &(path, text) in files {
            let ctx = context(path);
            if let Some(name) = stem(path, "morphisms", ".txt") {
                reg.morphisms.insert(name.into(), Morphism::parse(text).map_err(ctx)?);
            } else if let Some(name) = stem(path, "substitutions", ".txt") {
                reg.substitutions.insert(name.into(), Substitution::parse(text).map_err(ctx)?);
            } else if let Some(name) = stem(path, "specs", ".spec") {
                reg.specs.insert(name.into(), AvoidanceSpec::parse(text).map_err(ctx)?);
            } else if path == "words/set-a.txt" {
                reg.set_a = parse_word_list(text, Some(4)).map_err(ctx)?;
            } else if path == "words/prefixes.txt" {
                reg.prefixes = parse_pairs(text).map_err(ctx)?;
            } else if path == "table1.txt" {
                reg.table1 = parse_table(text).map_err(ctx)?;
            } else {
                return Err(Error::UnknownEntry(path.into()));
            }
        }
        Ok(reg)
    }

    pub fn morphism(&self, name: &str) -> Result<&Morphism> {
        self.morphisms.get(name).ok_or_else(|| Error::UnknownEntry(name.into()))
    }

    pub fn substitution(&self, name: &str) -> Result<&Substitution> {
        self.substitutions.get(name).ok_or_else(|| Error::UnknownEntry(name.into()))
    }

    pub fn spec(&self, name: &str) -> Result<&AvoidanceSpec> {
        self.specs.get(name).ok_or_else(|| Error::UnknownEntry(name.into()))
    }

    pub fn prefix(&self, name: &str) -> Result<&str> {
        self.prefixes
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::UnknownEntry(name.into()))
    }

    /// A copy with one image symbol of morphism `name` replaced.
    pub fn mutated(&self, name: &str, letter: u8, position: usize, symbol: u8) -> Result<Registry> {
        let m = self.morphism(name)?;
        let mut images = m.images().to_vec();
        let img = images
            .get_mut(letter as usize)
            .ok_or_else(|| Error::UnknownEntry(format!("{name}({letter})")))?;
        let mut symbols = img.symbols().to_vec();
        *symbols
            .get_mut(position)
            .ok_or_else(|| Error::UnknownEntry(format!("{name}({letter})[{position}]")))? = symbol;
        *img = Word::new(symbols, m.target_alphabet())?;
        let mut out = self.clone();
        out.morphisms.insert(name.into(), Morphism::new(images, m.target_alphabet())?);
        Ok(out)
    }
}

fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, value) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::parse(i + 1, "expected `name word`"))?;
        out.insert(name.to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn parse_table(text: &str) -> Result<Vec<Table1Row>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        let [morphism, label, ab, c, v, w, ece] = cols[..] else {
            return Err(Error::parse(i + 1, "expected 7 columns"));
        };
        let opt = |s: &str| (s != "-").then(|| s.to_string());
        out.push(Table1Row {
            morphism: morphism.into(),
            label: label.into(),
            ab: ab.into(),
            c: c.into(),
            v: opt(v),
            w: opt(w),
            ece: opt(ece),
        });
    }
    Ok(out)
}

/// Built-in spec names accepted wherever a spec is expected.
pub const SPEC_ALIASES: [&str; 4] = ["dekking", "fraenkel-simpson", "ejs2", "ejs3"];

/// Resolves a spec alias or any other spec name from the pinned registry.
pub fn spec_alias(name: &str) -> Result<AvoidanceSpec> {
    Registry::pinned().spec(name).cloned()
}
