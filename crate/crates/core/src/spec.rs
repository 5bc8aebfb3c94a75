//! Declarative descriptions of constrained languages.
//!
//! A spec combines forbidden factors, a policy for which squares may occur
//! and an optional cubefree requirement. Two checkers are provided: a global
//! one for long words (LCE based, reports the leftmost violation) and an
//! incremental one that only looks at violations ending at a given position,
//! which is what depth-first enumeration needs.
//!
//! Text format, one directive per line, `#` starts a comment:
//!
//! ```text
//! alphabet 2
//! cubefree
//! squares min-root 4        # or: all | any | only 00 11 0101
//! forbid 000 111
//! ```

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scan::{leftmost_factor, Scanner};
use crate::word::{render, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SquarePolicy {
    /// No constraint on squares.
    Any,
    AllForbidden,
    ForbidRootsAtLeast { min_root: usize },
    /// Only the listed square words may occur.
    Whitelist { squares: Vec<Word> },
}

impl SquarePolicy {
    fn forbids(&self, square: &[Symbol]) -> bool {
        match self {
            SquarePolicy::Any => false,
            SquarePolicy::AllForbidden => true,
            SquarePolicy::ForbidRootsAtLeast { min_root } => square.len() / 2 >= *min_root,
            SquarePolicy::Whitelist { squares } => !squares.iter().any(|s| s.symbols() == square),
        }
    }

    /// Largest root of a square this policy can allow, `None` if unbounded.
    pub fn max_allowed_root(&self) -> Option<usize> {
        match self {
            SquarePolicy::Any => None,
            SquarePolicy::AllForbidden => Some(0),
            SquarePolicy::ForbidRootsAtLeast { min_root } => Some(min_root - 1),
            SquarePolicy::Whitelist { squares } => {
                Some(squares.iter().map(|s| s.len() / 2).max().unwrap_or(0))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    ForbiddenFactor { factor: String, position: usize },
    Square { position: usize, root_length: usize },
    Cube { position: usize, root_length: usize },
}

impl Violation {
    pub fn position(&self) -> usize {
        match self {
            Violation::ForbiddenFactor { position, .. }
            | Violation::Square { position, .. }
            | Violation::Cube { position, .. } => *position,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ForbiddenFactor { factor, position } => {
                write!(f, "forbidden factor {factor} at {position}")
            }
            Violation::Square {
                position,
                root_length,
            } => write!(f, "square with root length {root_length} at {position}"),
            Violation::Cube {
                position,
                root_length,
            } => write!(f, "cube with root length {root_length} at {position}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AvoidanceSpec {
    pub alphabet_size: u8,
    pub forbidden_factors: Vec<Word>,
    pub square_policy: SquarePolicy,
    pub cubefree: bool,
}

impl AvoidanceSpec {
    pub fn new(
        alphabet_size: u8,
        forbidden_factors: Vec<Word>,
        square_policy: SquarePolicy,
        cubefree: bool,
    ) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::BadAlphabet(0));
        }
        for f in &forbidden_factors {
            if f.alphabet_size() != alphabet_size {
                return Err(Error::AlphabetMismatch {
                    expected: alphabet_size,
                    found: f.alphabet_size(),
                });
            }
        }
        match &square_policy {
            SquarePolicy::ForbidRootsAtLeast { min_root: 0 } => {
                return Err(Error::Precondition("square root threshold must be at least 1".into()))
            }
            SquarePolicy::Whitelist { squares } => {
                for s in squares {
                    let half = s.len() / 2;
                    if s.is_empty() || s.len() % 2 != 0 || s.symbols()[..half] != s.symbols()[half..] {
                        return Err(Error::Precondition(format!("whitelist entry {s} is not a square")));
                    }
                }
            }
            _ => {}
        }
        Ok(AvoidanceSpec {
            alphabet_size,
            forbidden_factors,
            square_policy,
            cubefree,
        })
    }

    /// No constraints at all over the given alphabet.
    pub fn unconstrained(alphabet_size: u8) -> Self {
        AvoidanceSpec {
            alphabet_size,
            forbidden_factors: Vec::new(),
            square_policy: SquarePolicy::Any,
            cubefree: false,
        }
    }

    /// Squarefree words avoiding the given factors (digit strings).
    pub fn squarefree_avoiding(alphabet_size: u8, factors: &[&str]) -> Result<Self> {
        let fs = factors
            .iter()
            .map(|f| Word::parse(f, alphabet_size))
            .collect::<Result<_>>()?;
        AvoidanceSpec::new(alphabet_size, fs, SquarePolicy::AllForbidden, false)
    }

    /// Whether every square with root greater than `root` is forbidden.
    pub fn forbids_all_roots_above(&self, root: usize) -> bool {
        self.square_policy
            .max_allowed_root()
            .is_some_and(|max| max <= root)
    }

    pub fn max_factor_len(&self) -> usize {
        self.forbidden_factors.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// The leftmost violation in `w`, scanning everything.
    pub fn violation(&self, w: &[Symbol]) -> Option<Violation> {
        self.violation_capped(w, usize::MAX)
    }

    /// Like [`violation`](Self::violation) but ignores squares and cubes with root above `max_root`.
    pub fn violation_capped(&self, w: &[Symbol], max_root: usize) -> Option<Violation> {
        let mut found: Vec<Violation> = Vec::new();
        if let Some((position, f)) =
            leftmost_factor(w, self.forbidden_factors.iter().map(|f| f.symbols()))
        {
            found.push(Violation::ForbiddenFactor {
                factor: render(f),
                position,
            });
        }
        let needs_scanner = !matches!(self.square_policy, SquarePolicy::Any) || self.cubefree;
        if needs_scanner && !w.is_empty() {
            let scanner = Scanner::new(w);
            let square = match &self.square_policy {
                SquarePolicy::Any => None,
                SquarePolicy::AllForbidden => scanner.leftmost_square(1, max_root),
                SquarePolicy::ForbidRootsAtLeast { min_root } => {
                    scanner.leftmost_square(*min_root, max_root)
                }
                SquarePolicy::Whitelist { .. } => {
                    let allowed = self.square_policy.max_allowed_root().unwrap_or(0);
                    let small = scanner
                        .squares(1, allowed.min(max_root))
                        .into_iter()
                        .find(|o| {
                            self.square_policy
                                .forbids(&w[o.position..o.position + 2 * o.root_length])
                        });
                    let large = scanner.leftmost_square(allowed + 1, max_root);
                    match (small, large) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (a, b) => a.or(b),
                    }
                }
            };
            if let Some(o) = square {
                found.push(Violation::Square {
                    position: o.position,
                    root_length: o.root_length,
                });
            }
            if self.cubefree {
                if let Some(o) = scanner.leftmost_cube(max_root) {
                    found.push(Violation::Cube {
                        position: o.position,
                        root_length: o.root_length,
                    });
                }
            }
        }
        found.into_iter().min_by_key(|v| v.position())
    }

    pub fn satisfies(&self, w: &[Symbol]) -> bool {
        self.violation(w).is_none()
    }

    /// A violation whose occurrence ends exactly at index `end` (inclusive),
    /// considering roots up to `max_root`. Early-exit comparison from the
    /// right end keeps this near `O(end)` on words that are mostly legal.
    pub fn violation_ending_at(&self, w: &[Symbol], end: usize, max_root: usize) -> Option<Violation> {
        let upto = &w[..=end];
        let len = upto.len();
        for f in &self.forbidden_factors {
            if upto.ends_with(f.symbols()) {
                return Some(Violation::ForbiddenFactor {
                    factor: f.to_string(),
                    position: len - f.len(),
                });
            }
        }
        let check_squares = !matches!(self.square_policy, SquarePolicy::Any);
        if check_squares || self.cubefree {
            for r in 1..=(len / 2).min(max_root) {
                if !suffix_has_period(upto, r, 2 * r) {
                    continue;
                }
                let start = len - 2 * r;
                if check_squares && self.square_policy.forbids(&upto[start..]) {
                    return Some(Violation::Square {
                        position: start,
                        root_length: r,
                    });
                }
                if self.cubefree && 3 * r <= len && suffix_has_period(upto, r, 3 * r) {
                    return Some(Violation::Cube {
                        position: len - 3 * r,
                        root_length: r,
                    });
                }
            }
        }
        None
    }

    /// Checks every end position; intended for short words.
    pub fn is_legal_small(&self, w: &[Symbol]) -> bool {
        (0..w.len()).all(|e| self.violation_ending_at(w, e, usize::MAX).is_none())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<(usize, u8)> = None;
        let mut factors: Vec<(usize, String)> = Vec::new();
        let mut policy_line: Option<(usize, Vec<String>)> = None;
        let mut cubefree = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let key = parts.next().unwrap_or("");
            let rest: Vec<String> = parts.map(str::to_owned).collect();
            match key {
                "alphabet" => {
                    let k = rest
                        .first()
                        .and_then(|s| s.parse::<u8>().ok())
                        .filter(|&k| (1..=10).contains(&k))
                        .ok_or_else(|| Error::parse(line_no, "expected `alphabet <1..10>`"))?;
                    alphabet = Some((line_no, k));
                }
                "cubefree" => cubefree = true,
                "forbid" => factors.extend(rest.into_iter().map(|f| (line_no, f))),
                "squares" => policy_line = Some((line_no, rest)),
                other => return Err(Error::parse(line_no, format!("unknown directive `{other}`"))),
            }
        }
        let (_, k) = alphabet.ok_or_else(|| Error::parse(0, "missing `alphabet` directive"))?;
        let forbidden = factors
            .into_iter()
            .map(|(line, f)| Word::parse(&f, k).map_err(|e| Error::parse(line, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let policy = match policy_line {
            None => SquarePolicy::Any,
            Some((line, args)) => {
                let bad = || Error::parse(line, "expected `squares all|any|min-root <t>|only <words>`");
                match args.first().map(String::as_str) {
                    Some("all") => SquarePolicy::AllForbidden,
                    Some("any") => SquarePolicy::Any,
                    Some("min-root") => {
                        let t = args
                            .get(1)
                            .and_then(|s| s.parse::<usize>().ok())
                            .filter(|&t| t >= 1)
                            .ok_or_else(bad)?;
                        SquarePolicy::ForbidRootsAtLeast { min_root: t }
                    }
                    Some("only") => SquarePolicy::Whitelist {
                        squares: args[1..]
                            .iter()
                            .map(|s| Word::parse(s, k).map_err(|e| Error::parse(line, e.to_string())))
                            .collect::<Result<_>>()?,
                    },
                    _ => return Err(bad()),
                }
            }
        };
        AvoidanceSpec::new(k, forbidden, policy, cubefree).map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::parse(0, other.to_string()),
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!("alphabet {}\n", self.alphabet_size);
        if self.cubefree {
            out.push_str("cubefree\n");
        }
        match &self.square_policy {
            SquarePolicy::Any => {}
            SquarePolicy::AllForbidden => out.push_str("squares all\n"),
            SquarePolicy::ForbidRootsAtLeast { min_root } => {
                out.push_str(&format!("squares min-root {min_root}\n"))
            }
            SquarePolicy::Whitelist { squares } => {
                out.push_str("squares only");
                for s in squares {
                    out.push(' ');
                    out.push_str(&s.to_string());
                }
                out.push('\n');
            }
        }
        if !self.forbidden_factors.is_empty() {
            out.push_str("forbid");
            for f in &self.forbidden_factors {
                out.push(' ');
                out.push_str(&f.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Whether the last `span` symbols of `w` have period `p`.
fn suffix_has_period(w: &[Symbol], p: usize, span: usize) -> bool {
    let n = w.len();
    (n - span..n - p).rev().all(|i| w[i] == w[i + p])
}
