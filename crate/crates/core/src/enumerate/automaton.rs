use std::collections::VecDeque;

use serde::Serialize;

use crate::word::{Symbol, Word};

/// Aho–Corasick automaton recognising words that contain a member of a
/// forbidden set. State 0 is the root. Dead states (a forbidden word has
/// just been completed) are absorbing and have no outgoing transitions.
#[derive(Debug, Clone, Serialize)]
pub struct FactorAutomaton {
    alphabet_size: u8,
    // delta[s * k + c]
    delta: Vec<usize>,
    dead: Vec<bool>,
}

impl FactorAutomaton {
    pub fn new(alphabet_size: u8, forbidden: &[Word]) -> Self {
        let k = alphabet_size as usize;
        const NONE: usize = usize::MAX;
        let mut children: Vec<Vec<usize>> = vec![vec![NONE; k]];
        let mut terminal = vec![false];
        for f in forbidden {
            let mut s = 0;
            for &c in f.symbols() {
                let c = c as usize;
                if children[s][c] == NONE {
                    children.push(vec![NONE; k]);
                    terminal.push(false);
                    children[s][c] = children.len() - 1;
                }
                s = children[s][c];
            }
            terminal[s] = true;
        }
        let n = children.len();
        let mut fail = vec![0usize; n];
        let mut delta = vec![0usize; n * k];
        let mut queue = VecDeque::new();
        for c in 0..k {
            let t = children[0][c];
            if t == NONE {
                delta[c] = 0;
            } else {
                delta[c] = t;
                fail[t] = 0;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            terminal[s] = terminal[s] || terminal[fail[s]];
            for c in 0..k {
                let t = children[s][c];
                if t == NONE {
                    delta[s * k + c] = delta[fail[s] * k + c];
                } else {
                    fail[t] = delta[fail[s] * k + c];
                    delta[s * k + c] = t;
                    queue.push_back(t);
                }
            }
        }
        FactorAutomaton {
            alphabet_size,
            delta,
            dead: terminal,
        }
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn num_states(&self) -> usize {
        self.dead.len()
    }

    pub fn live_states(&self) -> usize {
        self.dead.iter().filter(|d| !**d).count()
    }

    pub fn is_dead(&self, s: usize) -> bool {
        self.dead[s]
    }

    /// Next state, or `None` when the step lands in (or starts from) a dead state.
    pub fn step(&self, s: usize, c: Symbol) -> Option<usize> {
        if self.dead[s] {
            return None;
        }
        let t = self.delta[s * self.alphabet_size as usize + c as usize];
        (!self.dead[t]).then_some(t)
    }

    /// Whether `w` avoids every forbidden word.
    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut s = 0;
        for &c in w {
            match self.step(s, c) {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    /// Live-to-live transitions as `(from, to)` pairs, with live states renumbered densely.
    pub fn live_edges(&self) -> (usize, Vec<(usize, usize)>) {
        let mut index = vec![usize::MAX; self.num_states()];
        let mut next = 0;
        for (s, slot) in index.iter_mut().enumerate() {
            if !self.dead[s] {
                *slot = next;
                next += 1;
            }
        }
        let mut edges = Vec::new();
        for s in 0..self.num_states() {
            for c in 0..self.alphabet_size {
                if let Some(t) = self.step(s, c) {
                    edges.push((index[s], index[t]));
                }
            }
        }
        (next, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::digits;
    use proptest::prelude::*;

    fn words(ws: &[&str], k: u8) -> Vec<Word> {
        ws.iter().map(|w| Word::parse(w, k).unwrap()).collect()
    }

    #[test]
    fn live_states_of_small_sets() {
        let a = FactorAutomaton::new(2, &words(&["000", "111"], 2));
        assert_eq!(a.live_states(), 5);
        assert!(a.accepts(&digits("0011001")));
        assert!(!a.accepts(&digits("01110")));
    }

    proptest! {
        #[test]
        fn accepts_iff_no_factor(
            fs in proptest::collection::vec(proptest::collection::vec(0u8..3, 1..5), 1..5),
            w in proptest::collection::vec(0u8..3, 0..30),
        ) {
            let fs: Vec<Word> = fs.into_iter().map(|f| Word::new(f, 3).unwrap()).collect();
            let a = FactorAutomaton::new(3, &fs);
            let naive = fs.iter().any(|f| w.windows(f.len()).any(|x| x == f.symbols()));
            prop_assert_eq!(a.accepts(&w), !naive);
        }
    }
}
