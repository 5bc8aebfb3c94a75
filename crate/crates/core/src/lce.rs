//! Longest-common-extension queries in O(1) after O(n log^2 n) preprocessing.
//!
//! Built from a prefix-doubling suffix array, Kasai's LCP array and a sparse
//! table of minima. The backward index answers common-suffix queries by
//! running the same construction on the reversed word.

use crate::word::Symbol;

struct SuffixLcp {
    n: usize,
    rank: Vec<u32>,
    // table[j][i] = min(lcp[i .. i + 2^j])
    table: Vec<Vec<u32>>,
}

impl SuffixLcp {
    fn new(w: &[Symbol]) -> Self {
        let n = w.len();
        let sa = suffix_array(w);
        let mut rank = vec![0u32; n];
        for (r, &i) in sa.iter().enumerate() {
            rank[i as usize] = r as u32;
        }
        // lcp[r] = lcp(sa[r-1], sa[r]); lcp[0] = 0
        let mut lcp = vec![0u32; n];
        let mut h = 0usize;
        for i in 0..n {
            let r = rank[i] as usize;
            if r == 0 {
                h = 0;
                continue;
            }
            let j = sa[r - 1] as usize;
            while i + h < n && j + h < n && w[i + h] == w[j + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        }
        let mut table = vec![lcp];
        let mut width = 1;
        while 2 * width <= n {
            let prev = table.last().unwrap();
            let next: Vec<u32> = (0..=n - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            table.push(next);
            width *= 2;
        }
        SuffixLcp { n, rank, table }
    }

    fn lce(&self, i: usize, j: usize) -> usize {
        if i >= self.n || j >= self.n {
            return 0;
        }
        if i == j {
            return self.n - i;
        }
        let (a, b) = {
            let (ri, rj) = (self.rank[i] as usize, self.rank[j] as usize);
            if ri < rj {
                (ri + 1, rj)
            } else {
                (rj + 1, ri)
            }
        };
        let len = b - a + 1;
        let level = usize::BITS as usize - 1 - len.leading_zeros() as usize;
        let t = &self.table[level];
        t[a].min(t[b + 1 - (1 << level)]) as usize
    }
}

fn suffix_array(w: &[Symbol]) -> Vec<u32> {
    let n = w.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = w.iter().map(|&s| s as u32).collect();
    let mut tmp = vec![0u32; n];
    let mut k = 1;
    if n <= 1 {
        return sa;
    }
    loop {
        let key = |i: u32| {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] as i64 } else { -1 };
            (rank[i], second)
        };
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0] as usize] = 0;
        for r in 1..n {
            let bump = (key(sa[r - 1]) != key(sa[r])) as u32;
            tmp[sa[r] as usize] = tmp[sa[r - 1] as usize] + bump;
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Forward and backward longest-common-extension oracle for one word.
pub struct LceIndex {
    n: usize,
    forward: SuffixLcp,
    backward: SuffixLcp,
}

impl LceIndex {
    pub fn new(w: &[Symbol]) -> Self {
        let reversed: Vec<Symbol> = w.iter().rev().copied().collect();
        LceIndex {
            n: w.len(),
            forward: SuffixLcp::new(w),
            backward: SuffixLcp::new(&reversed),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Length of the longest common prefix of `w[i..]` and `w[j..]`.
    pub fn forward(&self, i: usize, j: usize) -> usize {
        self.forward.lce(i, j)
    }

    /// Length of the longest common suffix of `w[..i]` and `w[..j]`.
    pub fn backward(&self, i: usize, j: usize) -> usize {
        if i == 0 || j == 0 {
            return 0;
        }
        self.backward.lce(self.n - i, self.n - j)
    }

    /// Calls `f(s)` for every `s` such that `w[t] == w[t + period]` for all
    /// `t` in `s .. s + need`. Starts arrive in increasing order; returning
    /// `false` from `f` stops the scan.
    ///
    /// Samples every `need`-th position, so one period costs `O(n / need)`
    /// queries plus the number of reported starts.
    pub fn periodic_starts(&self, period: usize, need: usize, mut f: impl FnMut(usize) -> bool) {
        assert!(period >= 1 && need >= 1);
        let n = self.n;
        let step = need;
        let mut q = 0;
        while q + period < n {
            let fwd = self.forward(q, q + period);
            if q + fwd >= need {
                let bwd = self.backward(q, q + period);
                let lo = q.saturating_sub(bwd).max((q + 1).saturating_sub(step));
                let hi = q.min(q + fwd - need);
                for s in lo..=hi {
                    if !f(s) {
                        return;
                    }
                }
            }
            q += step;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_forward(w: &[u8], i: usize, j: usize) -> usize {
        let mut k = 0;
        while i + k < w.len() && j + k < w.len() && w[i + k] == w[j + k] {
            k += 1;
        }
        k
    }

    fn naive_backward(w: &[u8], i: usize, j: usize) -> usize {
        let mut k = 0;
        while k < i && k < j && w[i - 1 - k] == w[j - 1 - k] {
            k += 1;
        }
        k
    }

    proptest! {
        #[test]
        fn matches_naive(w in proptest::collection::vec(0u8..3, 0..60)) {
            let idx = LceIndex::new(&w);
            for i in 0..=w.len() {
                for j in 0..=w.len() {
                    prop_assert_eq!(idx.forward(i, j), naive_forward(&w, i, j));
                    prop_assert_eq!(idx.backward(i, j), naive_backward(&w, i, j));
                }
            }
        }

        #[test]
        fn periodic_starts_exhaustive(w in proptest::collection::vec(0u8..2, 0..40), p in 1usize..8, need in 1usize..8) {
            let idx = LceIndex::new(&w);
            let mut got = Vec::new();
            idx.periodic_starts(p, need, |s| { got.push(s); true });
            let want: Vec<usize> = (0..w.len())
                .filter(|&s| s + need + p <= w.len() && (s..s + need).all(|t| w[t] == w[t + p]))
                .collect();
            prop_assert_eq!(got, want);
        }
    }
}
