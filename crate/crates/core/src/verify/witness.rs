use serde::Serialize;

use crate::error::Result;
use crate::morphism::Morphism;
use crate::word::{Symbol, Word};

/// `m(ab) = t · m(c) · u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionWitness {
    pub a: Symbol,
    pub b: Symbol,
    pub c: Symbol,
    pub t: Word,
    pub u: Word,
}

impl InclusionWitness {
    pub fn holds(&self, m: &Morphism) -> bool {
        let mut lhs = m.image(self.a).symbols().to_vec();
        lhs.extend_from_slice(m.image(self.b));
        let mut rhs = self.t.symbols().to_vec();
        rhs.extend_from_slice(m.image(self.c));
        rhs.extend_from_slice(&self.u);
        lhs == rhs
    }

    pub fn is_trivial(&self) -> bool {
        self.t.is_empty() || self.u.is_empty()
    }
}

/// `m(a) = s·t`, `m(b) = u·v`, `m(c) = s·v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterchangeWitness {
    pub a: Symbol,
    pub b: Symbol,
    pub c: Symbol,
    pub s: Word,
    pub t: Word,
    pub u: Word,
    pub v: Word,
}

impl InterchangeWitness {
    pub fn holds(&self, m: &Morphism) -> bool {
        let cat = |x: &Word, y: &Word| [x.symbols(), y.symbols()].concat();
        m.image(self.a).symbols() == cat(&self.s, &self.t)
            && m.image(self.b).symbols() == cat(&self.u, &self.v)
            && m.image(self.c).symbols() == cat(&self.s, &self.v)
    }
}

/// Every nontrivial inclusion, ordered by `(a, b, |t|, c)`.
pub fn find_inclusions(m: &Morphism) -> Result<Vec<InclusionWitness>> {
    let width = m.require_uniform()?;
    let k = m.source_alphabet();
    let tk = m.target_alphabet();
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let ab = [m.image(a).symbols(), m.image(b).symbols()].concat();
            for offset in 1..width {
                for c in 0..k {
                    if ab[offset..offset + width] == *m.image(c).symbols() {
                        out.push(InclusionWitness {
                            a,
                            b,
                            c,
                            t: Word::new(ab[..offset].to_vec(), tk)?,
                            u: Word::new(ab[offset + width..].to_vec(), tk)?,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Interchanges with `a` and `b` both in a different letter class from `c`,
/// over all splits `0 < |s| < width`.
pub fn find_interchanges(m: &Morphism) -> Result<Vec<InterchangeWitness>> {
    let width = m.require_uniform()?;
    let k = m.source_alphabet();
    let tk = m.target_alphabet();
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if m.class_of(a) == m.class_of(c) || m.class_of(b) == m.class_of(c) {
                    continue;
                }
                let (ia, ib, ic) = (m.image(a), m.image(b), m.image(c));
                for s in 1..width {
                    if ia[..s] == ic[..s] && ib[s..] == ic[s..] {
                        out.push(InterchangeWitness {
                            a,
                            b,
                            c,
                            s: Word::new(ia[..s].to_vec(), tk)?,
                            t: Word::new(ia[s..].to_vec(), tk)?,
                            u: Word::new(ib[..s].to_vec(), tk)?,
                            v: Word::new(ib[s..].to_vec(), tk)?,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn rejects_non_uniform() {
        let m = Morphism::from_strs(&["01", "1"]).unwrap();
        assert_eq!(find_inclusions(&m), Err(Error::NonUniform));
        assert_eq!(find_interchanges(&m), Err(Error::NonUniform));
    }

    #[test]
    fn witnesses_revalidate() {
        let g = Morphism::from_strs(&["010011", "010110", "011001", "011010"]).unwrap();
        let inc = find_inclusions(&g).unwrap();
        assert!(inc.iter().all(|w| w.holds(&g) && !w.is_trivial()));
        let int = find_interchanges(&g).unwrap();
        assert_eq!(int.len(), 1);
        assert!(int[0].holds(&g));
        assert_eq!((int[0].a, int[0].b, int[0].c), (2, 1, 3));
        assert_eq!(
            [&int[0].s, &int[0].t, &int[0].u, &int[0].v].map(|w| w.to_string()),
            ["0110", "01", "0101", "10"]
        );
    }
}
