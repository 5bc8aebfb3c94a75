use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::Result;
use crate::morphism::{Morphism, Substitution};
use crate::spec::AvoidanceSpec;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub word_length: usize,
    /// Number of words in `outer(sub(seed_word))`, as a decimal string.
    pub family_size: String,
    /// `n / divisor`, the exponent the family size is compared against.
    pub exponent: f64,
    pub meets_exponent: bool,
    pub sampled: bool,
    pub checked: u64,
    pub verified_count: u64,
    pub first_failure: Option<String>,
}

impl FamilyReport {
    pub fn all_verified(&self) -> bool {
        self.verified_count == self.checked && self.first_failure.is_none()
    }
}

/// Builds `outer(sub(seed_word))`, checks every member against `target` and
/// compares the family size with `2^(n / divisor)`.
///
/// Families larger than `cap` are checked on `samples` seeded samples instead.
#[allow(clippy::too_many_arguments)]
pub fn lower_bound_family(
    sub: &Substitution,
    outer: &Morphism,
    seed_word: &Word,
    target: &AvoidanceSpec,
    divisor: u64,
    cap: u64,
    samples: u64,
    seed: u64,
) -> Result<FamilyReport> {
    let size = sub.count(seed_word)?;
    let width = sub.uniform_width().unwrap_or(0) * outer.uniform_width().unwrap_or(0);
    let n = seed_word.len() * width;
    let exponent = n as f64 / divisor as f64;
    let meets_exponent = if (n as u64).is_multiple_of(divisor) {
        size >= BigUint::one() << (n as u64 / divisor)
    } else {
        size.to_f64().is_none_or(|s| s.log2() >= exponent)
    };
    let mut checked = 0;
    let mut verified = 0;
    let mut first_failure = None;
    let mut check = |w: Word| {
        checked += 1;
        if target.satisfies(&w) {
            verified += 1;
        } else if first_failure.is_none() {
            first_failure = target.violation(&w).map(|v| v.to_string());
        }
    };
    let sampled = size > BigUint::from(cap);
    if sampled {
        for i in 0..samples {
            let inner = sub.sample_image(seed_word, seed.wrapping_add(i))?;
            check(outer.apply(&inner)?);
        }
    } else {
        for inner in sub.image_language(seed_word, cap)? {
            check(outer.apply(&inner)?);
        }
    }
    Ok(FamilyReport {
        word_length: n,
        family_size: size.to_string(),
        exponent,
        meets_exponent,
        sampled,
        checked,
        verified_count: verified,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_family_is_the_direct_image() {
        let h = Morphism::from_strs(&["01", "10"]).unwrap();
        let sub = Substitution::extend(&h, &[]).unwrap();
        let outer = Morphism::from_strs(&["0", "1"]).unwrap();
        let w = Word::parse("0110", 2).unwrap();
        let target = AvoidanceSpec::parse("alphabet 2\ncubefree\n").unwrap();
        let r = lower_bound_family(&sub, &outer, &w, &target, 1, 16, 0, 0).unwrap();
        assert_eq!(r.family_size, "1");
        assert_eq!(r.word_length, 8);
        assert!(r.all_verified());
        assert!(!r.meets_exponent);
    }
}
