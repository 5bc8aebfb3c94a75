#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use wordavoid::instances::{run_scenario_with, Registry, PINNED_FILES};

pub fn pinned_digest() -> String {
    let mut h = Sha256::new();
    for (path, text) in PINNED_FILES {
        h.update(path.as_bytes());
        h.update([0]);
        h.update(text.as_bytes());
        h.update([0]);
    }
    hex::encode(h.finalize())
}

/// Scenarios that read a morphism, most specific first.
pub fn scenarios_using(morphism: &str) -> &'static [&'static str] {
    match morphism {
        "dekking-h" | "dekking-g" => &["dekking-verify", "dekking-forbidden-motivation", "counting"],
        "fs-h" | "fs-g" => &["fs-verify", "counting"],
        "pu-f" => &["pu-shuffle"],
        _ => &["pu-lemmas", "pu-shuffle"],
    }
}

#[derive(Debug)]
pub struct Mutation {
    pub morphism: String,
    pub letter: u8,
    pub position: usize,
    pub symbol: u8,
    /// First scenario that failed, if any.
    pub caught_by: Option<String>,
}

pub fn random_mutation(rng: &mut ChaCha8Rng, reg: &Registry) -> (String, u8, usize, u8) {
    let names: Vec<&String> = reg.morphisms.keys().collect();
    let name = names[rng.gen_range(0..names.len())].clone();
    let m = &reg.morphisms[&name];
    let letter = rng.gen_range(0..m.source_alphabet());
    let img = m.image(letter);
    let position = rng.gen_range(0..img.len());
    let old = img.symbols()[position];
    let symbol = (old + rng.gen_range(1..m.target_alphabet())) % m.target_alphabet();
    (name, letter, position, symbol)
}

pub fn mutation_run(count: usize, seed: u64) -> Vec<Mutation> {
    let reg = Registry::pinned();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (morphism, letter, position, symbol) = random_mutation(&mut rng, &reg);
            let bad = reg.mutated(&morphism, letter, position, symbol).expect("in range");
            let caught_by = scenarios_using(&morphism)
                .iter()
                .find(|s| !run_scenario_with(&bad, s).expect("known scenario").passed())
                .map(|s| s.to_string());
            Mutation {
                morphism,
                letter,
                position,
                symbol,
                caught_by,
            }
        })
        .collect()
}
