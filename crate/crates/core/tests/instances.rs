mod common;

use wordavoid::instances::{run_scenario, run_scenario_with, Registry, PINNED_FILES, SCENARIOS, SPEC_ALIASES};
use wordavoid::word::Word;
use wordavoid::Error;

const PINNED_SHA256: &str = "31993bea5817386d4e61edaf15a6d9c811b34671a68651e4567deed1202d5696";

#[test]
fn pinned_files_are_unchanged() {
    assert_eq!(common::pinned_digest(), PINNED_SHA256);
}

#[test]
fn morphism_files_round_trip() {
    let reg = Registry::pinned();
    for (path, text) in PINNED_FILES {
        if let Some(name) = path.strip_prefix("morphisms/").and_then(|p| p.strip_suffix(".txt")) {
            assert_eq!(reg.morphism(name).unwrap().render(), *text, "{path}");
        }
        if let Some(name) = path.strip_prefix("substitutions/").and_then(|p| p.strip_suffix(".txt")) {
            assert_eq!(reg.substitution(name).unwrap().render(), *text, "{path}");
        }
    }
}

#[test]
fn registry_contents() {
    let reg = Registry::pinned();
    for name in ["dekking-h", "dekking-g", "fs-h", "fs-g", "pu-f", "pu-h", "pu-g1", "pu-g2"] {
        assert!(reg.morphism(name).unwrap().uniform_width().is_some(), "{name}");
    }
    let widths: Vec<usize> = ["dekking-h", "dekking-g", "fs-h", "fs-g", "pu-h"]
        .iter()
        .map(|n| reg.morphism(n).unwrap().uniform_width().unwrap())
        .collect();
    assert_eq!(widths, [10, 6, 24, 6, 3]);
    assert_eq!(reg.set_a.len(), 16);
    assert_eq!(reg.set_a[0], Word::parse("010", 4).unwrap());
    for alias in SPEC_ALIASES {
        assert!(reg.spec(alias).is_ok(), "{alias}");
    }
    let sub = reg.substitution("dekking-sub").unwrap();
    assert_eq!(sub.image_sets()[1][0], *reg.morphism("dekking-h").unwrap().image(1));
    let sub = reg.substitution("fs-sub").unwrap();
    assert_eq!(sub.image_sets()[0][0], *reg.morphism("fs-h").unwrap().image(0));
}

#[test]
fn unknown_names() {
    assert_eq!(run_scenario("nope").unwrap_err(), Error::UnknownScenario("nope".into()));
    let reg = Registry::pinned();
    assert!(matches!(reg.morphism("nope"), Err(Error::UnknownEntry(_))));
    assert!(reg.mutated("dekking-h", 9, 0, 0).is_err());
    assert!(reg.mutated("dekking-h", 0, 99, 0).is_err());
}

#[test]
fn bad_files_are_rejected_with_context() {
    let err = Registry::from_files(&[("specs/x.spec", "alphabet 2\nsquares sideways\n")]).unwrap_err();
    assert!(err.to_string().contains("specs/x.spec"), "{err}");
    assert!(err.to_string().contains("line 2"), "{err}");
    assert!(Registry::from_files(&[("elsewhere.txt", "")]).is_err());
}

#[test]
fn scenarios_pass_and_are_deterministic() {
    for name in SCENARIOS {
        let a = run_scenario(name).unwrap();
        assert!(a.passed(), "{}", a.digest());
        assert!(!a.checks.is_empty());
        if name == "pu-shuffle" {
            assert_eq!(a.to_json(), run_scenario(name).unwrap().to_json());
        }
    }
}

#[test]
fn failed_checks_name_the_claim() {
    let reg = Registry::pinned().mutated("pu-f", 1, 0, 0).unwrap();
    let r = run_scenario_with(&reg, "pu-shuffle").unwrap();
    assert!(!r.passed());
    let digest = r.digest();
    assert!(digest.contains("FAIL"));
    assert!(digest.contains("contradicts:"));
}

#[test]
fn each_verified_morphism_is_mutation_sensitive() {
    let reg = Registry::pinned();
    for (name, letter, pos, sym) in [
        ("dekking-h", 2, 9, 1),
        ("dekking-g", 1, 4, 0),
        ("fs-h", 4, 12, 0),
        ("fs-g", 2, 0, 0),
        ("pu-h", 0, 2, 3),
        ("pu-g1", 0, 0, 1),
        ("pu-g2", 3, 2, 0),
    ] {
        let bad = reg.mutated(name, letter, pos, sym).unwrap();
        let caught = common::scenarios_using(name)
            .iter()
            .any(|s| !run_scenario_with(&bad, s).unwrap().passed());
        assert!(caught, "{name}({letter})[{pos}] := {sym}");
    }
}
