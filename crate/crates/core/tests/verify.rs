use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordavoid::instances::{pu_verify_options, Registry};
use wordavoid::verify::{
    find_inclusions, find_interchanges, refute_inclusion, render_certificate, verify_square_transfer, VerifyOptions,
    DEFAULT_DEPTH,
};
use wordavoid::{AvoidanceSpec, Error, Morphism};

#[derive(Clone, Copy)]
enum Oracle {
    Squarefree,
    MinRoot4Cubefree,
    MinRoot4,
    Whitelist,
}

// quadratic scan, no LCE
fn naive_ok(w: &[u8], oracle: Oracle) -> bool {
    let n = w.len();
    for i in 0..n {
        for r in 1..=(n - i) / 2 {
            if w[i..i + r] != w[i + r..i + 2 * r] {
                continue;
            }
            let cube = i + 3 * r <= n && w[i + r..i + 2 * r] == w[i + 2 * r..i + 3 * r];
            let bad = match oracle {
                Oracle::Squarefree => true,
                Oracle::MinRoot4Cubefree => r >= 4 || cube,
                Oracle::MinRoot4 => r >= 4,
                Oracle::Whitelist => !matches!(&w[i..i + 2 * r], [0, 0] | [1, 1] | [0, 1, 0, 1]),
            };
            if bad {
                return false;
            }
        }
    }
    true
}

/// Random legal word of length `n`, by randomised backtracking.
fn random_legal(spec: &AvoidanceSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let k = spec.alphabet_size;
    let mut w = Vec::new();
    let mut tried: Vec<Vec<u8>> = vec![Vec::new()];
    while w.len() < n {
        let options: Vec<u8> = (0..k).filter(|c| !tried[w.len()].contains(c)).collect();
        if options.is_empty() {
            w.pop();
            tried.pop();
            continue;
        }
        let c = options[rng.gen_range(0..options.len())];
        tried[w.len()].push(c);
        w.push(c);
        if spec.violation_ending_at(&w, w.len() - 1, usize::MAX).is_some() {
            w.pop();
        } else {
            tried.push(Vec::new());
        }
    }
    w
}

fn cert(name: &str, source: &str, target: &str, depth: usize) -> wordavoid::verify::TransferCertificate {
    let reg = Registry::pinned();
    let m = reg.morphism(name).unwrap();
    verify_square_transfer(
        name,
        m,
        reg.spec(source).unwrap(),
        reg.spec(target).unwrap(),
        &VerifyOptions::with_depth(depth),
    )
    .unwrap()
}

#[test]
fn certificates_are_complete() {
    for (name, source, target, depth) in [
        ("dekking-h", "dekking-source", "squarefree-4", 2),
        ("dekking-g", "dekking-source", "dekking", 2),
        ("fs-h", "fs-source", "fs-fixed", 2),
        ("fs-g", "fs-g-source", "fraenkel-simpson", 3),
    ] {
        let c = cert(name, source, target, depth);
        assert!(c.complete, "{name}: {:?}", c.residual);
        assert!(c.residual.is_empty());
    }
    let reg = Registry::pinned();
    for name in ["pu-g1", "pu-g2"] {
        let c = verify_square_transfer(
            name,
            reg.morphism(name).unwrap(),
            reg.spec("pu-a").unwrap(),
            reg.spec("pu-target").unwrap(),
            &pu_verify_options(&reg).unwrap(),
        )
        .unwrap();
        assert!(c.complete, "{name}: {:?}", c.residual);
    }
}

#[test]
fn depth_two_leaves_fs_g_open() {
    let c = cert("fs-g", "fs-g-source", "fraenkel-simpson", 2);
    assert!(!c.complete);
    assert!(c.residual.iter().any(|r| r.starts_with("inclusion")));
}

#[test]
fn pu_certificates_need_the_fixed_point() {
    let reg = Registry::pinned();
    let c = verify_square_transfer(
        "g1",
        reg.morphism("pu-g1").unwrap(),
        reg.spec("pu-a").unwrap(),
        reg.spec("pu-target").unwrap(),
        &VerifyOptions::with_depth(DEFAULT_DEPTH),
    )
    .unwrap();
    assert!(!c.complete);
    assert_eq!(c.interchanges.len(), 4);
    assert!(c.interchanges.iter().all(|i| i.reason.is_none()));
}

#[test]
fn inventories() {
    let reg = Registry::pinned();
    let count = |n: &str| {
        let m = reg.morphism(n).unwrap();
        (find_inclusions(m).unwrap().len(), find_interchanges(m).unwrap().len())
    };
    assert_eq!(count("dekking-h"), (1, 0));
    assert_eq!(count("pu-h"), (0, 0));
    assert_eq!(count("fs-h").1, 0);
    assert_eq!(count("dekking-g").1, 1);
    let c = cert("dekking-g", "dekking-source", "dekking", 2);
    assert_eq!(c.inclusions.len(), 3);
    assert_eq!(c.interchanges.len(), 1);
}

#[test]
fn fs_h_inclusion_is_a_suffix_case() {
    let reg = Registry::pinned();
    let h = reg.morphism("fs-h").unwrap();
    let src = reg.spec("fs-source").unwrap();
    let adm: Vec<_> = find_inclusions(h)
        .unwrap()
        .into_iter()
        .filter(|w| src.is_legal_small(&[w.a, w.b]))
        .collect();
    assert_eq!(adm.len(), 1);
    let a = refute_inclusion(h, &adm[0], src, DEFAULT_DEPTH);
    assert_eq!(a.case, "a.iii");
    assert!(a.refuted);
}

#[test]
fn corrupted_morphism_is_not_certified() {
    let reg = Registry::pinned();
    let bad = reg.mutated("dekking-h", 2, 9, 1).unwrap();
    let m = bad.morphism("dekking-h").unwrap();
    let c = verify_square_transfer(
        "h",
        m,
        reg.spec("dekking-source").unwrap(),
        reg.spec("squarefree-4").unwrap(),
        &VerifyOptions::with_depth(2),
    )
    .unwrap();
    assert!(!c.complete);
    assert!(!c.residual.is_empty());
    assert!(render_certificate(m, &c).ends_with("INCOMPLETE\n"));
}

#[test]
fn bad_inputs_are_errors() {
    let sf2 = AvoidanceSpec::squarefree_avoiding(2, &[]).unwrap();
    let sf3 = AvoidanceSpec::squarefree_avoiding(3, &[]).unwrap();
    let opts = VerifyOptions::with_depth(2);
    let nonuniform = Morphism::from_strs(&["0", "01"]).unwrap();
    assert_eq!(
        verify_square_transfer("m", &nonuniform, &sf2, &sf2, &opts).unwrap_err(),
        Error::NonUniform
    );
    let collide = Morphism::from_strs(&["01", "01"]).unwrap();
    assert_eq!(
        verify_square_transfer("m", &collide, &sf2, &sf2, &opts).unwrap_err(),
        Error::NonInjective(0, 1)
    );
    let tm = Morphism::from_strs(&["01", "10"]).unwrap();
    assert!(matches!(
        verify_square_transfer("m", &tm, &sf3, &sf2, &opts),
        Err(Error::AlphabetMismatch { .. })
    ));
}

#[test]
fn certificate_json_and_text() {
    let c = cert("dekking-g", "dekking-source", "dekking", 2);
    let json = c.to_json();
    assert!(json.trim_start().starts_with("{\n  \"morphism\""));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(json, cert("dekking-g", "dekking-source", "dekking", 2).to_json());
    let reg = Registry::pinned();
    let text = render_certificate(reg.morphism("dekking-g").unwrap(), &c);
    assert!(text.contains("inclusions: "));
    assert!(text.contains("(2, 1, 3)"));
    assert!(text.ends_with("COMPLETE\n"));
}

// certified morphisms, checked on random legal source words with a naive scan
#[test]
fn certificates_agree_with_random_images() {
    let reg = Registry::pinned();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (name, source, oracle, len) in [
        ("dekking-h", "dekking-source", Oracle::Squarefree, 60),
        ("dekking-g", "dekking-source", Oracle::MinRoot4Cubefree, 120),
        ("fs-h", "fs-source", Oracle::Squarefree, 25),
        ("fs-g", "fs-g-source", Oracle::Whitelist, 120),
    ] {
        let m = reg.morphism(name).unwrap();
        let spec = reg.spec(source).unwrap();
        for _ in 0..20 {
            let w = random_legal(spec, len, &mut rng);
            let img = m.apply_symbols(&w).unwrap();
            assert!(naive_ok(&img, oracle), "{name} on {w:?}");
        }
    }
}

#[test]
fn pu_images_of_fixed_point_agree_with_naive_scan() {
    let reg = Registry::pinned();
    let h = reg.morphism("pu-h").unwrap().fixed_point_prefix(0, 2000).unwrap();
    for name in ["pu-g1", "pu-g2"] {
        let img = reg.morphism(name).unwrap().apply_symbols(h.symbols()).unwrap();
        assert!(naive_ok(&img, Oracle::MinRoot4), "{name}");
    }
}

// over the whole source language g1 is not square-transferring, which is why
// its certificate is restricted to the fixed point
#[test]
fn pu_g1_fails_on_arbitrary_legal_words() {
    let reg = Registry::pinned();
    let w = [0u8, 2, 3, 2, 1, 3];
    assert!(reg.spec("pu-a").unwrap().satisfies(&w));
    let img = reg.morphism("pu-g1").unwrap().apply_symbols(&w).unwrap();
    assert!(!naive_ok(&img, Oracle::MinRoot4));
}
