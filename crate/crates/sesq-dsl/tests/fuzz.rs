//! Parser robustness under hostile input.
//!
//! Whatever bytes come in, `parse` must return a document or diagnostics,
//! and anything it accepts must serialize to stable canonical text.  The
//! generators are seeded, so failures reproduce.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sesq_core::constructions::fixtures;
use sesq_dsl::{emit, parse, serialize};

fn assert_roundtrip_stable(text: &str) {
    if let Ok(doc) = parse(text) {
        let once = serialize(&doc);
        let reparsed = parse(&once)
            .unwrap_or_else(|d| panic!("canonical output failed to reparse: {d:?}\n{once}"));
        assert_eq!(serialize(&reparsed), once, "serialization is not idempotent");
    }
}

#[test]
fn random_bytes_never_panic() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e5_0001);
    for _ in 0..2000 {
        let len = rng.gen_range(0..240);
        let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
        assert_roundtrip_stable(&String::from_utf8_lossy(&bytes));
    }
}

#[test]
fn random_token_soup_never_panics() {
    const PIECES: &[&str] = &[
        "category", "cells", "group", "xmod", "complex", "intcat", "pseudocat", "derive",
        "object", "morphism", "id", "compose", "cell", "zero", "plus", "lwhisk", "rwhisk",
        "elem", "mul", "m", "{", "}", "(", ")", ",", ":", "=", "+", ".", "->", "=>", "#",
        "a", "b", "f", "g", "x1", "\n", " ", "  ",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e5_0002);
    for _ in 0..2000 {
        let n = rng.gen_range(0..60);
        let mut text = String::new();
        for _ in 0..n {
            text.push_str(PIECES[rng.gen_range(0..PIECES.len())]);
            if rng.gen_bool(0.5) {
                text.push(' ');
            }
        }
        assert_roundtrip_stable(&text);
    }
}

#[test]
fn mutated_documents_never_panic() {
    let base = serialize(&emit::structure_document(&fixtures::f1()).unwrap());
    let bytes = base.as_bytes();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e5_0003);
    for _ in 0..2000 {
        let mut mutated = bytes.to_vec();
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..mutated.len());
                mutated[i] = rng.gen();
            }
            1 => {
                let i = rng.gen_range(0..mutated.len());
                mutated.truncate(i);
            }
            _ => {
                let i = rng.gen_range(0..mutated.len());
                let b = rng.gen();
                mutated.insert(i, b);
            }
        }
        assert_roundtrip_stable(&String::from_utf8_lossy(&mutated));
    }
}
