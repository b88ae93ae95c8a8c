mod common;

use common::rng;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use semidual::config::{parse_config, parse_config_bytes};
use semidual::examples::CONFIGS;

const ALPHABET: &[u8] = b"[]=\"#\n \tabcdefghijklmnopqrstuvwxyz_0123456789+-*/^(),<>.;";

fn assert_positioned(input: &[u8]) {
    if let Err(diags) = parse_config_bytes(input) {
        assert!(!diags.is_empty());
        let lines = input.iter().filter(|b| **b == b'\n').count() + 1;
        for d in diags {
            assert!(d.line >= 1 && d.line <= lines, "{d} outside {lines} lines");
            assert!(d.col >= 1, "{d}");
        }
    }
}

#[test]
fn random_bytes_never_panic() {
    let mut r = rng(31);
    for _ in 0..10_000 {
        let len = r.gen_range(0..80);
        let bytes: Vec<u8> = if r.gen_bool(0.5) {
            (0..len).map(|_| r.gen()).collect()
        } else {
            (0..len).map(|_| *ALPHABET.choose(&mut r).unwrap()).collect()
        };
        assert_positioned(&bytes);
    }
}

#[test]
fn mutated_configs_never_panic() {
    let mut r = rng(32);
    for _ in 0..5_000 {
        let (_, text) = CONFIGS.choose(&mut r).unwrap();
        let mut bytes = text.as_bytes().to_vec();
        for _ in 0..r.gen_range(1..4) {
            let i = r.gen_range(0..bytes.len());
            match r.gen_range(0..3) {
                0 => bytes[i] = *ALPHABET.choose(&mut r).unwrap(),
                1 => {
                    bytes.remove(i);
                }
                _ => bytes.insert(i, *ALPHABET.choose(&mut r).unwrap()),
            }
            if bytes.is_empty() {
                break;
            }
        }
        assert_positioned(&bytes);
    }
}

#[test]
fn shipped_configs_round_trip() {
    for (name, text) in CONFIGS {
        let cfg = parse_config(text).unwrap_or_else(|d| panic!("{name}: {d:?}"));
        let again = parse_config(&cfg.to_text()).unwrap();
        assert_eq!(cfg, again, "{name}");
    }
}

proptest! {
    #[test]
    fn generated_configs_round_trip(
        family in prop::sample::select(vec!["max", "min", "plus", "left_zero", "right_zero"]),
        carrier in prop::sample::select(vec!["nat", "int"]),
        shift in 1u32..5,
        budget in 1usize..40,
    ) {
        let tails = if carrier == "nat" { "tail=\"zero\"".to_string() } else { "tail_pos=\"zero\" tail_neg=\"zero\"".into() };
        let expr = if family == "plus" { format!("exp({shift}*abs(n))") } else { format!("{shift}+abs(n)") };
        let text = format!(
            "[semigroup]\nfamily=\"{family}\" carrier=\"{carrier}\"\n[weight]\nexpr=\"{expr}\" {tails}\n[check]\nbudget=\"{budget}\"\n"
        );
        let cfg = parse_config(&text).unwrap();
        prop_assert_eq!(parse_config(&cfg.to_text()).unwrap(), cfg);
    }
}
