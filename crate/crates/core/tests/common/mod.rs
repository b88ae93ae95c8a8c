#![allow(dead_code)]

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semidual::l1::{L1Elem, LInfElem};
use semidual::semigroup::{Carrier, Element, Semigroup, Table};
use semidual::weight::Weight;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random semigroup generated by transformations of a small set, with at
/// most `cap` elements, and the number of distinct generators.
pub fn random_semigroup(rng: &mut ChaCha8Rng, cap: usize) -> (Semigroup, usize) {
    loop {
        let points = rng.gen_range(2..=4);
        let count = rng.gen_range(1..=3);
        let gens: Vec<Vec<usize>> =
            (0..count).map(|_| (0..points).map(|_| rng.gen_range(0..points)).collect()).collect();
        let mut distinct = gens.clone();
        distinct.sort();
        distinct.dedup();
        if let Ok(t) = Table::from_transformations(&gens, cap) {
            return (Semigroup::from_table(t).expect("composition is associative"), distinct.len());
        }
    }
}

/// Word length over the generators `0..gens`.
pub fn word_lengths(s: &Semigroup, gens: usize) -> Vec<u32> {
    let n = s.carrier().size().unwrap();
    let mut len = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    for (g, l) in len.iter_mut().enumerate().take(gens) {
        *l = 1;
        queue.push_back(g);
    }
    while let Some(x) = queue.pop_front() {
        for g in 0..gens {
            let Element::Scalar(y) = s.mul(&Element::Scalar(x as i64), &Element::Scalar(g as i64)).unwrap() else {
                unreachable!()
            };
            let y = y as usize;
            if len[y] == u32::MAX {
                len[y] = len[x] + 1;
                queue.push_back(y);
            }
        }
    }
    len
}

/// `ω(x) = base^{|x|}`, submultiplicative because word length is subadditive.
pub fn length_weight(s: &Semigroup, gens: usize, base: u32) -> Weight {
    let lens = word_lengths(s, gens);
    let mut src = String::from("1");
    for (i, l) in lens.iter().enumerate().rev() {
        src = format!("if n={i} then {} else {src}", base.pow(*l));
    }
    Weight::build(&src, s.carrier().clone(), &[]).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=6);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_element(rng: &mut ChaCha8Rng, carrier: &Carrier) -> Element {
    match carrier {
        Carrier::Finite(n) => Element::Scalar(rng.gen_range(0..*n as i64)),
        Carrier::Nat => Element::Scalar(rng.gen_range(1..=30)),
        Carrier::Int => Element::Scalar(rng.gen_range(-30..=30)),
        Carrier::Product(a, b) => {
            let (Element::Scalar(x), Element::Scalar(y)) = (random_element(rng, a), random_element(rng, b)) else {
                unreachable!()
            };
            Element::Pair(x, y)
        }
    }
}

fn random_terms(rng: &mut ChaCha8Rng, carrier: &Carrier) -> Vec<(Element, BigRational)> {
    let k = rng.gen_range(1..=4);
    (0..k).map(|_| (random_element(rng, carrier), random_rational(rng))).collect()
}

pub fn random_l1(rng: &mut ChaCha8Rng, carrier: &Carrier) -> L1Elem {
    L1Elem::from_terms(random_terms(rng, carrier))
}

pub fn random_linf(rng: &mut ChaCha8Rng, carrier: &Carrier) -> LInfElem {
    LInfElem::from_terms(random_terms(rng, carrier))
}
