mod common;

use std::cmp::Ordering;

use common::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use semidual::l1::{
    combo_eval, combo_pairing, convolve, module_action_left, module_action_right, norm_1w, norm_infw, pairing,
    L1Elem, LInfElem,
};
use semidual::num::Value;
use semidual::semigroup::{Carrier, Element, Family, Semigroup};
use semidual::weight::{TailClass, Weight};

fn elements(s: &Semigroup) -> Vec<Element> {
    s.carrier().elements().collect()
}

#[test]
fn action_of_point_masses_is_a_quotient_indicator() {
    let mut r = rng(11);
    for _ in 0..60 {
        let (s, _) = random_semigroup(&mut r, 24);
        let elems = elements(&s);
        for a in &elems {
            for t in &elems {
                let right = module_action_right(&s, &LInfElem::basis(*a), &L1Elem::basis(*t)).unwrap();
                let left = module_action_left(&s, &L1Elem::basis(*t), &LInfElem::basis(*a)).unwrap();
                for x in &elems {
                    let tx = s.mul(t, x).unwrap() == *a;
                    let xt = s.mul(x, t).unwrap() == *a;
                    assert_eq!(combo_eval(&right, s.carrier(), x).unwrap().is_one(), tx);
                    assert_eq!(combo_eval(&left, s.carrier(), x).unwrap().is_one(), xt);
                }
            }
        }
    }
}

#[test]
fn pairing_is_adjoint_to_convolution() {
    let mut r = rng(12);
    for _ in 0..300 {
        let (s, _) = random_semigroup(&mut r, 24);
        let c = s.carrier().clone();
        let (phi, f, g) = (random_linf(&mut r, &c), random_l1(&mut r, &c), random_l1(&mut r, &c));
        let lhs = combo_pairing(&module_action_right(&s, &phi, &f).unwrap(), &c, &g).unwrap();
        assert_eq!(lhs, pairing(&phi, &convolve(&s, &f, &g).unwrap()));
        let lhs = combo_pairing(&module_action_left(&s, &f, &phi).unwrap(), &c, &g).unwrap();
        assert_eq!(lhs, pairing(&phi, &convolve(&s, &g, &f).unwrap()));
    }
}

#[test]
fn actions_on_infinite_semigroups_are_adjoint() {
    let mut r = rng(13);
    for family in [Family::Max, Family::Min, Family::Plus, Family::LeftZero, Family::RightZero] {
        for carrier in [Carrier::Nat, Carrier::Int] {
            let s = Semigroup::builtin(family, carrier.clone()).unwrap();
            for _ in 0..30 {
                let (phi, f, g) = (random_linf(&mut r, &carrier), random_l1(&mut r, &carrier), random_l1(&mut r, &carrier));
                let lhs = combo_pairing(&module_action_right(&s, &phi, &f).unwrap(), &carrier, &g).unwrap();
                assert_eq!(lhs, pairing(&phi, &convolve(&s, &f, &g).unwrap()), "{family:?}");
            }
        }
    }
}

#[test]
fn convolution_is_associative() {
    let mut r = rng(14);
    let mut cases: Vec<Semigroup> = (0..100).map(|_| random_semigroup(&mut r, 24).0).collect();
    cases.push(Semigroup::builtin(Family::Max, Carrier::Nat).unwrap());
    cases.push(Semigroup::builtin(Family::Plus, Carrier::Nat).unwrap());
    for s in &cases {
        let c = s.carrier().clone();
        for _ in 0..3 {
            let (f, g, h) = (random_l1(&mut r, &c), random_l1(&mut r, &c), random_l1(&mut r, &c));
            let a = convolve(s, &convolve(s, &f, &g).unwrap(), &h).unwrap();
            let b = convolve(s, &f, &convolve(s, &g, &h).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }
}

fn le(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Exact(x), Value::Exact(y)) => x <= y,
        _ => a.to_f64() <= b.to_f64() * (1.0 + 1e-9) + 1e-9,
    }
}

#[test]
fn weighted_norms_are_submultiplicative() {
    let mut r = rng(15);
    let mut cases: Vec<(Semigroup, Weight)> = (0..60)
        .map(|_| {
            let (s, k) = random_semigroup(&mut r, 24);
            let w = length_weight(&s, k, 2);
            (s, w)
        })
        .collect();
    let pos = |c| [(semidual::semigroup::Direction::Pos, c)];
    cases.push((
        Semigroup::builtin(Family::Max, Carrier::Nat).unwrap(),
        Weight::build("1+n", Carrier::Nat, &pos(TailClass::Zero)).unwrap(),
    ));
    cases.push((
        Semigroup::builtin(Family::Plus, Carrier::Nat).unwrap(),
        Weight::build("exp(n/3)", Carrier::Nat, &pos(TailClass::Zero)).unwrap(),
    ));
    for (s, w) in &cases {
        let c = s.carrier().clone();
        for _ in 0..5 {
            let (f, g, phi) = (random_l1(&mut r, &c), random_l1(&mut r, &c), random_linf(&mut r, &c));
            let fg = norm_1w(&convolve(s, &f, &g).unwrap(), w).unwrap();
            let bound = norm_1w(&f, w).unwrap().mul(&norm_1w(&g, w).unwrap());
            assert!(le(&fg, &bound), "{fg} > {bound}");
            let p = Value::Exact(pairing(&phi, &f).abs());
            let bound = norm_infw(&phi, w).unwrap().mul(&norm_1w(&f, w).unwrap());
            assert!(le(&p, &bound), "{p} > {bound}");
        }
    }
}

proptest! {
    #[test]
    fn convolution_is_bilinear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (s, _) = random_semigroup(&mut r, 12);
        let c = s.carrier().clone();
        let (f, g, h) = (random_l1(&mut r, &c), random_l1(&mut r, &c), random_l1(&mut r, &c));
        let k = random_rational(&mut r);
        let lhs = convolve(&s, &f.add(&g.scale(&k)), &h).unwrap();
        let rhs = convolve(&s, &f, &h).unwrap().add(&convolve(&s, &g, &h).unwrap().scale(&k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_is_absorbing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (s, _) = random_semigroup(&mut r, 12);
        let f = random_l1(&mut r, s.carrier());
        prop_assert!(convolve(&s, &f, &L1Elem::zero()).unwrap().is_zero());
        let phi = random_linf(&mut r, s.carrier());
        prop_assert!(pairing(&phi, &L1Elem::zero()).is_zero());
    }

    #[test]
    fn pairing_orders_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = Carrier::Nat;
        let s = Semigroup::builtin(Family::Min, c.clone()).unwrap();
        let (phi, f, g) = (random_linf(&mut r, &c), random_l1(&mut r, &c), random_l1(&mut r, &c));
        let a = combo_pairing(&module_action_right(&s, &phi, &f).unwrap(), &c, &g).unwrap();
        let b = combo_pairing(&module_action_left(&s, &g, &phi).unwrap(), &c, &f).unwrap();
        prop_assert_eq!(a.cmp(&b), Ordering::Equal);
    }
}
