mod common;

use common::*;
use semidual::c0::{exceptional_set, Exceptional};
use semidual::config::{parse_config, CheckSpec};
use semidual::dual::{check_dual, transfer_local_equiv};
use semidual::examples::run_suite;
use semidual::num::ratio;
use semidual::semigroup::{Carrier, Direction, Family, Semigroup, SideSel, SubsetDesc};
use semidual::verdict::Level;
use semidual::weight::{TailClass, Weight};

fn nat_weight(src: &str, class: TailClass) -> Weight {
    Weight::build(src, Carrier::Nat, &[(Direction::Pos, class)]).unwrap()
}

#[test]
fn example_suite_matches_expectations() {
    for row in run_suite(None) {
        assert!(row.pass(), "{} expected {} got {}", row.id, row.expected, row.actual);
    }
}

#[test]
fn exceptional_set_for_linear_weight() {
    let w = nat_weight("1+n", TailClass::Zero);
    match exceptional_set(&SubsetDesc::full(), &w, &ratio(1, 1000)) {
        Exceptional::Finite(e) => {
            assert_eq!(e.size, 999);
            assert_eq!(e.text, "{1..999}");
            let set = e.set.unwrap();
            let has = |v| set.contains(&Carrier::Nat, &semidual::semigroup::Element::Scalar(v));
            assert_eq!((has(1), has(999), has(1000)), (Some(true), Some(true), Some(false)));
        }
        other => panic!("{other:?}"),
    }
}

fn agrees_with_weak_cancellativity(s: &Semigroup, w: &Weight) {
    let spec = CheckSpec::default();
    let r = check_dual(s, w, &spec).unwrap();
    let wc = s.is_weakly_cancellative(SideSel::Both, spec.budget);
    assert!(r.both.level.is_conclusive(), "{}: {:?}", s.describe(), r.both);
    assert_eq!(r.both.is_yes(), wc.is_yes(), "{} with {}", s.describe(), w.source());
}

#[test]
fn bounded_weights_follow_weak_cancellativity() {
    let bounded = ["1", "2-1/n", "if n>=3 then 3 else 2"];
    for family in [Family::Max, Family::Min, Family::LeftZero, Family::RightZero] {
        let s = Semigroup::builtin(family, Carrier::Nat).unwrap();
        for src in bounded {
            agrees_with_weak_cancellativity(&s, &nat_weight(src, TailClass::Bounded));
        }
    }
    let mut r = rng(21);
    for _ in 0..20 {
        let (s, k) = random_semigroup(&mut r, 24);
        agrees_with_weak_cancellativity(&s, &length_weight(&s, k, 2));
    }
}

fn config(text: &str) -> (Semigroup, Weight) {
    let c = parse_config(text).unwrap();
    (c.semigroup, c.weight)
}

#[test]
fn scalar_multiples_have_identical_verdicts() {
    let cases = [
        ("[semigroup]\nfamily=max carrier=nat\n[weight]\nexpr=\"3+n\" tail=zero\n", ratio(1, 3)),
        ("[semigroup]\nfamily=min carrier=nat\n[weight]\nexpr=\"3\" tail=bounded\n", ratio(7, 1)),
        ("[semigroup]\nfamily=plus carrier=nat\n[weight]\nexpr=\"3*exp(n)\" tail=zero\n", ratio(1, 3)),
        ("[semigroup]\nfamily=left_zero carrier=nat\n[weight]\nexpr=\"3\" tail=bounded\n", ratio(2, 1)),
    ];
    for (text, c) in cases {
        let (s, w) = config(text);
        let t = transfer_local_equiv(&s, &w, &w.scale(&c).unwrap(), &CheckSpec::default()).unwrap();
        assert!(t.local_equivalence.is_yes());
        assert_eq!(t.first.left.level, t.second.left.level, "{text}");
        assert_eq!(t.first.right.level, t.second.right.level, "{text}");
    }
}

#[test]
fn non_equivalent_weights_may_both_be_dual() {
    let s = Semigroup::builtin(Family::Min, Carrier::Nat).unwrap();
    let t = transfer_local_equiv(
        &s,
        &nat_weight("1+n", TailClass::Zero),
        &nat_weight("1+n^2", TailClass::Zero),
        &CheckSpec::default(),
    )
    .unwrap();
    assert_eq!(t.local_equivalence.level, Level::No);
    assert!(t.first.both.is_yes() && t.second.both.is_yes());
}
