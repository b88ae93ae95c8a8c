//! Equivalence (`βω′ ≤ ω ≤ αω′` on all of `S`) and local equivalence (the
//! same on every `st⁻¹ ∪ t⁻¹s`).

use std::collections::BTreeSet;

use crate::num::{LogNum, Value};
use crate::semigroup::{Carrier, Direction, Element, Semigroup, Side, SubsetDesc};
use crate::verdict::{Level, Verdict};

use super::{TailClass, Weight};

const STABLE_SPREAD: f64 = 1.3862943611198906;

fn meet_all(vs: impl IntoIterator<Item = Verdict>, universal: &str, sampled: &str) -> Verdict {
    let mut level = Level::YesUniversal;
    let mut reason = None;
    for v in vs {
        if v.is_no() {
            return v;
        }
        if v.level < level {
            level = v.level;
            if v.level == Level::Unknown {
                reason = v.witness.clone();
            }
        }
    }
    match level {
        Level::YesUniversal => Verdict::universal(universal),
        Level::YesSampled => Verdict::sampled(sampled),
        _ => Verdict::unknown(reason.unwrap_or_else(|| "not decided".into())),
    }
}

fn scalar_multiple(w: &Weight, w2: &Weight) -> Option<Value> {
    if w.expr() == w2.expr() {
        return Some(Value::one());
    }
    let (c1, f1) = w.expr().factors();
    let (c2, f2) = w2.expr().factors();
    let key = |fs: &[crate::weight::Expr]| {
        let mut v: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
        v.sort();
        v
    };
    if key(&f1) == key(&f2) {
        c1.div(&c2)
    } else {
        None
    }
}

fn bracket(w: &Weight, w2: &Weight, elems: &[Element]) -> Verdict {
    let mut lo: Option<Value> = None;
    let mut hi: Option<Value> = None;
    for e in elems {
        let (Ok(a), Ok(b)) = (w.eval(e), w2.eval(e)) else {
            return Verdict::unknown(format!("weights not evaluable at {e}"));
        };
        let r = a.div(&b).expect("positive weight");
        lo = Some(match lo {
            None => r.clone(),
            Some(x) => x.min(r.clone()),
        });
        hi = Some(match hi {
            None => r,
            Some(x) => x.max(r),
        });
    }
    match (lo, hi) {
        (Some(b), Some(a)) => Verdict::universal(format!("β = {b}, α = {a}")),
        _ => Verdict::universal("empty set"),
    }
}

/// Ratio `ω/ω′` along one escape direction.
fn direction_ratio(w: &Weight, w2: &Weight, d: Direction) -> Verdict {
    let (c1, c2) = (w.class(d), w2.class(d));
    if c1 == TailClass::Bounded && c2 == TailClass::Bounded {
        return Verdict::universal(format!("1/ω and 1/ω′ both bounded along {}", d.key()));
    }
    if c1 != TailClass::Unknown && c2 != TailClass::Unknown && c1 != c2 {
        return Verdict::no(format!("along {}: 1/ω is {c1} but 1/ω′ is {c2}, so ω/ω′ is unbounded", d.key()));
    }
    let (Ok(a), Ok(b)) = (w.tail_samples(d), w2.tail_samples(d)) else {
        return Verdict::unknown("weights not evaluable along the tail");
    };
    let ln: Vec<(Element, f64)> = a
        .iter()
        .zip(&b)
        .map(|((e, x), (_, y))| (*e, x.to_log().ln - y.to_log().ln))
        .collect();
    if ln.len() < 4 {
        return Verdict::unknown("too few tail samples");
    }
    let lo = ln.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let hi = ln.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if hi - lo <= STABLE_SPREAD {
        return Verdict::sampled(format!("ln(ω/ω′) varies by {:.3} along {}", hi - lo, d.key()));
    }
    let tail = &ln[ln.len() / 2..];
    let rising = tail.windows(2).all(|p| p[1].1 > p[0].1);
    let falling = tail.windows(2).all(|p| p[1].1 < p[0].1);
    let tail_spread = (tail[tail.len() - 1].1 - tail[0].1).abs();
    if (rising || falling) && tail_spread > STABLE_SPREAD {
        let (e, v) = tail[tail.len() - 1];
        let (name, ratio) = if rising { ("ω/ω′", v) } else { ("ω′/ω", -v) };
        return Verdict::no(format!(
            "along {}: {name} keeps growing, reaching {} at {e}",
            d.key(),
            crate::num::fmt_lognum(LogNum { negative: false, ln: ratio })
        ));
    }
    Verdict::unknown(format!("ratio ω/ω′ along {} is irregular", d.key()))
}

/// `βω′ ≤ ω ≤ αω′` on the whole carrier.
pub fn equivalent(w: &Weight, w2: &Weight) -> Verdict {
    if w.carrier() != w2.carrier() {
        return Verdict::unknown(format!("carriers differ: {} vs {}", w.carrier(), w2.carrier()));
    }
    if let Some(c) = scalar_multiple(w, w2) {
        return Verdict::universal(format!("ω = c·ω′ with c = {c}"));
    }
    ratio_on_set(w, w2, &SubsetDesc::full())
}

fn ratio_on_set(w: &Weight, w2: &Weight, set: &SubsetDesc) -> Verdict {
    let carrier = w.carrier();
    if let Some(elems) = set.finite_elements(carrier) {
        return bracket(w, w2, &elems);
    }
    if let Some(c) = scalar_multiple(w, w2) {
        return Verdict::universal(format!("ω = c·ω′ with c = {c}"));
    }
    match carrier {
        Carrier::Product(ca, cb) => {
            let parts: Vec<SubsetDesc> = match set {
                SubsetDesc::Union(ps) => ps.clone(),
                other => vec![other.clone()],
            };
            let (Some((a1, a2)), Some((b1, b2))) = (w.factors(), w2.factors()) else {
                return Verdict::unknown("weights are not both separable");
            };
            let mut out = Vec::new();
            for p in parts {
                let (x, y) = match p {
                    SubsetDesc::Product(x, y) => ((*x).normalize(ca), (*y).normalize(cb)),
                    SubsetDesc::Cofinite(_) => (SubsetDesc::full(), SubsetDesc::full()),
                    SubsetDesc::Finite(v) => {
                        out.push(bracket(w, w2, &v));
                        continue;
                    }
                    _ => return Verdict::unknown(format!("cannot factor {}", p.fmt_in(carrier))),
                };
                out.push(ratio_on_set(a1, b1, &x));
                out.push(ratio_on_set(a2, b2, &y));
            }
            meet_all(out, "factor ratios bounded", "factor ratios stable in sampling")
        }
        _ => {
            let dirs = set.escape_directions(carrier);
            meet_all(
                dirs.into_iter().map(|d| direction_ratio(w, w2, d)),
                "ratio bounded along every escape direction",
                "ratio stable along every escape direction in sampling",
            )
        }
    }
}

/// Local equivalence on `st⁻¹ ∪ t⁻¹s` for the given pairs. The verdict is
/// universal only when the semigroup has a closed-form catalogue of its
/// infinite quotient sets and every catalogued shape passes.
pub fn locally_equivalent(
    w: &Weight,
    w2: &Weight,
    s: &Semigroup,
    pairs: &[(Element, Element)],
) -> Verdict {
    let eq = equivalent(w, w2);
    if eq.level == Level::YesUniversal {
        return Verdict::universal(format!("equivalent weights ({})", eq.certificate.unwrap_or_default()));
    }
    let mut todo: BTreeSet<(Element, Element)> = pairs.iter().copied().collect();
    let catalogue = match (s.infinite_quotient_catalogue(Side::Left), s.infinite_quotient_catalogue(Side::Right)) {
        (Some(a), Some(b)) => {
            todo.extend(a);
            todo.extend(b);
            true
        }
        _ => false,
    };
    let mut level = Level::YesUniversal;
    for (a, b) in &todo {
        let r = match (s.right_quotient(a, b), s.left_quotient(b, a)) {
            (Ok(x), Ok(y)) => x.union(&y, s.carrier()),
            (Err(e), _) | (_, Err(e)) => return Verdict::unknown(e.to_string()),
        };
        let v = ratio_on_set(w, w2, &r);
        if v.is_no() {
            return Verdict::no(format!(
                "pair ({a},{b}): on {} {}",
                r.fmt_in(s.carrier()),
                v.witness.unwrap_or_default()
            ));
        }
        level = level.meet(v.level);
    }
    if level == Level::YesUniversal && !catalogue {
        level = Level::YesSampled;
    }
    if eq.level == Level::YesSampled && level == Level::Unknown {
        level = Level::YesSampled;
    }
    match level {
        Level::YesUniversal => Verdict::universal(format!("bounded ratio on every quotient shape ({} pairs)", todo.len())),
        Level::YesSampled => Verdict::sampled(format!("bounded ratio on {} pairs", todo.len())),
        _ => Verdict::unknown("ratio not decided on some quotient set"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio;
    use crate::semigroup::Family;
    use crate::weight::TailClass;
    use Element::Scalar as S;

    fn nat(src: &str, c: TailClass) -> Weight {
        Weight::build(src, Carrier::Nat, &[(Direction::Pos, c)]).unwrap()
    }

    #[test]
    fn scalar_multiples_and_identity() {
        let w = nat("1+n", TailClass::Zero);
        assert_eq!(equivalent(&w, &w.scale(&ratio(2, 1)).unwrap()).level, Level::YesUniversal);
        assert_eq!(equivalent(&w, &nat("1+n", TailClass::Zero)).level, Level::YesUniversal);
    }

    #[test]
    fn linear_and_quadratic_are_not_equivalent() {
        let v = equivalent(&nat("1+n", TailClass::Zero), &nat("1+n^2", TailClass::Zero));
        assert_eq!(v.level, Level::No);
        let v = equivalent(&nat("1+n", TailClass::Zero), &Weight::one(Carrier::Nat));
        assert_eq!(v.level, Level::No);
    }

    #[test]
    fn local_equivalence_examples() {
        let min = Semigroup::builtin(Family::Min, Carrier::Nat).unwrap();
        let (a, b) = (nat("1+n", TailClass::Zero), nat("1+n^2", TailClass::Zero));
        let v = locally_equivalent(&a, &b, &min, &[(S(1), S(1))]);
        assert_eq!(v.level, Level::No);
        assert!(v.witness.unwrap().starts_with("pair (1,1): on N"));
        assert_eq!(locally_equivalent(&a, &a, &min, &[(S(1), S(1))]).level, Level::YesUniversal);

        let max = Semigroup::builtin(Family::Max, Carrier::Nat).unwrap();
        let v = locally_equivalent(&a, &b, &max, &[(S(5), S(3))]);
        assert_eq!(v.level, Level::YesUniversal);
    }
}
