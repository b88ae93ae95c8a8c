//! `w_l(t) = sup_s ω(st)/ω(t)` and `w_r(t) = sup_s ω(ts)/ω(t)`.
//!
//! The supremum runs over the orbit `St` (or `tS`), which has a closed form
//! for every builtin family. On a tail or head of a one-dimensional carrier
//! the supremum is exact when the weight is monotone there in the right
//! direction. A weight that grows without bound gives an infinite supremum;
//! any other shape only yields a sampled lower bound.

use std::fmt;

use crate::num::Value;
use crate::semigroup::{Carrier, Element, Family, Rule, Semigroup, SemigroupError, Side, SubsetDesc, NAT_START};

use super::{Dom, TailClass, Var, Weight, WeightError};
use crate::semigroup::Direction;

#[derive(Debug, Clone, PartialEq)]
pub enum SupValue {
    Exact(Value),
    Infinite,
    /// The supremum is at least this value; sampling could not pin it down.
    LowerBound(Value),
}

impl SupValue {
    fn max(self, o: SupValue) -> SupValue {
        use SupValue::*;
        match (self, o) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Exact(a), Exact(b)) => Exact(a.max(b)),
            (Exact(a) | LowerBound(a), Exact(b) | LowerBound(b)) => LowerBound(a.max(b)),
        }
    }

    fn mul(self, o: SupValue) -> SupValue {
        use SupValue::*;
        match (self, o) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Exact(a), Exact(b)) => Exact(a.mul(&b)),
            (Exact(a) | LowerBound(a), Exact(b) | LowerBound(b)) => LowerBound(a.mul(&b)),
        }
    }

    fn div(self, d: &Value) -> SupValue {
        match self {
            SupValue::Exact(a) => SupValue::Exact(a.div(d).expect("positive weight")),
            SupValue::LowerBound(a) => SupValue::LowerBound(a.div(d).expect("positive weight")),
            SupValue::Infinite => SupValue::Infinite,
        }
    }

    pub fn exact(&self) -> Option<&Value> {
        match self {
            SupValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for SupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupValue::Exact(v) => write!(f, "{v}"),
            SupValue::Infinite => f.write_str("infinite"),
            SupValue::LowerBound(v) => write!(f, ">= {v}"),
        }
    }
}

/// `{st : s ∈ S}`.
pub fn left_orbit(s: &Semigroup, t: &Element) -> Result<SubsetDesc, SemigroupError> {
    orbit(s, t, Side::Left)
}

/// `{ts : s ∈ S}`.
pub fn right_orbit(s: &Semigroup, t: &Element) -> Result<SubsetDesc, SemigroupError> {
    orbit(s, t, Side::Right)
}

fn orbit(s: &Semigroup, t: &Element, side: Side) -> Result<SubsetDesc, SemigroupError> {
    let carrier = s.carrier();
    carrier.check(t)?;
    let d = match s.rule() {
        Rule::Builtin(f) => {
            let Element::Scalar(v) = *t else { unreachable!("builtins are one-dimensional") };
            let int = *carrier == Carrier::Int;
            match (f, side) {
                (Family::Max, _) => SubsetDesc::Tail(v),
                (Family::Min, _) if int => SubsetDesc::Head(v),
                (Family::Min, _) => SubsetDesc::finite((NAT_START..=v).map(Element::Scalar)),
                (Family::Plus, _) if int => SubsetDesc::full(),
                (Family::Plus, _) => SubsetDesc::Tail(v.checked_add(NAT_START).ok_or(SemigroupError::Overflow)?),
                (Family::LeftZero, Side::Left) | (Family::RightZero, Side::Right) => SubsetDesc::full(),
                (Family::LeftZero, Side::Right) | (Family::RightZero, Side::Left) => SubsetDesc::singleton(*t),
            }
        }
        Rule::Table(_) => {
            let n = carrier.size().expect("tables are finite");
            let mut out = Vec::with_capacity(n);
            for x in carrier.elements() {
                out.push(match side {
                    Side::Left => s.mul(&x, t)?,
                    Side::Right => s.mul(t, &x)?,
                });
            }
            SubsetDesc::finite(out)
        }
        Rule::Product(a, b) => {
            let Element::Pair(t1, t2) = *t else { unreachable!("product carriers hold pairs") };
            SubsetDesc::product(orbit(a, &Element::Scalar(t1), side)?, orbit(b, &Element::Scalar(t2), side)?)
        }
    };
    Ok(d.normalize(carrier))
}

/// `sup_{x ∈ set} ω(x)`.
pub fn sup_over(w: &Weight, set: &SubsetDesc, budget: usize) -> Result<SupValue, WeightError> {
    let carrier = w.carrier();
    if let Some(elems) = set.finite_elements(carrier) {
        let mut best: Option<Value> = None;
        for e in elems {
            let v = w.eval(&e)?;
            best = Some(match best {
                None => v,
                Some(b) => b.max(v),
            });
        }
        return Ok(SupValue::Exact(best.unwrap_or_else(Value::zero)));
    }
    match (set, carrier) {
        (SubsetDesc::Tail(a), Carrier::Nat | Carrier::Int) => tail_sup(w, *a, false),
        (SubsetDesc::Head(a), Carrier::Int) => tail_sup(w, *a, true),
        (SubsetDesc::Union(parts), _) => {
            let mut acc: Option<SupValue> = None;
            for p in parts {
                let v = sup_over(w, p, budget)?;
                acc = Some(match acc {
                    None => v,
                    Some(x) => x.max(v),
                });
            }
            Ok(acc.unwrap_or(SupValue::Exact(Value::zero())))
        }
        (SubsetDesc::Cofinite(excl), Carrier::Nat) => {
            let top = excl.iter().filter_map(|e| e.scalar()).max().unwrap_or(0);
            let mut pts: Vec<Element> = (NAT_START..=top).map(Element::Scalar).collect();
            pts.retain(|e| !excl.contains(e));
            let mut acc = tail_sup(w, top + 1, false)?;
            if !pts.is_empty() {
                acc = acc.max(sup_over(w, &SubsetDesc::finite(pts), budget)?);
            }
            Ok(acc)
        }
        (SubsetDesc::Cofinite(excl), Carrier::Int) => {
            let lo = excl.iter().filter_map(|e| e.scalar()).min().unwrap_or(0);
            let hi = excl.iter().filter_map(|e| e.scalar()).max().unwrap_or(0);
            let pts: Vec<Element> = (lo..=hi).map(Element::Scalar).filter(|e| !excl.contains(e)).collect();
            let mut acc = tail_sup(w, lo - 1, true)?.max(tail_sup(w, hi + 1, false)?);
            if !pts.is_empty() {
                acc = acc.max(sup_over(w, &SubsetDesc::finite(pts), budget)?);
            }
            Ok(acc)
        }
        (_, Carrier::Product(ca, cb)) => {
            let factor_sets = match set {
                SubsetDesc::Product(a, b) => Some(((**a).clone(), (**b).clone())),
                SubsetDesc::Cofinite(v) if v.is_empty() => Some((SubsetDesc::full(), SubsetDesc::full())),
                _ => None,
            };
            if let (Some((a, b)), Some((w1, w2))) = (factor_sets, w.factors()) {
                let a = a.normalize(ca);
                let b = b.normalize(cb);
                return Ok(sup_over(w1, &a, budget)?.mul(sup_over(w2, &b, budget)?));
            }
            sampled_sup(w, set, budget)
        }
        _ => sampled_sup(w, set, budget),
    }
}

fn sampled_sup(w: &Weight, set: &SubsetDesc, budget: usize) -> Result<SupValue, WeightError> {
    let carrier = w.carrier();
    let mut best: Option<Value> = None;
    for e in carrier.elements().take(budget.max(1) * 4) {
        if set.contains(carrier, &e) == Some(true) {
            let v = w.eval(&e)?;
            best = Some(match best {
                None => v,
                Some(b) => b.max(v),
            });
        }
    }
    Ok(SupValue::LowerBound(best.unwrap_or_else(Value::zero)))
}

/// Supremum over `{x >= a}` (or `{x <= a}` when `head`).
fn tail_sup(w: &Weight, a: i64, head: bool) -> Result<SupValue, WeightError> {
    let carrier = w.carrier();
    let start = if *carrier == Carrier::Nat { a.max(NAT_START) } else { a };
    let at_start = w.eval(&Element::Scalar(start))?;
    let dom = if head {
        Dom::along_n(f64::NEG_INFINITY, start as f64, 0)
    } else {
        Dom::along_n(start as f64, f64::INFINITY, 0)
    };
    let mut mono = w.expr().mono(Var::N, &dom);
    if head {
        mono = mono.flip();
    }
    if mono.is_down() {
        return Ok(SupValue::Exact(at_start));
    }
    let dir = if head { Direction::Neg } else { Direction::Pos };
    if mono.is_up() && w.class(dir) == TailClass::Zero {
        return Ok(SupValue::Infinite);
    }
    let mut best = at_start;
    for (e, v) in w.tail_samples(dir)? {
        let x = e.scalar().unwrap_or(0);
        if (head && x <= start) || (!head && x >= start) {
            best = best.max(v);
        }
    }
    Ok(SupValue::LowerBound(best))
}

/// `w_l(t)` for `side = Left`, `w_r(t)` for `side = Right`.
pub fn sided_sup_ratio(
    w: &Weight,
    s: &Semigroup,
    side: Side,
    t: &Element,
    budget: usize,
) -> Result<SupValue, WeightError> {
    if w.carrier() != s.carrier() {
        return Err(WeightError::Unsupported("weight and semigroup carriers differ".into()));
    }
    let orbit = orbit(s, t, side).map_err(|e| WeightError::Unsupported(e.to_string()))?;
    let wt = w.eval(t)?;
    Ok(sup_over(w, &orbit, budget)?.div(&wt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use Element::Scalar as S;

    fn nat(f: Family) -> Semigroup {
        Semigroup::builtin(f, Carrier::Nat).unwrap()
    }

    fn w(src: &str, c: TailClass) -> Weight {
        Weight::build(src, Carrier::Nat, &[(Direction::Pos, c)]).unwrap()
    }

    #[test]
    fn min_with_linear_weight_has_ratio_one() {
        let s = nat(Family::Min);
        let om = w("1+n", TailClass::Zero);
        for t in [1, 2, 7, 40] {
            assert_eq!(sided_sup_ratio(&om, &s, Side::Left, &S(t), 50).unwrap(), SupValue::Exact(Value::Exact(rat(1))));
        }
    }

    #[test]
    fn constant_weight_has_ratio_one() {
        for f in [Family::Max, Family::Min, Family::Plus, Family::LeftZero, Family::RightZero] {
            let s = nat(f);
            let one = Weight::one(Carrier::Nat);
            for side in [Side::Left, Side::Right] {
                let r = sided_sup_ratio(&one, &s, side, &S(3), 50).unwrap();
                assert_eq!(r, SupValue::Exact(Value::one()), "{f} {side:?}");
            }
        }
    }

    #[test]
    fn plus_with_decaying_exponential() {
        let s = nat(Family::Plus);
        let om = w("exp(-n)", TailClass::Unbounded);
        let r = sided_sup_ratio(&om, &s, Side::Left, &S(4), 50).unwrap();
        let SupValue::Exact(v) = r else { panic!("expected an exact supremum") };
        assert!((v.to_f64() - (-1f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn growing_weight_on_max_is_unbounded() {
        let s = nat(Family::Max);
        let r = sided_sup_ratio(&w("1+n", TailClass::Zero), &s, Side::Left, &S(2), 50).unwrap();
        assert_eq!(r, SupValue::Infinite);
    }

    #[test]
    fn orbits_of_zero_semigroups() {
        let lz = nat(Family::LeftZero);
        assert_eq!(left_orbit(&lz, &S(5)).unwrap(), SubsetDesc::full());
        assert_eq!(right_orbit(&lz, &S(5)).unwrap(), SubsetDesc::singleton(S(5)));
    }
}
