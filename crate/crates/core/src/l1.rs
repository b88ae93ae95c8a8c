//! Exact arithmetic in `ℓ¹(S,ω)` and its pairing with finitely supported
//! members of `c₀(S,ω)`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::config::{parse_vector, VecKind};
use crate::num::{fmt_rational, Value};
use crate::semigroup::{Carrier, Element, Rule, Semigroup, SemigroupError, SubsetDesc};
use crate::weight::{Weight, WeightError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum L1Error {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("membership of {x} in {set} is undecided")]
    OpenMembership { x: Element, set: String },
    #[error("{0}")]
    Parse(String),
}

fn prune(m: &mut BTreeMap<Element, BigRational>) {
    m.retain(|_, v| !v.is_zero());
}

fn fmt_vector(f: &mut fmt::Formatter<'_>, m: &BTreeMap<Element, BigRational>, sym: char) -> fmt::Result {
    if m.is_empty() {
        return f.write_str("0");
    }
    for (i, (e, c)) in m.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let a = c.abs();
        if !a.is_one() {
            write!(f, "{}*", fmt_rational(&a))?;
        }
        write!(f, "{sym}({e})")?;
    }
    Ok(())
}

macro_rules! sparse_vector {
    ($name:ident, $kind:expr, $sym:literal) => {
        #[derive(Debug, Clone, Default, PartialEq, Eq)]
        pub struct $name(BTreeMap<Element, BigRational>);

        impl $name {
            pub fn zero() -> Self {
                $name(BTreeMap::new())
            }

            pub fn basis(e: Element) -> Self {
                $name([(e, BigRational::one())].into_iter().collect())
            }

            pub fn from_terms(terms: impl IntoIterator<Item = (Element, BigRational)>) -> Self {
                let mut m = BTreeMap::new();
                for (e, c) in terms {
                    *m.entry(e).or_insert_with(BigRational::zero) += c;
                }
                prune(&mut m);
                $name(m)
            }

            pub fn parse(text: &str, carrier: &Carrier) -> Result<Self, L1Error> {
                parse_vector(text, carrier, $kind).map($name).map_err(L1Error::Parse)
            }

            pub fn get(&self, e: &Element) -> BigRational {
                self.0.get(e).cloned().unwrap_or_else(BigRational::zero)
            }

            pub fn terms(&self) -> impl Iterator<Item = (&Element, &BigRational)> {
                self.0.iter()
            }

            pub fn support(&self) -> impl Iterator<Item = &Element> {
                self.0.keys()
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_empty()
            }

            pub fn add(&self, o: &Self) -> Self {
                Self::from_terms(self.0.iter().chain(o.0.iter()).map(|(e, c)| (*e, c.clone())))
            }

            pub fn scale(&self, c: &BigRational) -> Self {
                Self::from_terms(self.0.iter().map(|(e, v)| (*e, v * c)))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_vector(f, &self.0, $sym)
            }
        }
    };
}

sparse_vector!(L1Elem, VecKind::L1, 'd');
sparse_vector!(LInfElem, VecKind::LInf, 'e');

/// `Σ cᵢ·1_{Fᵢ}`, normalized: descriptors distinct and sorted, coefficients
/// nonzero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndicatorCombo {
    terms: Vec<(BigRational, SubsetDesc)>,
}

impl IndicatorCombo {
    pub fn new(terms: impl IntoIterator<Item = (BigRational, SubsetDesc)>, carrier: &Carrier) -> Self {
        let mut m: BTreeMap<SubsetDesc, BigRational> = BTreeMap::new();
        for (c, d) in terms {
            let d = d.normalize(carrier);
            if d.is_empty() {
                continue;
            }
            *m.entry(d).or_insert_with(BigRational::zero) += c;
        }
        IndicatorCombo { terms: m.into_iter().filter(|(_, c)| !c.is_zero()).map(|(d, c)| (c, d)).collect() }
    }

    pub fn terms(&self) -> &[(BigRational, SubsetDesc)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn fmt_in(&self, carrier: &Carrier) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (c, d)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                _ => out.push_str(&format!(" {sign} ")),
            }
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&format!("{}*", fmt_rational(&a)));
            }
            out.push_str(&format!("1_{}", d.fmt_in(carrier)));
        }
        out
    }
}

/// `f * g = Σ f(s)g(t) δ_{st}`.
pub fn convolve(s: &Semigroup, f: &L1Elem, g: &L1Elem) -> Result<L1Elem, L1Error> {
    let mut terms = Vec::new();
    for (a, x) in f.terms() {
        for (b, y) in g.terms() {
            terms.push((s.mul(a, b)?, x * y));
        }
    }
    Ok(L1Elem::from_terms(terms))
}

/// `‖f‖_{1,ω} = Σ |f(s)| ω(s)`.
pub fn norm_1w(f: &L1Elem, w: &Weight) -> Result<Value, WeightError> {
    let mut total = Value::zero();
    for (e, c) in f.terms() {
        total = total.add(&Value::Exact(c.abs()).mul(&w.eval(e)?));
    }
    Ok(total)
}

/// `‖φ‖_{∞,ω} = max |φ(s)| / ω(s)`.
pub fn norm_infw(phi: &LInfElem, w: &Weight) -> Result<Value, WeightError> {
    let mut best = Value::zero();
    for (e, c) in phi.terms() {
        best = best.max(Value::Exact(c.abs()).mul(&w.recip(e)?));
    }
    Ok(best)
}

/// `⟨φ, f⟩ = Σ φ(s) f(s)`.
pub fn pairing(phi: &LInfElem, f: &L1Elem) -> BigRational {
    phi.terms().map(|(e, c)| c * f.get(e)).fold(BigRational::zero(), |a, b| a + b)
}

/// `φ·f = Σ φ(s) f(t) 1_{t⁻¹s}`.
pub fn module_action_right(s: &Semigroup, phi: &LInfElem, f: &L1Elem) -> Result<IndicatorCombo, L1Error> {
    let mut terms = Vec::new();
    for (a, x) in phi.terms() {
        for (t, y) in f.terms() {
            terms.push((x * y, s.left_quotient(t, a)?));
        }
    }
    Ok(IndicatorCombo::new(terms, s.carrier()))
}

/// `f·φ = Σ φ(s) f(t) 1_{st⁻¹}`.
pub fn module_action_left(s: &Semigroup, f: &L1Elem, phi: &LInfElem) -> Result<IndicatorCombo, L1Error> {
    let mut terms = Vec::new();
    for (a, x) in phi.terms() {
        for (t, y) in f.terms() {
            terms.push((x * y, s.right_quotient(a, t)?));
        }
    }
    Ok(IndicatorCombo::new(terms, s.carrier()))
}

/// `Σ cᵢ·[x ∈ Fᵢ]`.
pub fn combo_eval(c: &IndicatorCombo, carrier: &Carrier, x: &Element) -> Result<BigRational, L1Error> {
    let mut total = BigRational::zero();
    for (k, d) in c.terms() {
        match d.contains(carrier, x) {
            Some(true) => total += k,
            Some(false) => {}
            None => return Err(L1Error::OpenMembership { x: *x, set: d.fmt_in(carrier) }),
        }
    }
    Ok(total)
}

/// `Σ cᵢ·Σ_{x ∈ Fᵢ} g(x)`.
pub fn combo_pairing(c: &IndicatorCombo, carrier: &Carrier, g: &L1Elem) -> Result<BigRational, L1Error> {
    let mut total = BigRational::zero();
    for (x, v) in g.terms() {
        total += combo_eval(c, carrier, x)? * v;
    }
    Ok(total)
}

/// The two-sided identity of a finite semigroup, which is exactly when `δ_e`
/// is an identity of `ℓ¹(S)`.
pub fn find_identity(s: &Semigroup) -> Option<Element> {
    if !s.carrier().is_finite() {
        return None;
    }
    if let Rule::Table(t) = s.rule() {
        return (0..t.order()).find(|&e| (0..t.order()).all(|x| t.get(e, x) == x && t.get(x, e) == x)).map(|e| Element::Scalar(e as i64));
    }
    let elems: Vec<Element> = s.carrier().elements().collect();
    elems.iter().copied().find(|e| {
        elems.iter().all(|x| s.mul(e, x).ok() == Some(*x) && s.mul(x, e).ok() == Some(*x))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};
    use crate::semigroup::{Family, Table};
    use crate::weight::TailClass;
    use Element::Scalar as S;

    fn nat(f: Family) -> Semigroup {
        Semigroup::builtin(f, Carrier::Nat).unwrap()
    }

    #[test]
    fn convolution_examples() {
        let max = nat(Family::Max);
        let f = L1Elem::parse("d(1) + 2*d(2)", &Carrier::Nat).unwrap();
        let g = L1Elem::basis(S(3));
        assert_eq!(convolve(&max, &f, &g).unwrap(), L1Elem::parse("3*d(3)", &Carrier::Nat).unwrap());
        assert_eq!(convolve(&max, &L1Elem::basis(S(2)), &L1Elem::basis(S(5))).unwrap(), L1Elem::basis(S(5)));
        assert!(convolve(&max, &L1Elem::zero(), &f).unwrap().is_zero());
    }

    #[test]
    fn norms_and_pairing() {
        let w = Weight::build("1+n", Carrier::Nat, &[(crate::semigroup::Direction::Pos, TailClass::Zero)]).unwrap();
        let f = L1Elem::parse("d(1) + 2*d(2)", &Carrier::Nat).unwrap();
        assert_eq!(norm_1w(&f, &w).unwrap(), Value::int(8));
        assert_eq!(norm_infw(&LInfElem::basis(S(4)), &w).unwrap(), Value::Exact(ratio(1, 5)));
        let phi = LInfElem::parse("2*e(1) + e(2)", &Carrier::Nat).unwrap();
        assert_eq!(pairing(&phi, &L1Elem::parse("3*d(1)", &Carrier::Nat).unwrap()), rat(6));
        assert_eq!(pairing(&LInfElem::basis(S(1)), &L1Elem::basis(S(2))), rat(0));
    }

    #[test]
    fn module_actions() {
        let min = nat(Family::Min);
        let c = module_action_right(&min, &LInfElem::basis(S(1)), &L1Elem::basis(S(1))).unwrap();
        assert_eq!(c.fmt_in(&Carrier::Nat), "1_N");
        let zmin = Semigroup::builtin(Family::Min, Carrier::Int).unwrap();
        let c = module_action_right(&zmin, &LInfElem::basis(S(3)), &L1Elem::basis(S(5))).unwrap();
        assert_eq!(c.fmt_in(&Carrier::Int), "1_{3}");
        let lz = nat(Family::LeftZero);
        let c = module_action_left(&lz, &L1Elem::basis(S(4)), &LInfElem::basis(S(2))).unwrap();
        assert_eq!(c.fmt_in(&Carrier::Nat), "1_{2}");
        let prod = Semigroup::product(nat(Family::Plus), nat(Family::RightZero)).unwrap();
        let c = module_action_left(&prod, &L1Elem::basis(Element::Pair(1, 2)), &LInfElem::basis(Element::Pair(2, 2)))
            .unwrap();
        assert_eq!(c.fmt_in(prod.carrier()), "1_{1}×N");
    }

    #[test]
    fn combos_normalize() {
        let c = IndicatorCombo::new(
            [(rat(2), SubsetDesc::singleton(S(3))), (rat(-1), SubsetDesc::singleton(S(3)))],
            &Carrier::Nat,
        );
        assert_eq!(combo_eval(&c, &Carrier::Nat, &S(3)).unwrap(), rat(1));
        let t = IndicatorCombo::new([(rat(1), SubsetDesc::Tail(4))], &Carrier::Nat);
        assert_eq!(combo_eval(&t, &Carrier::Nat, &S(7)).unwrap(), rat(1));
        assert_eq!(combo_eval(&IndicatorCombo::default(), &Carrier::Nat, &S(7)).unwrap(), rat(0));
    }

    #[test]
    fn identities() {
        let max = Semigroup::builtin(Family::Max, Carrier::Finite(4)).unwrap();
        assert_eq!(find_identity(&max), Some(S(0)));
        let lz = Semigroup::from_table(Table::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap()).unwrap();
        assert_eq!(find_identity(&lz), None);
        let one = Semigroup::from_table(Table::from_rows(vec![vec![0]]).unwrap()).unwrap();
        assert_eq!(find_identity(&one), Some(S(0)));
    }

    #[test]
    fn display_round_trips() {
        let f = L1Elem::parse("2*d(3) - 1/2*d(5) + d(7)", &Carrier::Nat).unwrap();
        assert_eq!(f.to_string(), "2*d(3) - 1/2*d(5) + d(7)");
        assert_eq!(L1Elem::parse(&f.to_string(), &Carrier::Nat).unwrap(), f);
    }
}
