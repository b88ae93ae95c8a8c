//! Discrete semigroups and their quotient sets `t⁻¹s = {x : tx = s}` and
//! `st⁻¹ = {x : xt = s}`.

mod subset;
mod table;

use std::fmt;

use thiserror::Error;

pub use subset::SubsetDesc;
pub use table::Table;

use crate::verdict::Verdict;

/// The positive integers start at this value.
pub const NAT_START: i64 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("element {element} is not in carrier {carrier}")]
    OutOfCarrier { element: Element, carrier: String },
    #[error("integer overflow while multiplying")]
    Overflow,
    #[error("malformed table: {0}")]
    BadTable(String),
    #[error("table is not associative: {0}")]
    NotAssociative(String),
    #[error("family {family} is not defined on carrier {carrier}")]
    UnsupportedFamily { family: Family, carrier: String },
    #[error("inconsistent cancellativity metadata: {0}")]
    Inconsistent(String),
    #[error("operation needs {0}")]
    Unsupported(String),
}

/// A point of a carrier. Finite carriers use indices `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Scalar(i64),
    Pair(i64, i64),
}

impl Element {
    pub fn magnitude(&self) -> i64 {
        match self {
            Element::Scalar(v) => v.saturating_abs(),
            Element::Pair(a, b) => a.saturating_abs().max(b.saturating_abs()),
        }
    }

    pub fn scalar(&self) -> Option<i64> {
        match self {
            Element::Scalar(v) => Some(*v),
            Element::Pair(..) => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Scalar(v) => write!(f, "{v}"),
            Element::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Ways a point can escape to infinity in a carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Pos,
    Neg,
    MPos,
    MNeg,
    NPos,
    NNeg,
    /// Both coordinates growing together along `(k, k)`.
    Diag,
}

impl Direction {
    pub fn lift_first(self) -> Direction {
        match self {
            Direction::Pos => Direction::MPos,
            Direction::Neg => Direction::MNeg,
            d => d,
        }
    }

    pub fn lift_second(self) -> Direction {
        match self {
            Direction::Pos => Direction::NPos,
            Direction::Neg => Direction::NNeg,
            d => d,
        }
    }

    /// The one-dimensional direction a pair direction moves along.
    pub fn factor_direction(self) -> Option<(usize, Direction)> {
        match self {
            Direction::MPos => Some((0, Direction::Pos)),
            Direction::MNeg => Some((0, Direction::Neg)),
            Direction::NPos => Some((1, Direction::Pos)),
            Direction::NNeg => Some((1, Direction::Neg)),
            _ => None,
        }
    }

    /// Config key suffix: `pos`, `neg`, `m_pos`, ...
    pub fn key(self) -> &'static str {
        match self {
            Direction::Pos => "pos",
            Direction::Neg => "neg",
            Direction::MPos => "m_pos",
            Direction::MNeg => "m_neg",
            Direction::NPos => "n_pos",
            Direction::NNeg => "n_neg",
            Direction::Diag => "diag",
        }
    }

    pub fn from_key(s: &str) -> Option<Direction> {
        Some(match s {
            "pos" => Direction::Pos,
            "neg" => Direction::Neg,
            "m_pos" => Direction::MPos,
            "m_neg" => Direction::MNeg,
            "n_pos" => Direction::NPos,
            "n_neg" => Direction::NNeg,
            "diag" => Direction::Diag,
            _ => return None,
        })
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Pos => "n→+∞",
            Direction::Neg => "n→−∞",
            Direction::MPos => "m→+∞",
            Direction::MNeg => "m→−∞",
            Direction::NPos => "n→+∞",
            Direction::NNeg => "n→−∞",
            Direction::Diag => "(k,k), k→+∞",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Carrier {
    /// `{1, 2, 3, ...}`
    Nat,
    Int,
    /// `{0, ..., n-1}`, `n >= 1`.
    Finite(usize),
    /// Pairs of one-dimensional carriers.
    Product(Box<Carrier>, Box<Carrier>),
}

impl Carrier {
    pub fn pair(a: Carrier, b: Carrier) -> Carrier {
        Carrier::Product(Box::new(a), Box::new(b))
    }

    pub fn is_scalar(&self) -> bool {
        !matches!(self, Carrier::Product(..))
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Carrier::Finite(_) => true,
            Carrier::Product(a, b) => a.is_finite() && b.is_finite(),
            _ => false,
        }
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            Carrier::Finite(n) => Some(*n),
            Carrier::Product(a, b) => Some(a.size()? * b.size()?),
            _ => None,
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (Carrier::Nat, Element::Scalar(v)) => *v >= NAT_START,
            (Carrier::Int, Element::Scalar(_)) => true,
            (Carrier::Finite(n), Element::Scalar(v)) => *v >= 0 && (*v as u64) < *n as u64,
            (Carrier::Product(a, b), Element::Pair(x, y)) => {
                a.contains(&Element::Scalar(*x)) && b.contains(&Element::Scalar(*y))
            }
            _ => false,
        }
    }

    pub fn check(&self, e: &Element) -> Result<(), SemigroupError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(SemigroupError::OutOfCarrier { element: *e, carrier: self.name() })
        }
    }

    /// The first element in enumeration order.
    pub fn base(&self) -> Element {
        match self {
            Carrier::Nat => Element::Scalar(NAT_START),
            Carrier::Int | Carrier::Finite(_) => Element::Scalar(0),
            Carrier::Product(a, b) => Element::Pair(a.base_scalar(), b.base_scalar()),
        }
    }

    pub fn base_scalar(&self) -> i64 {
        self.base().scalar().unwrap_or(0)
    }

    /// The `k`-th scalar in enumeration order: `1, 2, 3, ...` on the
    /// naturals, `0, 1, -1, 2, -2, ...` on the integers.
    pub fn nth_scalar(&self, k: u64) -> Option<i64> {
        match self {
            Carrier::Nat => i64::try_from(k).ok()?.checked_add(NAT_START),
            Carrier::Int => {
                let k = i64::try_from(k).ok()?;
                Some(if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
            }
            Carrier::Finite(n) => (k < *n as u64).then_some(k as i64),
            Carrier::Product(..) => None,
        }
    }

    /// Deterministic enumeration: row-major for finite products, Cantor
    /// diagonals otherwise.
    pub fn elements(&self) -> Box<dyn Iterator<Item = Element> + '_> {
        match self {
            Carrier::Product(a, b) => {
                if let (Some(na), Some(nb)) = (a.size(), b.size()) {
                    return Box::new((0..na as i64).flat_map(move |x| (0..nb as i64).map(move |y| Element::Pair(x, y))));
                }
                Box::new((0u64..).flat_map(move |d| {
                    (0..=d).filter_map(move |i| {
                        Some(Element::Pair(a.nth_scalar(i)?, b.nth_scalar(d - i)?))
                    })
                }))
            }
            _ => Box::new((0u64..).map_while(move |k| self.nth_scalar(k)).map(Element::Scalar)),
        }
    }

    /// Escape directions (empty for finite carriers).
    pub fn directions(&self) -> Vec<Direction> {
        match self {
            Carrier::Nat => vec![Direction::Pos],
            Carrier::Int => vec![Direction::Pos, Direction::Neg],
            Carrier::Finite(_) => vec![],
            Carrier::Product(a, b) => {
                let mut v: Vec<Direction> = a.directions().into_iter().map(Direction::lift_first).collect();
                v.extend(b.directions().into_iter().map(Direction::lift_second));
                if !a.is_finite() && !b.is_finite() {
                    v.push(Direction::Diag);
                }
                v
            }
        }
    }

    /// Point at distance `k` along a direction, other coordinates at base.
    pub fn point_along(&self, dir: Direction, k: i64) -> Option<Element> {
        let e = match (self, dir) {
            (Carrier::Nat | Carrier::Int, Direction::Pos) => Element::Scalar(k),
            (Carrier::Int, Direction::Neg) => Element::Scalar(-k),
            (Carrier::Product(a, b), d) => {
                let (ba, bb) = (a.base_scalar(), b.base_scalar());
                match d {
                    Direction::MPos => Element::Pair(k, bb),
                    Direction::MNeg => Element::Pair(-k, bb),
                    Direction::NPos => Element::Pair(ba, k),
                    Direction::NNeg => Element::Pair(ba, -k),
                    Direction::Diag => Element::Pair(k, k),
                    _ => return None,
                }
            }
            _ => return None,
        };
        self.contains(&e).then_some(e)
    }

    pub fn name(&self) -> String {
        match self {
            Carrier::Nat => "N".into(),
            Carrier::Int => "Z".into(),
            Carrier::Finite(n) => format!("F{n}"),
            Carrier::Product(a, b) => format!("{}×{}", a.name(), b.name()),
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Closed-form multiplication families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Max,
    Min,
    Plus,
    LeftZero,
    RightZero,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Max => "max",
            Family::Min => "min",
            Family::Plus => "plus",
            Family::LeftZero => "left_zero",
            Family::RightZero => "right_zero",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Some(match s {
            "max" => Family::Max,
            "min" => Family::Min,
            "plus" => Family::Plus,
            "left_zero" => Family::LeftZero,
            "right_zero" => Family::RightZero,
            _ => return None,
        })
    }

    pub fn is_commutative(self) -> bool {
        matches!(self, Family::Max | Family::Min | Family::Plus)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Table(Table),
    Builtin(Family),
    Product(Box<Semigroup>, Box<Semigroup>),
}

/// Which quotient sets a statement is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// `t⁻¹s = {x : tx = s}`
    Left,
    /// `st⁻¹ = {x : xt = s}`
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideSel {
    Left,
    Right,
    Both,
}

impl SideSel {
    pub fn name(self) -> &'static str {
        match self {
            SideSel::Left => "left",
            SideSel::Right => "right",
            SideSel::Both => "both",
        }
    }

    pub fn sides(self) -> &'static [Side] {
        match self {
            SideSel::Left => &[Side::Left],
            SideSel::Right => &[Side::Right],
            SideSel::Both => &[Side::Left, Side::Right],
        }
    }
}

/// Whether every quotient set on one side is finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WcClass {
    AlwaysFinite,
    /// A pair `(s, t)` whose quotient on this side is infinite.
    HasInfiniteQuotient(Element, Element),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    carrier: Carrier,
    rule: Rule,
    wc_left: WcClass,
    wc_right: WcClass,
}

impl Semigroup {
    pub fn builtin(family: Family, carrier: Carrier) -> Result<Semigroup, SemigroupError> {
        if let (Family::Max | Family::Min, Carrier::Finite(n)) = (family, &carrier) {
            let pick = |a: usize, b: usize| if family == Family::Max { a.max(b) } else { a.min(b) };
            let rows = (0..*n).map(|a| (0..*n).map(|b| pick(a, b)).collect()).collect();
            return Semigroup::from_table(Table::from_rows(rows)?);
        }
        let ok = match family {
            Family::Max | Family::Min | Family::Plus => matches!(carrier, Carrier::Nat | Carrier::Int),
            Family::LeftZero | Family::RightZero => carrier.is_scalar(),
        };
        if !ok {
            return Err(SemigroupError::UnsupportedFamily { family, carrier: carrier.name() });
        }
        let mut s = Semigroup {
            carrier,
            rule: Rule::Builtin(family),
            wc_left: WcClass::Unknown,
            wc_right: WcClass::Unknown,
        };
        s.wc_left = s.builtin_class(Side::Left);
        s.wc_right = s.builtin_class(Side::Right);
        s.validate_metadata()?;
        Ok(s)
    }

    pub fn from_table(table: Table) -> Result<Semigroup, SemigroupError> {
        let assoc = table.check_associativity();
        if assoc.is_no() {
            return Err(SemigroupError::NotAssociative(assoc.witness.unwrap_or_default()));
        }
        let s = Semigroup {
            carrier: Carrier::Finite(table.order()),
            rule: Rule::Table(table),
            wc_left: WcClass::AlwaysFinite,
            wc_right: WcClass::AlwaysFinite,
        };
        s.validate_metadata()?;
        Ok(s)
    }

    pub fn product(a: Semigroup, b: Semigroup) -> Result<Semigroup, SemigroupError> {
        if !a.carrier.is_scalar() || !b.carrier.is_scalar() {
            return Err(SemigroupError::Unsupported("one-dimensional factors".into()));
        }
        let carrier = Carrier::pair(a.carrier.clone(), b.carrier.clone());
        let mut s = Semigroup {
            carrier,
            rule: Rule::Product(Box::new(a), Box::new(b)),
            wc_left: WcClass::Unknown,
            wc_right: WcClass::Unknown,
        };
        s.wc_left = s.product_class(Side::Left)?;
        s.wc_right = s.product_class(Side::Right)?;
        s.validate_metadata()?;
        Ok(s)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn family(&self) -> Option<Family> {
        match self.rule {
            Rule::Builtin(f) => Some(f),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<(&Semigroup, &Semigroup)> {
        match &self.rule {
            Rule::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn wc_class(&self, side: Side) -> &WcClass {
        match side {
            Side::Left => &self.wc_left,
            Side::Right => &self.wc_right,
        }
    }

    /// Short description such as `(N, min)` or `(N, plus) × (N, right_zero)`.
    pub fn describe(&self) -> String {
        match &self.rule {
            Rule::Builtin(f) => format!("({}, {})", self.carrier, f),
            Rule::Table(t) => format!("table of order {}", t.order()),
            Rule::Product(a, b) => format!("{} × {}", a.describe(), b.describe()),
        }
    }

    pub fn mul(&self, s: &Element, t: &Element) -> Result<Element, SemigroupError> {
        self.carrier.check(s)?;
        self.carrier.check(t)?;
        self.mul_unchecked(s, t)
    }

    fn mul_unchecked(&self, s: &Element, t: &Element) -> Result<Element, SemigroupError> {
        match &self.rule {
            Rule::Builtin(f) => {
                let (Element::Scalar(a), Element::Scalar(b)) = (*s, *t) else {
                    unreachable!("builtin families are one-dimensional")
                };
                let v = match f {
                    Family::Max => a.max(b),
                    Family::Min => a.min(b),
                    Family::Plus => a.checked_add(b).ok_or(SemigroupError::Overflow)?,
                    Family::LeftZero => a,
                    Family::RightZero => b,
                };
                Ok(Element::Scalar(v))
            }
            Rule::Table(tab) => {
                let (Element::Scalar(a), Element::Scalar(b)) = (*s, *t) else {
                    unreachable!("tables are one-dimensional")
                };
                Ok(Element::Scalar(tab.get(a as usize, b as usize) as i64))
            }
            Rule::Product(x, y) => {
                let (Element::Pair(s1, s2), Element::Pair(t1, t2)) = (*s, *t) else {
                    unreachable!("product carriers hold pairs")
                };
                let Element::Scalar(a) = x.mul_unchecked(&Element::Scalar(s1), &Element::Scalar(t1))? else {
                    unreachable!()
                };
                let Element::Scalar(b) = y.mul_unchecked(&Element::Scalar(s2), &Element::Scalar(t2))? else {
                    unreachable!()
                };
                Ok(Element::Pair(a, b))
            }
        }
    }

    /// `t⁻¹s = {x : tx = s}`.
    pub fn left_quotient(&self, t: &Element, s: &Element) -> Result<SubsetDesc, SemigroupError> {
        self.carrier.check(s)?;
        self.carrier.check(t)?;
        Ok(self.quotient_raw(Side::Left, s, t)?.normalize(&self.carrier))
    }

    /// `st⁻¹ = {x : xt = s}`.
    pub fn right_quotient(&self, s: &Element, t: &Element) -> Result<SubsetDesc, SemigroupError> {
        self.carrier.check(s)?;
        self.carrier.check(t)?;
        Ok(self.quotient_raw(Side::Right, s, t)?.normalize(&self.carrier))
    }

    /// The side's quotient for the pair `(s, t)`: `t⁻¹s` or `st⁻¹`.
    pub fn quotient(&self, side: Side, s: &Element, t: &Element) -> Result<SubsetDesc, SemigroupError> {
        match side {
            Side::Left => self.left_quotient(t, s),
            Side::Right => self.right_quotient(s, t),
        }
    }

    fn quotient_raw(&self, side: Side, s: &Element, t: &Element) -> Result<SubsetDesc, SemigroupError> {
        match &self.rule {
            Rule::Builtin(f) => {
                let (Element::Scalar(s), Element::Scalar(t)) = (*s, *t) else { unreachable!() };
                Ok(builtin_quotient(*f, &self.carrier, side, s, t))
            }
            Rule::Table(tab) => {
                let n = tab.order();
                let (Element::Scalar(s), Element::Scalar(t)) = (*s, *t) else { unreachable!() };
                let (s, t) = (s as usize, t as usize);
                let hits = (0..n).filter(|&x| match side {
                    Side::Left => tab.get(t, x) == s,
                    Side::Right => tab.get(x, t) == s,
                });
                Ok(SubsetDesc::finite(hits.map(|x| Element::Scalar(x as i64))))
            }
            Rule::Product(a, b) => {
                let (Element::Pair(s1, s2), Element::Pair(t1, t2)) = (*s, *t) else { unreachable!() };
                let q1 = a.quotient(side, &Element::Scalar(s1), &Element::Scalar(t1))?;
                let q2 = b.quotient(side, &Element::Scalar(s2), &Element::Scalar(t2))?;
                Ok(SubsetDesc::product(q1, q2))
            }
        }
    }

    /// `(FK⁻¹, K⁻¹F)` for finite nonempty `F` and `K`.
    pub fn set_quotients(&self, f: &SubsetDesc, k: &SubsetDesc) -> Result<(SubsetDesc, SubsetDesc), SemigroupError> {
        let (SubsetDesc::Finite(fs), SubsetDesc::Finite(ks)) = (f, k) else {
            return Err(SemigroupError::Unsupported("finite nonempty sets F and K".into()));
        };
        let mut right = SubsetDesc::Empty;
        let mut left = SubsetDesc::Empty;
        for s in fs {
            for t in ks {
                right = right.union(&self.right_quotient(s, t)?, &self.carrier);
                left = left.union(&self.left_quotient(t, s)?, &self.carrier);
            }
        }
        Ok((right, left))
    }

    /// Pairs `(s, t)` realizing every infinite quotient shape on a side, for
    /// closed-form rules. `None` when the rule has no closed-form catalogue.
    pub fn infinite_quotient_catalogue(&self, side: Side) -> Option<Vec<(Element, Element)>> {
        match &self.rule {
            Rule::Table(_) => Some(vec![]),
            Rule::Product(..) => None,
            Rule::Builtin(f) => {
                if self.carrier.is_finite() {
                    return Some(vec![]);
                }
                let b = self.carrier.base();
                let second = Element::Scalar(self.carrier.nth_scalar(1).expect("infinite carrier"));
                let pair = match (f, &self.carrier, side) {
                    (Family::Max, Carrier::Int, _) => Some((b, b)),
                    (Family::Min, _, _) => Some((b, b)),
                    (Family::LeftZero, _, Side::Left) => Some((second, second)),
                    (Family::RightZero, _, Side::Right) => Some((second, second)),
                    _ => None,
                };
                Some(pair.into_iter().collect())
            }
        }
    }

    fn builtin_class(&self, side: Side) -> WcClass {
        match self.infinite_quotient_catalogue(side) {
            Some(v) => match v.first() {
                Some(&(s, t)) => WcClass::HasInfiniteQuotient(s, t),
                None => WcClass::AlwaysFinite,
            },
            None => WcClass::Unknown,
        }
    }

    /// A pair of the factor semigroup whose quotient is nonempty on either side.
    fn nonempty_pair(&self) -> Result<(Element, Element), SemigroupError> {
        let b = self.carrier.base();
        Ok((self.mul_unchecked(&b, &b)?, b))
    }

    fn product_class(&self, side: Side) -> Result<WcClass, SemigroupError> {
        let (a, b) = self.factors().expect("product rule");
        let scalar_pair = |p: (Element, Element)| (p.0.scalar().unwrap_or(0), p.1.scalar().unwrap_or(0));
        Ok(match (a.wc_class(side), b.wc_class(side)) {
            (WcClass::HasInfiniteQuotient(s1, t1), _) => {
                let (s2, t2) = scalar_pair(b.nonempty_pair()?);
                let (s1, t1) = (s1.scalar().unwrap_or(0), t1.scalar().unwrap_or(0));
                WcClass::HasInfiniteQuotient(Element::Pair(s1, s2), Element::Pair(t1, t2))
            }
            (_, WcClass::HasInfiniteQuotient(s2, t2)) => {
                let (s1, t1) = scalar_pair(a.nonempty_pair()?);
                let (s2, t2) = (s2.scalar().unwrap_or(0), t2.scalar().unwrap_or(0));
                WcClass::HasInfiniteQuotient(Element::Pair(s1, s2), Element::Pair(t1, t2))
            }
            (WcClass::AlwaysFinite, WcClass::AlwaysFinite) => WcClass::AlwaysFinite,
            _ => WcClass::Unknown,
        })
    }

    /// Spot-checks the cancellativity metadata against computed quotients.
    fn validate_metadata(&self) -> Result<(), SemigroupError> {
        for side in [Side::Left, Side::Right] {
            match self.wc_class(side) {
                WcClass::HasInfiniteQuotient(s, t) => {
                    let q = self.quotient(side, s, t)?;
                    if q.is_finite(&self.carrier) != Some(false) {
                        return Err(SemigroupError::Inconsistent(format!(
                            "{} quotient of ({s},{t}) is {} but was classified infinite",
                            side.name(),
                            q.fmt_in(&self.carrier)
                        )));
                    }
                }
                WcClass::AlwaysFinite => {
                    for (s, t) in default_pairs(&self.carrier, 36) {
                        let q = self.quotient(side, &s, &t)?;
                        if q.is_finite(&self.carrier) != Some(true) {
                            return Err(SemigroupError::Inconsistent(format!(
                                "{} quotient of ({s},{t}) is {} but all were classified finite",
                                side.name(),
                                q.fmt_in(&self.carrier)
                            )));
                        }
                    }
                }
                WcClass::Unknown => {}
            }
        }
        Ok(())
    }

    /// Weak cancellativity on the requested side(s). `budget` bounds the pair
    /// scan used only when the metadata is inconclusive.
    pub fn is_weakly_cancellative(&self, side: SideSel, budget: usize) -> Verdict {
        let mut verdicts = Vec::new();
        for &sd in side.sides() {
            let v = match self.wc_class(sd) {
                WcClass::AlwaysFinite => Verdict::universal(format!("every {} quotient is finite", sd.name())),
                WcClass::HasInfiniteQuotient(s, t) => {
                    let q = self.quotient(sd, s, t).map(|q| q.fmt_in(&self.carrier)).unwrap_or_default();
                    Verdict::no(quotient_text(sd, s, t, &q))
                }
                WcClass::Unknown => self.scan_cancellativity(sd, budget.max(1)),
            };
            verdicts.push(v);
        }
        if let Some(no) = verdicts.iter().find(|v| v.is_no()) {
            return no.clone();
        }
        if verdicts.iter().all(|v| v.level == crate::verdict::Level::YesUniversal) {
            return Verdict::universal(match side {
                SideSel::Both => "every left and right quotient is finite".to_string(),
                _ => verdicts[0].certificate.clone().unwrap_or_default(),
            });
        }
        verdicts.into_iter().find(|v| !v.is_yes()).unwrap_or_else(|| Verdict::unknown("not decided"))
    }

    fn scan_cancellativity(&self, side: Side, budget: usize) -> Verdict {
        for (s, t) in default_pairs(&self.carrier, budget) {
            match self.quotient(side, &s, &t) {
                Ok(q) => match q.is_finite(&self.carrier) {
                    Some(false) => return Verdict::no(quotient_text(side, &s, &t, &q.fmt_in(&self.carrier))),
                    Some(true) => {}
                    None => return Verdict::unknown(format!("quotient of ({s},{t}) is not resolved")),
                },
                Err(e) => return Verdict::unknown(e.to_string()),
            }
        }
        Verdict::unknown(format!("no infinite quotient among {budget} pairs"))
    }
}

/// Text such as `(2,2)·(1,2)⁻¹ = {1}×N`.
pub fn quotient_text(side: Side, s: &Element, t: &Element, set: &str) -> String {
    let wrap = |e: &Element| match e {
        Element::Scalar(v) if *v < 0 => format!("({v})"),
        _ => e.to_string(),
    };
    let (s, t) = (wrap(s), wrap(t));
    match side {
        Side::Left => format!("{t}⁻¹·{s} = {set}"),
        Side::Right => format!("{s}·{t}⁻¹ = {set}"),
    }
}

fn builtin_quotient(f: Family, carrier: &Carrier, side: Side, s: i64, t: i64) -> SubsetDesc {
    let single = |v: i64| SubsetDesc::singleton(Element::Scalar(v));
    match f {
        // Commutative: both sides solve max(t, x) = s.
        Family::Max => {
            if s < t {
                SubsetDesc::Empty
            } else if s > t {
                single(s)
            } else {
                match carrier {
                    Carrier::Int => SubsetDesc::Head(t),
                    _ => SubsetDesc::finite((NAT_START..=t).map(Element::Scalar)),
                }
            }
        }
        Family::Min => {
            if s > t {
                SubsetDesc::Empty
            } else if s < t {
                single(s)
            } else {
                SubsetDesc::Tail(t)
            }
        }
        Family::Plus => match s.checked_sub(t) {
            Some(d) if carrier.contains(&Element::Scalar(d)) => single(d),
            _ => SubsetDesc::Empty,
        },
        // st = s: tx = s needs t = s; xt = s forces x = s.
        Family::LeftZero => match side {
            Side::Left if s == t => SubsetDesc::full(),
            Side::Left => SubsetDesc::Empty,
            Side::Right => single(s),
        },
        Family::RightZero => match side {
            Side::Left => single(s),
            Side::Right if s == t => SubsetDesc::full(),
            Side::Right => SubsetDesc::Empty,
        },
    }
}

/// The first `count` pairs `(s, t)` in diagonal order of the carrier
/// enumeration: `(e0,e0), (e0,e1), (e1,e0), (e0,e2), ...`.
pub fn default_pairs(carrier: &Carrier, count: usize) -> Vec<(Element, Element)> {
    let total = carrier.size().map(|n| n * n);
    let want = total.map_or(count, |t| t.min(count));
    let side = ((want as f64).sqrt() as usize + 2) * 2;
    let elems: Vec<Element> = carrier.elements().take(side.max(1)).collect();
    let mut out = Vec::with_capacity(want);
    'outer: for d in 0..(2 * elems.len()) {
        for i in 0..=d {
            let j = d - i;
            if i < elems.len() && j < elems.len() {
                out.push((elems[i], elems[j]));
                if out.len() == want {
                    break 'outer;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Level;
    use Element::Scalar as S;

    fn nat(f: Family) -> Semigroup {
        Semigroup::builtin(f, Carrier::Nat).unwrap()
    }

    fn example3() -> Semigroup {
        Semigroup::product(nat(Family::Plus), nat(Family::RightZero)).unwrap()
    }

    #[test]
    fn mul_examples() {
        assert_eq!(nat(Family::Max).mul(&S(2), &S(5)).unwrap(), S(5));
        assert_eq!(example3().mul(&Element::Pair(2, 2), &Element::Pair(1, 2)).unwrap(), Element::Pair(3, 2));
        let lz = nat(Family::LeftZero);
        for (s, t) in [(1, 9), (4, 4), (7, 2)] {
            assert_eq!(lz.mul(&S(s), &S(t)).unwrap(), S(s));
        }
        assert!(nat(Family::Max).mul(&S(0), &S(1)).is_err());
        let plus_z = Semigroup::builtin(Family::Plus, Carrier::Int).unwrap();
        assert_eq!(plus_z.mul(&S(i64::MAX), &S(1)), Err(SemigroupError::Overflow));
    }

    #[test]
    fn left_quotient_examples() {
        assert_eq!(nat(Family::Min).left_quotient(&S(1), &S(1)).unwrap(), SubsetDesc::full());
        let zmin = Semigroup::builtin(Family::Min, Carrier::Int).unwrap();
        assert_eq!(zmin.left_quotient(&S(5), &S(3)).unwrap(), SubsetDesc::singleton(S(3)));
        assert_eq!(zmin.left_quotient(&S(4), &S(4)).unwrap(), SubsetDesc::Tail(4));
        assert_eq!(nat(Family::LeftZero).left_quotient(&S(6), &S(6)).unwrap(), SubsetDesc::full());
    }

    #[test]
    fn right_quotient_examples() {
        assert_eq!(nat(Family::LeftZero).right_quotient(&S(3), &S(8)).unwrap(), SubsetDesc::singleton(S(3)));
        let q = example3().right_quotient(&Element::Pair(2, 2), &Element::Pair(1, 2)).unwrap();
        assert_eq!(q, SubsetDesc::product(SubsetDesc::singleton(S(1)), SubsetDesc::full()));
        assert_eq!(q.fmt_in(example3().carrier()), "{1}×N");
        assert_eq!(nat(Family::Max).right_quotient(&S(3), &S(5)).unwrap(), SubsetDesc::Empty);
    }

    #[test]
    fn max_nat_right_quotient_matches_brute_force() {
        let s = nat(Family::Max);
        let brute: Vec<i64> = (1..=10).filter(|&x| x.max(5) == 3).collect();
        assert!(brute.is_empty());
        assert_eq!(s.right_quotient(&S(3), &S(5)).unwrap(), SubsetDesc::Empty);
    }

    #[test]
    fn set_quotient_examples() {
        let lz = nat(Family::LeftZero);
        let f = SubsetDesc::singleton(S(4));
        let (r, l) = lz.set_quotients(&f, &f).unwrap();
        assert_eq!(r, SubsetDesc::singleton(S(4)));
        assert_eq!(l, SubsetDesc::full());

        let triv = Semigroup::from_table(Table::from_rows(vec![vec![0]]).unwrap()).unwrap();
        let e = SubsetDesc::singleton(S(0));
        assert_eq!(triv.set_quotients(&e, &e).unwrap(), (e.clone(), e.clone()));

        let (r, _) = nat(Family::Max)
            .set_quotients(&SubsetDesc::singleton(S(3)), &SubsetDesc::finite([S(1), S(2)]))
            .unwrap();
        let brute: Vec<i64> = (1..=10).filter(|&x| [1, 2].iter().any(|&k| x.max(k) == 3)).collect();
        assert_eq!(brute, vec![3]);
        assert_eq!(r, SubsetDesc::singleton(S(3)));

        assert!(lz.set_quotients(&SubsetDesc::Tail(3), &f).is_err());
    }

    #[test]
    fn weak_cancellativity_examples() {
        assert_eq!(nat(Family::Max).is_weakly_cancellative(SideSel::Both, 10).level, Level::YesUniversal);
        let v = nat(Family::Min).is_weakly_cancellative(SideSel::Both, 10);
        assert_eq!(v.level, Level::No);
        assert_eq!(v.witness.as_deref(), Some("1⁻¹·1 = N"));
        let v = example3().is_weakly_cancellative(SideSel::Both, 10);
        assert_eq!(v.level, Level::No);
        assert_eq!(v.witness.as_deref(), Some("(2,2)·(1,2)⁻¹ = {1}×N"));
        let t = Semigroup::from_table(Table::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap()).unwrap();
        assert_eq!(t.is_weakly_cancellative(SideSel::Both, 1).level, Level::YesUniversal);
    }

    #[test]
    fn left_zero_is_one_sided() {
        let lz = nat(Family::LeftZero);
        assert_eq!(lz.is_weakly_cancellative(SideSel::Left, 5).level, Level::No);
        assert_eq!(lz.is_weakly_cancellative(SideSel::Right, 5).level, Level::YesUniversal);
        let rz = nat(Family::RightZero);
        assert_eq!(rz.is_weakly_cancellative(SideSel::Left, 5).level, Level::YesUniversal);
        assert_eq!(rz.is_weakly_cancellative(SideSel::Right, 5).level, Level::No);
    }

    #[test]
    fn unsupported_builtins_are_rejected() {
        assert!(Semigroup::builtin(Family::Plus, Carrier::Finite(3)).is_err());
        assert!(Semigroup::builtin(Family::Min, Carrier::pair(Carrier::Nat, Carrier::Nat)).is_err());
        assert!(Semigroup::from_table(Table::from_rows(vec![vec![1, 0], vec![0, 0]]).unwrap()).is_err());
    }

    #[test]
    fn default_pairs_follow_diagonals() {
        let p = default_pairs(&Carrier::Nat, 6);
        assert_eq!(p, vec![(S(1), S(1)), (S(1), S(2)), (S(2), S(1)), (S(1), S(3)), (S(2), S(2)), (S(3), S(1))]);
        assert_eq!(default_pairs(&Carrier::Finite(2), 25).len(), 4);
        let ints: Vec<_> = Carrier::Int.elements().take(5).collect();
        assert_eq!(ints, vec![S(0), S(1), S(-1), S(2), S(-2)]);
    }
}
