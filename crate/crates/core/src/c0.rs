//! Membership of `1_F/ω` in `c₀(S)`: for every `ε > 0` only finitely many
//! `x ∈ F` satisfy `1/ω(x) ≥ ε`.

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::num::{fmt_rational, Value};
use crate::semigroup::{Carrier, Direction, Element, SubsetDesc};
use crate::verdict::{Level, Verdict};
use crate::weight::{Dom, Mono, TailClass, Var, Weight};

/// Exceptional sets larger than this are reported by size only.
pub const MAX_LISTED: u64 = 1 << 16;
const SEARCH_LIMIT: i64 = 1 << 61;
const SCAN_WINDOW: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum C0Error {
    #[error("subset {set} does not live in carrier {carrier}")]
    CarrierMismatch { set: String, carrier: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecayCert {
    FiniteSet { size: usize },
    TailDecay { directions: Vec<Direction> },
    ProductRule { branch: &'static str, factors: Vec<DecayVerdict> },
    ExceptionalSet { sizes: Vec<(BigRational, u64)> },
}

impl DecayCert {
    pub fn kind(&self) -> &'static str {
        match self {
            DecayCert::FiniteSet { .. } => "finite_set",
            DecayCert::TailDecay { .. } => "tail_decay",
            DecayCert::ProductRule { .. } => "product_rule",
            DecayCert::ExceptionalSet { .. } => "exceptional_set",
        }
    }
}

impl fmt::Display for DecayCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecayCert::FiniteSet { size } => write!(f, "finite set ({size} elements)"),
            DecayCert::TailDecay { directions } => {
                let ds: Vec<&str> = directions.iter().map(|d| d.key()).collect();
                write!(f, "1/ω → 0 along {}", ds.join(", "))
            }
            DecayCert::ProductRule { branch, factors } => {
                let parts: Vec<String> = factors.iter().map(|v| v.to_verdict().summary_detail()).collect();
                write!(f, "product rule [{branch}]: {}", parts.join("; "))
            }
            DecayCert::ExceptionalSet { sizes } => {
                let parts: Vec<String> =
                    sizes.iter().map(|(e, n)| format!("ε={} → {n}", fmt_rational(e))).collect();
                write!(f, "exceptional sets: {}", parts.join(", "))
            }
        }
    }
}

/// Evidence for a `No`: along `direction`, `1/ω ≥ eps0` on the infinite
/// family `family` contained in `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoWitness {
    pub direction: Direction,
    pub eps0: Value,
    pub family: String,
}

impl fmt::Display for NoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "along {}: 1/ω ≥ {} on {}", self.direction.key(), self.eps0, self.family)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayVerdict {
    pub level: Level,
    pub certificate: Option<DecayCert>,
    pub witness: Option<NoWitness>,
    pub reason: Option<String>,
}

impl DecayVerdict {
    fn yes(level: Level, cert: DecayCert) -> Self {
        DecayVerdict { level, certificate: Some(cert), witness: None, reason: None }
    }

    fn no(w: NoWitness) -> Self {
        DecayVerdict { level: Level::No, certificate: None, witness: Some(w), reason: None }
    }

    fn unknown(reason: impl Into<String>) -> Self {
        DecayVerdict { level: Level::Unknown, certificate: None, witness: None, reason: Some(reason.into()) }
    }

    pub fn is_yes(&self) -> bool {
        self.level.is_yes()
    }

    pub fn is_no(&self) -> bool {
        self.level == Level::No
    }

    pub fn to_verdict(&self) -> Verdict {
        match self.level {
            Level::No => Verdict::no(self.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()),
            Level::Unknown => Verdict::unknown(self.reason.clone().unwrap_or_default()),
            level => Verdict {
                level,
                certificate: self.certificate.as_ref().map(|c| c.to_string()),
                witness: None,
            },
        }
    }
}

trait Detail {
    fn summary_detail(&self) -> String;
}

impl Detail for Verdict {
    fn summary_detail(&self) -> String {
        match (&self.certificate, &self.witness) {
            (Some(c), _) => format!("{} [{c}]", self.level),
            (None, Some(w)) => format!("{} [{w}]", self.level),
            _ => self.level.to_string(),
        }
    }
}

fn check_carrier(f: &SubsetDesc, c: &Carrier) -> Result<(), C0Error> {
    let bad = || C0Error::CarrierMismatch { set: f.to_string(), carrier: c.name() };
    let ok = match f {
        SubsetDesc::Empty => true,
        SubsetDesc::Finite(v) | SubsetDesc::Cofinite(v) => v.iter().all(|e| c.contains(e)),
        SubsetDesc::Enumerated { prefix, .. } => prefix.iter().all(|e| c.contains(e)),
        SubsetDesc::Tail(_) | SubsetDesc::Head(_) => c.is_scalar(),
        SubsetDesc::Product(a, b) => match c {
            Carrier::Product(ca, cb) => {
                check_carrier(a, ca).map_err(|_| bad())?;
                check_carrier(b, cb).map_err(|_| bad())?;
                true
            }
            _ => false,
        },
        SubsetDesc::Union(parts) => {
            for p in parts {
                check_carrier(p, c).map_err(|_| bad())?;
            }
            true
        }
    };
    if ok {
        Ok(())
    } else {
        Err(bad())
    }
}

/// Some element of a nonempty subset.
fn some_element(f: &SubsetDesc, c: &Carrier) -> Option<Element> {
    match f {
        SubsetDesc::Empty => None,
        SubsetDesc::Finite(v) => v.first().copied(),
        SubsetDesc::Tail(a) => Some(Element::Scalar(match c {
            Carrier::Nat => (*a).max(c.base_scalar()),
            _ => *a,
        })),
        SubsetDesc::Head(a) => Some(Element::Scalar(*a)),
        SubsetDesc::Cofinite(excl) => c.elements().take(excl.len() + 1).find(|e| !excl.contains(e)),
        SubsetDesc::Union(parts) => parts.iter().find_map(|p| some_element(p, c)),
        SubsetDesc::Enumerated { prefix, .. } => prefix.first().copied(),
        SubsetDesc::Product(a, b) => {
            let Carrier::Product(ca, cb) = c else { return None };
            let x = some_element(a, ca)?.scalar()?;
            let y = some_element(b, cb)?.scalar()?;
            Some(Element::Pair(x, y))
        }
    }
}

/// `ε₀` for a non-decaying direction: half the smallest sampled `1/ω` on
/// the tail when `1/ω` stays bounded, `1` when it grows.
fn eps_along(w: &Weight, d: Direction, class: TailClass) -> Value {
    if class == TailClass::Unbounded {
        return Value::one();
    }
    let samples = w.tail_samples(d).unwrap_or_default();
    let tail = &samples[samples.len() / 2..];
    let min = tail
        .iter()
        .filter_map(|(_, v)| v.recip())
        .reduce(|a, b| a.min(b))
        .unwrap_or_else(Value::one);
    min.div(&Value::int(2)).expect("nonzero divisor")
}

fn decay(f: &SubsetDesc, w: &Weight) -> DecayVerdict {
    let c = w.carrier();
    if let Some(el) = f.finite_elements(c) {
        return DecayVerdict::yes(Level::YesUniversal, DecayCert::FiniteSet { size: el.len() });
    }
    if let SubsetDesc::Enumerated { .. } = f {
        let dirs = c.directions();
        return if dirs.iter().all(|d| w.class(*d) == TailClass::Zero) && c.is_scalar() {
            DecayVerdict::yes(Level::YesUniversal, DecayCert::TailDecay { directions: dirs })
        } else {
            DecayVerdict::unknown(format!("membership of {f} is open beyond its bound"))
        };
    }
    match c {
        Carrier::Product(ca, cb) => pair_decay(f, w, ca, cb),
        _ => directional_decay(f, w, &f.escape_directions(c).into_iter().collect::<Vec<_>>()),
    }
}

fn directional_decay(f: &SubsetDesc, w: &Weight, dirs: &[Direction]) -> DecayVerdict {
    let mut undecided = None;
    for d in dirs {
        match w.class(*d) {
            TailClass::Zero => {}
            class @ (TailClass::Bounded | TailClass::Unbounded) => {
                return DecayVerdict::no(NoWitness {
                    direction: *d,
                    eps0: eps_along(w, *d, class),
                    family: f.fmt_in(w.carrier()),
                });
            }
            TailClass::Unknown => undecided = Some(*d),
        }
    }
    match undecided {
        Some(d) => DecayVerdict::unknown(format!("tail of 1/ω along {} is not annotated", d.key())),
        None => DecayVerdict::yes(Level::YesUniversal, DecayCert::TailDecay { directions: dirs.to_vec() }),
    }
}

fn pair_decay(f: &SubsetDesc, w: &Weight, ca: &Carrier, cb: &Carrier) -> DecayVerdict {
    let c = w.carrier();
    let (a, b) = match f {
        SubsetDesc::Cofinite(_) => (SubsetDesc::full(), SubsetDesc::full()),
        SubsetDesc::Product(a, b) => ((**a).clone().normalize(ca), (**b).clone().normalize(cb)),
        SubsetDesc::Union(parts) => {
            let vs: Vec<DecayVerdict> = parts.iter().map(|p| decay(p, w)).collect();
            if let Some(no) = vs.iter().find(|v| v.is_no()) {
                return no.clone();
            }
            if let Some(u) = vs.iter().find(|v| v.level == Level::Unknown) {
                return u.clone();
            }
            let level = vs.iter().fold(Level::YesUniversal, |l, v| l.meet(v.level));
            return DecayVerdict::yes(level, DecayCert::ProductRule { branch: "union", factors: vs });
        }
        other => return DecayVerdict::unknown(format!("cannot analyse {} on {}", other, c.name())),
    };
    let Some((w1, w2)) = w.factors() else {
        if a == SubsetDesc::full() && b == SubsetDesc::full() {
            let axes: Vec<Direction> = c.directions().into_iter().filter(|d| *d != Direction::Diag).collect();
            let v = directional_decay(f, w, &axes);
            if v.is_no() {
                return v;
            }
        }
        return DecayVerdict::unknown("weight does not factor over the product");
    };
    let va = decay(&a, w1);
    let vb = decay(&b, w2);
    if va.is_yes() && vb.is_yes() {
        let level = va.level.meet(vb.level);
        return DecayVerdict::yes(level, DecayCert::ProductRule { branch: "both-factors-c0", factors: vec![va, vb] });
    }
    let lift = |v: &DecayVerdict, other: &SubsetDesc, other_c: &Carrier, other_w: &Weight, first: bool| {
        let wit = v.witness.as_ref()?;
        let p = some_element(other, other_c)?;
        let r = other_w.recip(&p).ok()?;
        let (direction, family) = if first {
            (wit.direction.lift_first(), format!("{}×{{{p}}}", wit.family))
        } else {
            (wit.direction.lift_second(), format!("{{{p}}}×{}", wit.family))
        };
        Some(DecayVerdict::no(NoWitness { direction, eps0: wit.eps0.mul(&r), family }))
    };
    if va.is_no() {
        if let Some(v) = lift(&va, &b, cb, w2, true) {
            return v;
        }
    }
    if vb.is_no() {
        if let Some(v) = lift(&vb, &a, ca, w1, false) {
            return v;
        }
    }
    DecayVerdict::unknown(format!(
        "factor verdicts undecided: {} / {}",
        va.reason.unwrap_or_else(|| va.level.to_string()),
        vb.reason.unwrap_or_else(|| vb.level.to_string())
    ))
}

/// Decides `1_F/ω ∈ c₀(S)`.
pub fn indicator_over_weight_in_c0(f: &SubsetDesc, w: &Weight) -> Result<DecayVerdict, C0Error> {
    check_carrier(f, w.carrier())?;
    Ok(decay(&f.clone().normalize(w.carrier()), w))
}

/// Like [`indicator_over_weight_in_c0`], replacing a tail-decay certificate
/// by exact exceptional-set sizes when all of them can be computed.
pub fn indicator_with_epsilons(
    f: &SubsetDesc,
    w: &Weight,
    epsilons: &[BigRational],
) -> Result<DecayVerdict, C0Error> {
    let mut v = indicator_over_weight_in_c0(f, w)?;
    if !matches!(v.certificate, Some(DecayCert::TailDecay { .. })) || epsilons.is_empty() {
        return Ok(v);
    }
    let mut sizes = Vec::new();
    for e in epsilons {
        match exceptional_set(f, w, e) {
            Exceptional::Finite(set) if set.universal => sizes.push((e.clone(), set.size)),
            _ => return Ok(v),
        }
    }
    v.certificate = Some(DecayCert::ExceptionalSet { sizes });
    Ok(v)
}

/// Decides `1/ω ∈ c₀(S)`.
pub fn reciprocal_in_c0(w: &Weight) -> DecayVerdict {
    decay(&SubsetDesc::full().normalize(w.carrier()), w)
}

/// A finite exceptional set `{x ∈ F : 1/ω(x) ≥ ε}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalSet {
    pub size: u64,
    /// The elements, when there are at most [`MAX_LISTED`] of them.
    pub set: Option<SubsetDesc>,
    pub text: String,
    /// `false` when the result rests on sampling.
    pub universal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Exceptional {
    Finite(ExceptionalSet),
    Infinite { witness: String, universal: bool },
    Unknown(String),
}

#[derive(Default)]
struct Pieces {
    ranges: Vec<(i64, i64)>,
    universal: bool,
}

impl Pieces {
    fn size(&self) -> u64 {
        self.ranges.iter().map(|(a, b)| (b - a) as u64 + 1).sum()
    }

    fn finish(mut self, carrier: &Carrier, excluded: &[Element]) -> ExceptionalSet {
        self.ranges.sort();
        let ex: Vec<i64> = excluded.iter().filter_map(|e| e.scalar()).collect();
        let hit = |x: i64| ex.contains(&x);
        let removed = ex.iter().filter(|x| self.ranges.iter().any(|(a, b)| a <= *x && *x <= b)).count() as u64;
        let size = self.size() - removed;
        if size <= MAX_LISTED {
            let elems: Vec<Element> = self
                .ranges
                .iter()
                .flat_map(|(a, b)| (*a..=*b).filter(|x| !hit(*x)).map(Element::Scalar))
                .collect();
            let set = SubsetDesc::finite(elems).normalize(carrier);
            return ExceptionalSet { size, text: set.fmt_in(carrier), set: Some(set), universal: self.universal };
        }
        let parts: Vec<String> = self.ranges.iter().map(|(a, b)| format!("{a}..{b}")).collect();
        let mut text = format!("{{{}}}", parts.join(","));
        if removed > 0 {
            text.push_str(&format!(" minus {removed} excluded points"));
        }
        ExceptionalSet { size, set: None, text, universal: self.universal }
    }
}

enum RayOutcome {
    Range(Option<(i64, i64)>, bool),
    Infinite(String, bool),
    Unknown(String),
}

fn in_set(w: &Weight, x: i64, bound: &Value) -> Option<bool> {
    let v = w.eval(&Element::Scalar(x)).ok()?;
    Some(v.cmp_tol(bound) != std::cmp::Ordering::Greater)
}

fn ray_point(start: i64, d: Direction, k: i64) -> Option<i64> {
    match d {
        Direction::Neg => start.checked_sub(k),
        _ => start.checked_add(k),
    }
}

fn ray_mono(w: &Weight, start: i64, d: Direction) -> Mono {
    let s = start as f64;
    match d {
        Direction::Neg => w.expr().mono(Var::N, &Dom::along_n(f64::NEG_INFINITY, s, 0)).flip(),
        _ => w.expr().mono(Var::N, &Dom::along_n(s, f64::INFINITY, 0)),
    }
}

/// `{x on the ray : ω(x) ≤ bound}`.
fn ray_exceptional(w: &Weight, start: i64, d: Direction, bound: &Value) -> RayOutcome {
    let inside = |k: i64| ray_point(start, d, k).and_then(|x| in_set(w, x, bound));
    let ray_text = || match d {
        Direction::Neg => format!("head({start})"),
        _ => format!("tail({start})"),
    };
    let Some(first) = inside(0) else { return RayOutcome::Unknown("weight not evaluable".into()) };
    match ray_mono(w, start, d) {
        Mono::Const => {
            if first {
                RayOutcome::Infinite(format!("1/ω is constant and ≥ ε on {}", ray_text()), true)
            } else {
                RayOutcome::Range(None, true)
            }
        }
        Mono::Up => {
            if !first {
                return RayOutcome::Range(None, true);
            }
            let mut lo = 0i64;
            let mut hi = 1i64;
            loop {
                match inside(hi) {
                    Some(true) => {
                        lo = hi;
                        if hi >= SEARCH_LIMIT {
                            return RayOutcome::Infinite(
                                format!("1/ω ≥ ε on {} up to offset {hi}", ray_text()),
                                false,
                            );
                        }
                        hi = hi.saturating_mul(2);
                    }
                    Some(false) => break,
                    None => return RayOutcome::Unknown("weight not evaluable".into()),
                }
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                match inside(mid) {
                    Some(true) => lo = mid,
                    Some(false) => hi = mid,
                    None => return RayOutcome::Unknown("weight not evaluable".into()),
                }
            }
            RayOutcome::Range(Some(span_pair(start, d, 0, lo)), true)
        }
        Mono::Down => {
            let mut k = 0i64;
            while k <= w.opts().tail_budget {
                if inside(k) == Some(true) {
                    let x = ray_point(start, d, k).unwrap_or(start);
                    return RayOutcome::Infinite(
                        format!("1/ω is non-decreasing and ≥ ε from {x} on along {}", d.key()),
                        true,
                    );
                }
                k = if k == 0 { 1 } else { k * 2 };
            }
            RayOutcome::Range(None, false)
        }
        Mono::Unknown => sampled_ray(w, start, d, bound),
    }
}

fn sampled_ray(w: &Weight, start: i64, d: Direction, bound: &Value) -> RayOutcome {
    let inside = |k: i64| ray_point(start, d, k).and_then(|x| in_set(w, x, bound)).unwrap_or(false);
    let window = SCAN_WINDOW.min(w.opts().tail_budget);
    let hits: Vec<i64> = (0..=window).filter(|k| inside(*k)).collect();
    let mut geo = Vec::new();
    let mut k = 1i64;
    while k <= w.opts().tail_budget {
        if k > window {
            geo.push((k, inside(k)));
        }
        k *= 2;
    }
    let late = &geo[geo.len() / 2..];
    if !late.is_empty() && late.iter().all(|(_, h)| *h) {
        return RayOutcome::Infinite(format!("sampled 1/ω ≥ ε out to offset {} along {}", late[late.len() - 1].0, d.key()), false);
    }
    if geo.iter().any(|(_, h)| *h) {
        return RayOutcome::Unknown(format!("1/ω crosses ε irregularly along {}", d.key()));
    }
    if w.class(d) != TailClass::Zero {
        return RayOutcome::Unknown(format!("tail of 1/ω along {} does not decay", d.key()));
    }
    match (hits.first().copied(), hits.last().copied()) {
        (None, _) => RayOutcome::Range(None, false),
        (Some(a), Some(b)) if (b - a + 1) as usize == hits.len() => {
            RayOutcome::Range(Some(span_pair(start, d, a, b)), false)
        }
        _ => RayOutcome::Unknown(format!("exceptional set along {} is not contiguous", d.key())),
    }
}

fn span_pair(start: i64, d: Direction, a: i64, b: i64) -> (i64, i64) {
    let x = ray_point(start, d, a).unwrap_or(start);
    let y = ray_point(start, d, b).unwrap_or(start);
    (x.min(y), x.max(y))
}

/// Decomposes a one-dimensional subset into rays plus isolated points; points
/// removed from a cofinite set land in `excluded`.
fn scalar_parts(f: &SubsetDesc, c: &Carrier, rays: &mut Vec<(i64, Direction)>, points: &mut Vec<i64>, excluded: &mut Vec<Element>) -> bool {
    match f {
        SubsetDesc::Empty => {}
        SubsetDesc::Finite(v) => points.extend(v.iter().filter_map(|e| e.scalar())),
        SubsetDesc::Tail(a) => rays.push((*a, Direction::Pos)),
        SubsetDesc::Head(a) => rays.push((*a, Direction::Neg)),
        SubsetDesc::Cofinite(v) => {
            excluded.extend(v.iter().copied());
            match c {
                Carrier::Nat => rays.push((c.base_scalar(), Direction::Pos)),
                _ => {
                    rays.push((0, Direction::Pos));
                    rays.push((-1, Direction::Neg));
                }
            }
        }
        SubsetDesc::Union(parts) => {
            for p in parts {
                if !scalar_parts(p, c, rays, points, excluded) {
                    return false;
                }
            }
        }
        _ => return false,
    }
    true
}

fn exceptional_by_value(f: &SubsetDesc, w: &Weight, bound: &Value, eps_text: &str) -> Exceptional {
    let c = w.carrier();
    if let Some(elems) = f.finite_elements(c) {
        let mut kept = Vec::new();
        for e in elems {
            match w.eval(&e) {
                Ok(v) if v.cmp_tol(bound) != std::cmp::Ordering::Greater => kept.push(e),
                Ok(_) => {}
                Err(err) => return Exceptional::Unknown(err.to_string()),
            }
        }
        let set = SubsetDesc::finite(kept.clone()).normalize(c);
        return Exceptional::Finite(ExceptionalSet {
            size: kept.len() as u64,
            text: set.fmt_in(c),
            set: Some(set),
            universal: true,
        });
    }
    if let Carrier::Product(ca, cb) = c {
        return pair_exceptional(f, w, ca, cb, bound, eps_text);
    }
    let (mut rays, mut points, mut excluded) = (Vec::new(), Vec::new(), Vec::new());
    if !scalar_parts(f, c, &mut rays, &mut points, &mut excluded) {
        return Exceptional::Unknown(format!("membership of {f} is open beyond its bound"));
    }
    let mut pieces = Pieces { ranges: Vec::new(), universal: true };
    for p in points {
        match in_set(w, p, bound) {
            Some(true) => pieces.ranges.push((p, p)),
            Some(false) => {}
            None => return Exceptional::Unknown("weight not evaluable".into()),
        }
    }
    for (start, d) in rays {
        match ray_exceptional(w, start, d, bound) {
            RayOutcome::Range(r, universal) => {
                pieces.ranges.extend(r);
                pieces.universal &= universal;
            }
            RayOutcome::Infinite(witness, universal) => {
                return Exceptional::Infinite { witness: format!("ε={eps_text}: {witness}"), universal }
            }
            RayOutcome::Unknown(r) => return Exceptional::Unknown(r),
        }
    }
    pieces.ranges.sort();
    pieces.ranges.dedup();
    Exceptional::Finite(pieces.finish(c, &excluded))
}

/// Greatest lower bound of `ω` over a one-dimensional subset, when the shape
/// of `ω` makes it computable.
fn inf_weight(w: &Weight, f: &SubsetDesc) -> Option<Value> {
    let c = w.carrier();
    if let Some(el) = f.finite_elements(c) {
        return el.iter().map(|e| w.eval(e).ok()).collect::<Option<Vec<_>>>()?.into_iter().reduce(|a, b| a.min(b));
    }
    let (mut rays, mut points, mut excluded) = (Vec::new(), Vec::new(), Vec::new());
    if !scalar_parts(f, c, &mut rays, &mut points, &mut excluded) {
        return None;
    }
    let mut best: Option<Value> = None;
    let mut take = |v: Value| {
        best = Some(match best.take() {
            None => v,
            Some(b) => b.min(v),
        })
    };
    for p in points {
        take(w.eval(&Element::Scalar(p)).ok()?);
    }
    for (start, d) in rays {
        match ray_mono(w, start, d) {
            Mono::Up | Mono::Const => take(w.eval(&Element::Scalar(start)).ok()?),
            _ => return None,
        }
    }
    best
}

fn pair_exceptional(
    f: &SubsetDesc,
    w: &Weight,
    ca: &Carrier,
    cb: &Carrier,
    bound: &Value,
    eps_text: &str,
) -> Exceptional {
    let c = w.carrier();
    let v = decay(f, w);
    if let Some(wit) = &v.witness {
        return Exceptional::Infinite { witness: wit.to_string(), universal: true };
    }
    let (a, b) = match f {
        SubsetDesc::Cofinite(ex) if ex.is_empty() => (SubsetDesc::full(), SubsetDesc::full()),
        SubsetDesc::Product(a, b) => ((**a).clone().normalize(ca), (**b).clone().normalize(cb)),
        SubsetDesc::Union(parts) => {
            let mut elems = Vec::new();
            let mut universal = true;
            for p in parts {
                match exceptional_by_value(p, w, bound, eps_text) {
                    Exceptional::Finite(ExceptionalSet { set: Some(s), universal: u, .. }) => {
                        elems.extend(s.finite_elements(c).unwrap_or_default());
                        universal &= u;
                    }
                    Exceptional::Finite(_) => return Exceptional::Unknown("exceptional set too large to list".into()),
                    other => return other,
                }
            }
            let set = SubsetDesc::finite(elems).normalize(c);
            let size = set.finite_elements(c).map_or(0, |v| v.len()) as u64;
            return Exceptional::Finite(ExceptionalSet { size, text: set.fmt_in(c), set: Some(set), universal });
        }
        _ => return Exceptional::Unknown(format!("cannot factor {}", f.fmt_in(c))),
    };
    let Some((w1, w2)) = w.factors() else {
        return Exceptional::Unknown("weight does not factor over the product".into());
    };
    let (Some(i1), Some(i2)) = (inf_weight(w1, &a), inf_weight(w2, &b)) else {
        return Exceptional::Unknown("infimum of a factor weight is not computable".into());
    };
    let (Some(b1), Some(b2)) = (bound.div(&i2), bound.div(&i1)) else {
        return Exceptional::Unknown("degenerate factor infimum".into());
    };
    let xa = exceptional_by_value(&a, w1, &b1, eps_text);
    let xb = exceptional_by_value(&b, w2, &b2, eps_text);
    let (Exceptional::Finite(xa), Exceptional::Finite(xb)) = (xa, xb) else {
        return Exceptional::Unknown("factor exceptional sets are not finite".into());
    };
    let (Some(sa), Some(sb)) = (&xa.set, &xb.set) else {
        return Exceptional::Unknown("factor exceptional sets too large to list".into());
    };
    if xa.size.saturating_mul(xb.size) > MAX_LISTED {
        return Exceptional::Unknown("candidate set too large to list".into());
    }
    let mut kept = Vec::new();
    for x in sa.finite_elements(ca).unwrap_or_default() {
        for y in sb.finite_elements(cb).unwrap_or_default() {
            let (Some(x), Some(y)) = (x.scalar(), y.scalar()) else { continue };
            let e = Element::Pair(x, y);
            match w.eval(&e) {
                Ok(v) if v.cmp_tol(bound) != std::cmp::Ordering::Greater => kept.push(e),
                Ok(_) => {}
                Err(err) => return Exceptional::Unknown(err.to_string()),
            }
        }
    }
    let set = SubsetDesc::finite(kept.clone()).normalize(c);
    Exceptional::Finite(ExceptionalSet {
        size: kept.len() as u64,
        text: set.fmt_in(c),
        set: Some(set),
        universal: xa.universal && xb.universal,
    })
}

/// `{x ∈ F : 1/ω(x) ≥ ε}`.
pub fn exceptional_set(f: &SubsetDesc, w: &Weight, eps: &BigRational) -> Exceptional {
    if check_carrier(f, w.carrier()).is_err() {
        return Exceptional::Unknown(format!("{f} does not live in {}", w.carrier().name()));
    }
    let Some(bound) = Value::Exact(eps.clone()).recip().filter(|b| b.is_positive()) else {
        return Exceptional::Unknown("ε must be positive".into());
    };
    let bound = if w.opts().exact { bound } else { bound.approx() };
    exceptional_by_value(&f.clone().normalize(w.carrier()), w, &bound, &fmt_rational(eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio;
    use crate::weight::TailClass::*;
    use Element::Scalar as S;

    fn nat(src: &str, c: TailClass) -> Weight {
        Weight::build(src, Carrier::Nat, &[(Direction::Pos, c)]).unwrap()
    }

    fn example3() -> Weight {
        let c = Carrier::pair(Carrier::Nat, Carrier::Nat);
        Weight::build(
            "exp(-m)*(1+n)",
            c,
            &[(Direction::MPos, Unbounded), (Direction::NPos, Zero)],
        )
        .unwrap()
    }

    #[test]
    fn tail_of_linear_weight_decays() {
        let v = indicator_over_weight_in_c0(&SubsetDesc::Tail(1), &nat("1+n", Zero)).unwrap();
        assert_eq!(v.level, Level::YesUniversal);
        assert_eq!(v.certificate.unwrap().kind(), "tail_decay");
    }

    #[test]
    fn constant_weight_never_decays() {
        let v = indicator_over_weight_in_c0(&SubsetDesc::full(), &Weight::one(Carrier::Nat)).unwrap();
        assert_eq!(v.level, Level::No);
        let w = v.witness.unwrap();
        assert_eq!(w.eps0, Value::Exact(ratio(1, 2)));
        assert_eq!(w.to_string(), "along pos: 1/ω ≥ 1/2 on N");
        assert!(reciprocal_in_c0(&Weight::one(Carrier::Nat)).is_no());
    }

    #[test]
    fn finite_sets_always_decay() {
        let f = SubsetDesc::finite([S(3), S(7)]);
        for w in [Weight::one(Carrier::Nat), nat("1+n", Zero)] {
            let v = indicator_over_weight_in_c0(&f, &w).unwrap();
            assert_eq!(v.level, Level::YesUniversal);
            assert_eq!(v.certificate, Some(DecayCert::FiniteSet { size: 2 }));
        }
    }

    #[test]
    fn product_rule_on_example_three() {
        let w = example3();
        let f = SubsetDesc::product(SubsetDesc::singleton(S(1)), SubsetDesc::full());
        let v = indicator_over_weight_in_c0(&f, &w).unwrap();
        assert_eq!(v.level, Level::YesUniversal);
        assert_eq!(v.certificate.as_ref().unwrap().kind(), "product_rule");
        let r = reciprocal_in_c0(&w);
        assert!(r.is_no());
        assert_eq!(r.witness.unwrap().direction, Direction::MPos);
    }

    #[test]
    fn finite_times_bounded_is_not_c0() {
        let c = Carrier::pair(Carrier::Nat, Carrier::Nat);
        let w = Weight::build("exp(-m)*(2+exp(-n))", c, &[(Direction::MPos, Unbounded), (Direction::NPos, Bounded)]);
        let w = w.unwrap();
        let f = SubsetDesc::product(SubsetDesc::singleton(S(1)), SubsetDesc::full());
        assert!(indicator_over_weight_in_c0(&f, &w).unwrap().is_no());
    }

    #[test]
    fn carrier_mismatch_is_an_error() {
        let f = SubsetDesc::finite([Element::Pair(1, 1)]);
        assert!(indicator_over_weight_in_c0(&f, &Weight::one(Carrier::Nat)).is_err());
    }

    #[test]
    fn exceptional_sets() {
        let w = nat("1+n", Zero);
        let Exceptional::Finite(x) = exceptional_set(&SubsetDesc::full(), &w, &ratio(1, 1000)) else { panic!() };
        assert_eq!((x.size, x.text.as_str(), x.universal), (999, "{1..999}", true));
        let f = SubsetDesc::finite([S(3), S(2000)]);
        let Exceptional::Finite(x) = exceptional_set(&f, &w, &ratio(1, 1000)) else { panic!() };
        assert_eq!(x.text, "{3}");
        assert!(matches!(
            exceptional_set(&SubsetDesc::full(), &Weight::one(Carrier::Nat), &ratio(1, 2)),
            Exceptional::Infinite { universal: true, .. }
        ));
        let v = indicator_with_epsilons(&SubsetDesc::full(), &w, &[ratio(1, 10), ratio(1, 1000)]).unwrap();
        assert_eq!(v.certificate.unwrap().to_string(), "exceptional sets: ε=1/10 → 9, ε=1/1000 → 999");
    }

    #[test]
    fn exceptional_set_on_product() {
        let w = example3();
        let f = SubsetDesc::product(SubsetDesc::singleton(S(1)), SubsetDesc::full());
        let Exceptional::Finite(x) = exceptional_set(&f, &w, &ratio(1, 10)) else { panic!() };
        assert!(x.universal);
        let bound = (10.0f64 * std::f64::consts::E).floor() as u64 - 1;
        assert_eq!(x.size, bound);
    }

    #[test]
    fn piecewise_weight_on_integers() {
        let w = Weight::build(
            "if n>=1 then 1+n else 1",
            Carrier::Int,
            &[(Direction::Pos, Zero), (Direction::Neg, Bounded)],
        )
        .unwrap();
        assert!(reciprocal_in_c0(&w).is_no());
        assert!(indicator_over_weight_in_c0(&SubsetDesc::Tail(-4), &w).unwrap().is_yes());
        assert!(indicator_over_weight_in_c0(&SubsetDesc::Head(3), &w).unwrap().is_no());
    }
}
