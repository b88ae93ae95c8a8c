//! One-sided and two-sided duality of `ℓ¹(S,ω)` with predual `c₀(S)`.
//!
//! The left side is decided by the sets `st⁻¹ = {x : xt = s}` and the right
//! side by `t⁻¹s = {x : tx = s}`: the algebra is a left (right) dual Banach
//! algebra exactly when `1_Q/ω ∈ c₀(S)` for every such quotient `Q`. Besides
//! this per-pair criterion several shortcut routes are run, and a conclusive
//! yes from one route next to a conclusive no from another is reported as an
//! internal error.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::c0::{indicator_with_epsilons, reciprocal_in_c0, DecayVerdict};
use crate::config::CheckSpec;
use crate::semigroup::{
    default_pairs, quotient_text, Carrier, Element, Family, Semigroup, SemigroupError, Side, SideSel, SubsetDesc,
};
use crate::verdict::{Level, Verdict};
use crate::weight::{check_submultiplicative, locally_equivalent, sided_sup_ratio, SupValue, Weight, WeightError};

/// Finite carriers with at most this many pairs are checked exhaustively.
const EXHAUSTIVE_PAIRS: usize = 4096;
const SUP_SAMPLES: u32 = 16;
const DECAY_MARGIN: f64 = 1.3862943611198906;

/// The reading of one-sided attribution used by every report.
pub const SIDE_NOTE: &str = "left uses st⁻¹ = {x : xt = s} and right uses t⁻¹s = {x : tx = s}; \
under the alternative reading of the one-sided statements the left and right columns swap, \
while the two-sided verdict is unchanged";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DualError {
    #[error("routes disagree on the {side} side: {yes} says yes but {no} says no ({witness})")]
    Contradiction { side: &'static str, yes: &'static str, no: &'static str, witness: String },
    #[error("not a weight on this semigroup: {0}")]
    InvalidWeight(String),
    #[error("weight lives on {weight} but the semigroup on {semigroup}")]
    CarrierMismatch { weight: String, semigroup: String },
    #[error("pair ({0},{1}) is outside the carrier")]
    PairOutsideCarrier(Element, Element),
    #[error("transfer between locally equivalent weights failed: {0}")]
    TransferViolation(String),
    #[error("equivalent conditions disagree: {0}")]
    Disagreement(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// Identifiers of the decision routes, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RouteId {
    Criterion,
    WeakCancellativity,
    BoundedConverse,
    Reciprocal,
    SupRatios,
    CofiniteConverse,
    ProductRule,
    LocalEquivTransfer,
}

impl RouteId {
    pub fn as_str(self) -> &'static str {
        match self {
            RouteId::Criterion => "criterion",
            RouteId::WeakCancellativity => "weak_cancellativity",
            RouteId::BoundedConverse => "bounded_converse",
            RouteId::Reciprocal => "reciprocal",
            RouteId::SupRatios => "sup_ratios",
            RouteId::CofiniteConverse => "cofinite_converse",
            RouteId::ProductRule => "product_rule",
            RouteId::LocalEquivTransfer => "local_equiv_transfer",
        }
    }
}

/// What one route concluded about one side (or both). `Unknown` means the
/// route did not apply.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteOutcome {
    pub id: RouteId,
    pub side: SideSel,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairEvidence {
    pub s: Element,
    pub t: Element,
    pub side: Side,
    pub quotient: SubsetDesc,
    /// Canonical text, e.g. `1·1⁻¹ = N`.
    pub text: String,
    pub decay: DecayVerdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SideCheck {
    pub verdict: Verdict,
    pub evidence: Vec<PairEvidence>,
    pub witness_pair: Option<(Element, Element)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualReport {
    pub semigroup: String,
    pub weight: String,
    pub left: Verdict,
    pub right: Verdict,
    pub both: Verdict,
    pub routes: Vec<RouteOutcome>,
    pub pairs: Vec<PairEvidence>,
    pub weak_cancellativity: Verdict,
    pub reciprocal: DecayVerdict,
    pub weight_check: Verdict,
    pub notes: Vec<String>,
}

impl DualReport {
    pub fn side(&self, side: Side) -> &Verdict {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

/// The quotient side that decides a duality side.
pub fn quotient_side(dual: Side) -> Side {
    match dual {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    }
}

fn check_pairs(s: &Semigroup, pairs: &[(Element, Element)]) -> Result<(), DualError> {
    for (a, b) in pairs {
        if !s.carrier().contains(a) || !s.carrier().contains(b) {
            return Err(DualError::PairOutsideCarrier(*a, *b));
        }
    }
    Ok(())
}

/// Pairs examined on one side and whether they settle every quotient shape.
fn side_pairs(s: &Semigroup, side: Side, spec: &CheckSpec) -> (Vec<(Element, Element)>, bool) {
    let carrier = s.carrier();
    let mut set: BTreeSet<(Element, Element)> = BTreeSet::new();
    let mut complete = false;
    match (&spec.pairs, carrier.size()) {
        (Some(p), _) => set.extend(p.iter().copied()),
        (None, Some(n)) if n * n <= EXHAUSTIVE_PAIRS => {
            let elems: Vec<Element> = carrier.elements().collect();
            for a in &elems {
                for b in &elems {
                    set.insert((*a, *b));
                }
            }
            complete = true;
        }
        (None, _) => set.extend(default_pairs(carrier, spec.budget)),
    }
    if let Some(cat) = s.infinite_quotient_catalogue(quotient_side(side)) {
        set.extend(cat);
        complete = true;
    }
    (set.into_iter().collect(), complete)
}

/// Decides one side from the per-pair criterion alone.
pub fn check_side(s: &Semigroup, w: &Weight, side: Side, spec: &CheckSpec) -> Result<SideCheck, DualError> {
    if s.carrier() != w.carrier() {
        return Err(DualError::CarrierMismatch { weight: w.carrier().name(), semigroup: s.carrier().name() });
    }
    if let Some(p) = &spec.pairs {
        check_pairs(s, p)?;
    }
    let (pairs, complete) = side_pairs(s, side, spec);
    let qside = quotient_side(side);
    let mut evidence = Vec::with_capacity(pairs.len());
    for (a, b) in &pairs {
        let q = s.quotient(qside, a, b)?;
        let decay = indicator_with_epsilons(&q, w, &spec.epsilons).expect("quotients live in the carrier");
        let text = quotient_text(qside, a, b, &q.fmt_in(s.carrier()));
        evidence.push(PairEvidence { s: *a, t: *b, side, quotient: q, text, decay });
    }
    let mut level = Level::YesUniversal;
    let mut unknown = None;
    for ev in &evidence {
        match ev.decay.level {
            Level::No => {
                let wit = ev.decay.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
                let verdict = Verdict::no(format!("pair ({},{}): {}; {wit}", ev.s, ev.t, ev.text));
                return Ok(SideCheck { verdict, witness_pair: Some((ev.s, ev.t)), evidence });
            }
            Level::Unknown => {
                if unknown.is_none() {
                    unknown = Some(format!(
                        "pair ({},{}): {}; {}",
                        ev.s,
                        ev.t,
                        ev.text,
                        ev.decay.reason.clone().unwrap_or_default()
                    ));
                }
                level = Level::Unknown;
            }
            l => level = level.meet(l),
        }
    }
    let n = evidence.len();
    let verdict = match (level, unknown) {
        (Level::Unknown, Some(r)) | (_, Some(r)) => Verdict::unknown(r),
        (Level::YesUniversal, None) if complete => {
            Verdict::universal(format!("1_Q/ω ∈ c₀ for all {n} pairs, covering every infinite quotient shape"))
        }
        (Level::YesUniversal | Level::YesSampled, None) => {
            Verdict::sampled(format!("1_Q/ω ∈ c₀ for all {n} examined pairs"))
        }
        _ => Verdict::unknown("no pairs examined"),
    };
    Ok(SideCheck { verdict, evidence, witness_pair: None })
}

fn route(id: RouteId, side: SideSel, verdict: Verdict, witnesses: Vec<String>) -> RouteOutcome {
    RouteOutcome { id, side, verdict, witnesses }
}

fn silent(id: RouteId, side: SideSel, why: impl Into<String>) -> RouteOutcome {
    route(id, side, Verdict::unknown(why), Vec::new())
}

fn sel(side: Side) -> SideSel {
    match side {
        Side::Left => SideSel::Left,
        Side::Right => SideSel::Right,
    }
}

fn weak_cancellativity_routes(s: &Semigroup, w: &Weight, budget: usize) -> Vec<RouteOutcome> {
    let mut out = Vec::new();
    let bounded = w.is_bounded() == Some(true);
    for side in [Side::Left, Side::Right] {
        let wc = s.is_weakly_cancellative(sel(quotient_side(side)), budget);
        let wit = wc.witness.clone().into_iter().collect::<Vec<_>>();
        out.push(match wc.level {
            Level::YesUniversal | Level::YesSampled => route(
                RouteId::WeakCancellativity,
                sel(side),
                Verdict { level: wc.level, certificate: wc.certificate.clone(), witness: None },
                Vec::new(),
            ),
            Level::No => silent(RouteId::WeakCancellativity, sel(side), "not weakly cancellative on this side")
                .with_witnesses(wit.clone()),
            Level::Unknown => silent(RouteId::WeakCancellativity, sel(side), "weak cancellativity undecided"),
        });
        out.push(match (wc.level, bounded) {
            (Level::No, true) => route(
                RouteId::BoundedConverse,
                sel(side),
                Verdict::no(format!("ω is bounded and {}", wc.witness.clone().unwrap_or_default())),
                wit,
            ),
            (_, false) => silent(RouteId::BoundedConverse, sel(side), "ω is not known to be bounded"),
            _ => silent(RouteId::BoundedConverse, sel(side), "no infinite quotient on this side"),
        });
    }
    out
}

impl RouteOutcome {
    fn with_witnesses(mut self, w: Vec<String>) -> Self {
        self.witnesses = w;
        self
    }
}

fn reciprocal_route(rec: &DecayVerdict) -> RouteOutcome {
    if rec.is_yes() {
        let v = rec.to_verdict();
        route(
            RouteId::Reciprocal,
            SideSel::Both,
            Verdict { level: rec.level, certificate: Some(format!("1/ω ∈ c₀: {}", v.certificate.unwrap_or_default())), witness: None },
            Vec::new(),
        )
    } else {
        let why = match rec.level {
            Level::No => "1/ω ∉ c₀",
            _ => "1/ω ∈ c₀ undecided",
        };
        silent(RouteId::Reciprocal, SideSel::Both, why).with_witnesses(rec.witness.iter().map(|w| w.to_string()).collect())
    }
}

/// Samples `w_l(t) = sup_s ω(st)/ω(t)` and `w_r(t) = sup_s ω(ts)/ω(t)` along
/// every escape direction, looking for visible decay to zero.
fn sup_ratio_route(s: &Semigroup, w: &Weight, budget: usize) -> RouteOutcome {
    let carrier = s.carrier();
    if carrier.is_finite() {
        return route(
            RouteId::SupRatios,
            SideSel::Both,
            Verdict::universal("finite carrier: w_l and w_r have finite support"),
            Vec::new(),
        );
    }
    let mut notes = Vec::new();
    for side in [Side::Left, Side::Right] {
        let name = if side == Side::Left { "w_l" } else { "w_r" };
        for d in carrier.directions() {
            let mut logs = Vec::new();
            let mut last = None;
            for k in 0..=SUP_SAMPLES {
                let Some(t) = carrier.point_along(d, 1i64 << k) else { continue };
                match sided_sup_ratio(w, s, side, &t, budget) {
                    Ok(SupValue::Exact(v)) => {
                        logs.push(v.to_log().ln);
                        last = Some((t, v));
                    }
                    Ok(other) => {
                        return silent(RouteId::SupRatios, SideSel::Both, format!("{name}({t}) = {other} is not exact"));
                    }
                    Err(e) => return silent(RouteId::SupRatios, SideSel::Both, e.to_string()),
                }
            }
            let tail = &logs[logs.len() / 2..];
            let decays = tail.len() >= 2
                && tail.windows(2).all(|p| p[1] < p[0])
                && tail[tail.len() - 1] < tail[0] - DECAY_MARGIN;
            if !decays {
                return silent(RouteId::SupRatios, SideSel::Both, format!("{name} does not visibly vanish along {}", d.key()));
            }
            if let Some((t, v)) = last {
                notes.push(format!("{name}({t}) = {v}"));
            }
        }
    }
    route(
        RouteId::SupRatios,
        SideSel::Both,
        Verdict::sampled(format!("w_l and w_r decay in sampling ({})", notes.join(", "))),
        Vec::new(),
    )
}

fn cofinite_routes(sides: &[(Side, &SideCheck)], rec: &DecayVerdict, carrier: &Carrier) -> Vec<RouteOutcome> {
    let mut out = Vec::new();
    for (side, check) in sides {
        let hit = check.evidence.iter().find(|e| e.quotient.complement_is_finite(carrier));
        out.push(match (hit, rec.is_no()) {
            (Some(ev), true) => route(
                RouteId::CofiniteConverse,
                sel(*side),
                Verdict::no(format!(
                    "pair ({},{}): {} has finite complement and 1/ω ∉ c₀ ({})",
                    ev.s,
                    ev.t,
                    ev.text,
                    rec.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()
                )),
                vec![ev.text.clone()],
            ),
            (Some(_), false) => silent(RouteId::CofiniteConverse, sel(*side), "1/ω ∉ c₀ not established"),
            (None, _) => silent(RouteId::CofiniteConverse, sel(*side), "no examined quotient has finite complement"),
        });
    }
    out
}

fn nonempty_pair(s: &Semigroup, side: Side) -> Option<(Element, Element)> {
    let qside = quotient_side(side);
    default_pairs(s.carrier(), 64)
        .into_iter()
        .find(|(a, b)| s.quotient(qside, a, b).map(|q| !q.is_empty()).unwrap_or(false))
}

fn product_routes(s: &Semigroup, w: &Weight, spec: &CheckSpec) -> Result<Vec<RouteOutcome>, DualError> {
    let (Some((s1, s2)), Some((w1, w2))) = (s.factors(), w.factors()) else {
        let why = if s.factors().is_none() { "not a product semigroup" } else { "weight does not factor" };
        return Ok(vec![silent(RouteId::ProductRule, SideSel::Both, why)]);
    };
    let fspec = CheckSpec { pairs: None, ..spec.clone() };
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        let c1 = check_side(s1, w1, side, &fspec)?;
        let c2 = check_side(s2, w2, side, &fspec)?;
        let (v1, v2) = (&c1.verdict, &c2.verdict);
        let factor_text = format!("first factor: {}; second factor: {}", v1.summary(), v2.summary());
        let outcome = if v1.is_yes() && v2.is_yes() {
            let level = v1.level.meet(v2.level);
            route(
                RouteId::ProductRule,
                sel(side),
                Verdict { level, certificate: Some(format!("1_(Q₁×Q₂)/ω = (1_Q₁/ω₁)(1_Q₂/ω₂); {factor_text}")), witness: None },
                Vec::new(),
            )
        } else {
            let lifted = match (&c1.witness_pair, &c2.witness_pair) {
                (Some((a1, b1)), _) => nonempty_pair(s2, side).map(|(a2, b2)| (*a1, *b1, a2, b2, &c1)),
                (None, Some((a2, b2))) => nonempty_pair(s1, side).map(|(a1, b1)| (a1, b1, *a2, *b2, &c2)),
                _ => None,
            };
            match lifted {
                Some((a1, b1, a2, b2, bad)) => {
                    let (a, b) = (pair_of(a1, a2), pair_of(b1, b2));
                    route(
                        RouteId::ProductRule,
                        sel(side),
                        Verdict::no(format!(
                            "pair ({a},{b}): a factor quotient fails ({}) and the other is nonempty",
                            bad.verdict.witness.clone().unwrap_or_default()
                        )),
                        Vec::new(),
                    )
                }
                None => silent(RouteId::ProductRule, sel(side), factor_text),
            }
        };
        out.push(outcome);
    }
    Ok(out)
}

fn pair_of(a: Element, b: Element) -> Element {
    Element::Pair(a.scalar().unwrap_or(0), b.scalar().unwrap_or(0))
}

fn applies(r: &RouteOutcome, side: Side) -> bool {
    r.side == SideSel::Both || r.side == sel(side)
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

/// Joins every route's conclusion for a side, failing on contradictions.
fn aggregate(routes: &[RouteOutcome], side: Side) -> Result<Verdict, DualError> {
    let relevant: Vec<&RouteOutcome> = routes.iter().filter(|r| applies(r, side)).collect();
    let no = relevant.iter().find(|r| r.verdict.is_no());
    let yes = relevant.iter().filter(|r| r.verdict.is_yes()).max_by(|a, b| {
        a.verdict.level.cmp(&b.verdict.level).then(b.id.cmp(&a.id))
    });
    match (yes, no) {
        (Some(y), Some(n)) => Err(DualError::Contradiction {
            side: side_name(side),
            yes: y.id.as_str(),
            no: n.id.as_str(),
            witness: n.verdict.witness.clone().unwrap_or_default(),
        }),
        (_, Some(n)) => Ok(Verdict::no(n.verdict.witness.clone().unwrap_or_default())),
        (Some(y), None) => Ok(Verdict {
            level: y.verdict.level,
            certificate: Some(format!("{}: {}", y.id.as_str(), y.verdict.certificate.clone().unwrap_or_default())),
            witness: None,
        }),
        (None, None) => {
            let reason = relevant
                .iter()
                .find(|r| r.id == RouteId::Criterion)
                .and_then(|r| r.verdict.witness.clone())
                .unwrap_or_else(|| "no route was conclusive".into());
            Ok(Verdict::unknown(reason))
        }
    }
}

fn conjunction(left: &Verdict, right: &Verdict) -> Verdict {
    if left.is_no() {
        return Verdict::no(format!("left: {}", left.witness.clone().unwrap_or_default()));
    }
    if right.is_no() {
        return Verdict::no(format!("right: {}", right.witness.clone().unwrap_or_default()));
    }
    if left.is_yes() && right.is_yes() {
        let level = left.level.meet(right.level);
        let cert = if left.certificate == right.certificate {
            left.certificate.clone().unwrap_or_default()
        } else {
            format!(
                "left: {}; right: {}",
                left.certificate.clone().unwrap_or_default(),
                right.certificate.clone().unwrap_or_default()
            )
        };
        return Verdict { level, certificate: Some(cert), witness: None };
    }
    let open = if left.level == Level::Unknown { left } else { right };
    Verdict::unknown(open.witness.clone().unwrap_or_else(|| "undecided".into()))
}

fn finish(report: &mut DualReport) -> Result<(), DualError> {
    report.routes.sort_by(|a, b| a.id.cmp(&b.id).then(side_order(a.side).cmp(&side_order(b.side))));
    report.left = aggregate(&report.routes, Side::Left)?;
    report.right = aggregate(&report.routes, Side::Right)?;
    report.both = conjunction(&report.left, &report.right);
    Ok(())
}

fn side_order(s: SideSel) -> u8 {
    match s {
        SideSel::Left => 0,
        SideSel::Right => 1,
        SideSel::Both => 2,
    }
}

/// Runs the criterion on both sides together with every applicable route.
pub fn check_dual(s: &Semigroup, w: &Weight, spec: &CheckSpec) -> Result<DualReport, DualError> {
    if s.carrier() != w.carrier() {
        return Err(DualError::CarrierMismatch { weight: w.carrier().name(), semigroup: s.carrier().name() });
    }
    let weight_check = check_submultiplicative(w, s, spec.budget);
    if weight_check.is_no() {
        return Err(DualError::InvalidWeight(format!(
            "ω is not submultiplicative: {}",
            weight_check.witness.clone().unwrap_or_default()
        )));
    }
    let left = check_side(s, w, Side::Left, spec)?;
    let right = check_side(s, w, Side::Right, spec)?;
    let rec = reciprocal_in_c0(w);
    let mut routes = vec![
        route(RouteId::Criterion, SideSel::Left, left.verdict.clone(), Vec::new()),
        route(RouteId::Criterion, SideSel::Right, right.verdict.clone(), Vec::new()),
    ];
    routes.extend(weak_cancellativity_routes(s, w, spec.budget));
    routes.push(reciprocal_route(&rec));
    routes.push(sup_ratio_route(s, w, spec.budget));
    routes.extend(cofinite_routes(&[(Side::Left, &left), (Side::Right, &right)], &rec, s.carrier()));
    routes.extend(product_routes(s, w, spec)?);
    let mut pairs: Vec<PairEvidence> = left.evidence.into_iter().chain(right.evidence).collect();
    pairs.sort_by_key(|p| (p.s, p.t, side_order(sel(p.side))));
    let mut report = DualReport {
        semigroup: s.describe(),
        weight: w.source(),
        left: Verdict::unknown(""),
        right: Verdict::unknown(""),
        both: Verdict::unknown(""),
        routes,
        pairs,
        weak_cancellativity: s.is_weakly_cancellative(SideSel::Both, spec.budget),
        reciprocal: rec,
        weight_check,
        notes: vec![SIDE_NOTE.to_string()],
    };
    finish(&mut report)?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferReport {
    pub local_equivalence: Verdict,
    pub first: DualReport,
    pub second: DualReport,
}

/// Checks both weights and carries conclusions from `w` to `w2` when the two
/// are locally equivalent.
pub fn transfer_local_equiv(
    s: &Semigroup,
    w: &Weight,
    w2: &Weight,
    spec: &CheckSpec,
) -> Result<TransferReport, DualError> {
    let pairs = spec.pairs.clone().unwrap_or_else(|| default_pairs(s.carrier(), spec.budget));
    let local = locally_equivalent(w, w2, s, &pairs);
    let first = check_dual(s, w, spec)?;
    let mut second = check_dual(s, w2, spec)?;
    if local.is_yes() {
        for side in [Side::Left, Side::Right] {
            let v = first.side(side);
            let verdict = match v.level {
                Level::No => Verdict::no(format!("locally equivalent to ω, which fails: {}", v.witness.clone().unwrap_or_default())),
                l if l.is_yes() => Verdict {
                    level: l.meet(local.level),
                    certificate: Some(format!("locally equivalent to ω, which holds ({})", v.certificate.clone().unwrap_or_default())),
                    witness: None,
                },
                _ => Verdict::unknown("undecided for ω"),
            };
            second.routes.push(route(RouteId::LocalEquivTransfer, sel(side), verdict, Vec::new()));
        }
        finish(&mut second).map_err(|e| DualError::TransferViolation(e.to_string()))?;
    } else {
        second.routes.push(silent(
            RouteId::LocalEquivTransfer,
            SideSel::Both,
            format!("weights are not known to be locally equivalent ({})", local.summary()),
        ));
        finish(&mut second)?;
    }
    Ok(TransferReport { local_equivalence: local, first, second })
}

/// The four equivalent conditions for a weight on `(ℤ, min)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Example2Report {
    /// `ℓ¹((ℤ,min), ω)` is dual.
    pub int_min: Verdict,
    /// `ℓ¹((ℤ,max), ω̃)` is dual with `ω̃(n) = ω(−n)`.
    pub int_max_reflected: Verdict,
    /// `ℓ¹((ℕ,min), ω_ℕ)` is dual.
    pub nat_restricted: Verdict,
    /// `1/ω_ℕ ∈ c₀(ℕ)`.
    pub reciprocal_restricted: Verdict,
    /// `1/ω ∈ c₀(ℤ)`, which is not among the equivalent conditions.
    pub reciprocal_full: Verdict,
}

impl Example2Report {
    pub fn rows(&self) -> [(&'static str, &Verdict); 4] {
        [
            ("(Z,min) with ω", &self.int_min),
            ("(Z,max) with reflected ω", &self.int_max_reflected),
            ("(N,min) with restricted ω", &self.nat_restricted),
            ("1/ω restricted to N in c₀", &self.reciprocal_restricted),
        ]
    }
}

pub fn example2_equivalences(w: &Weight, spec: &CheckSpec) -> Result<Example2Report, DualError> {
    if *w.carrier() != Carrier::Int {
        return Err(DualError::CarrierMismatch { weight: w.carrier().name(), semigroup: "Z".into() });
    }
    let zmin = Semigroup::builtin(Family::Min, Carrier::Int)?;
    let zmax = Semigroup::builtin(Family::Max, Carrier::Int)?;
    let nmin = Semigroup::builtin(Family::Min, Carrier::Nat)?;
    let spec = CheckSpec { pairs: None, ..spec.clone() };
    let wn = w.restrict(&Carrier::Nat)?;
    let report = Example2Report {
        int_min: check_dual(&zmin, w, &spec)?.both,
        int_max_reflected: check_dual(&zmax, &w.reflect()?, &spec)?.both,
        nat_restricted: check_dual(&nmin, &wn, &spec)?.both,
        reciprocal_restricted: reciprocal_in_c0(&wn).to_verdict(),
        reciprocal_full: reciprocal_in_c0(w).to_verdict(),
    };
    let rows = report.rows();
    let yes = rows.iter().find(|(_, v)| v.is_yes());
    let no = rows.iter().find(|(_, v)| v.is_no());
    if let (Some((a, _)), Some((b, v))) = (yes, no) {
        return Err(DualError::Disagreement(format!("{a} holds but {b} fails: {}", v.witness.clone().unwrap_or_default())));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Direction;
    use crate::weight::TailClass::{self, *};
    use Element::Scalar as S;

    fn nat(f: Family) -> Semigroup {
        Semigroup::builtin(f, Carrier::Nat).unwrap()
    }

    fn wn(src: &str, c: TailClass) -> Weight {
        Weight::build(src, Carrier::Nat, &[(Direction::Pos, c)]).unwrap()
    }

    fn spec() -> CheckSpec {
        CheckSpec::default()
    }

    #[test]
    fn max_is_dual_for_any_weight() {
        for w in [Weight::one(Carrier::Nat), wn("1+n", Zero), wn("1+n^2", Zero)] {
            let r = check_dual(&nat(Family::Max), &w, &spec()).unwrap();
            assert_eq!(r.both.level, Level::YesUniversal, "{}", r.weight);
        }
    }

    #[test]
    fn min_depends_on_reciprocal() {
        let r = check_dual(&nat(Family::Min), &wn("1+n", Zero), &spec()).unwrap();
        assert_eq!(r.both.level, Level::YesUniversal);
        let r = check_dual(&nat(Family::Min), &Weight::one(Carrier::Nat), &spec()).unwrap();
        assert_eq!(r.both.level, Level::No);
        assert!(r.left.witness.as_ref().unwrap().starts_with("pair (1,1)"), "{:?}", r.left);
        let ids: Vec<&str> =
            r.routes.iter().filter(|x| x.verdict.is_no()).map(|x| x.id.as_str()).collect();
        assert!(ids.contains(&"bounded_converse") && ids.contains(&"cofinite_converse"), "{ids:?}");
    }

    #[test]
    fn piecewise_weight_on_integers() {
        let w = Weight::build("if n>=1 then 1+n else 1", Carrier::Int, &[(Direction::Pos, Zero), (Direction::Neg, Bounded)])
            .unwrap();
        let zmin = Semigroup::builtin(Family::Min, Carrier::Int).unwrap();
        let r = check_dual(&zmin, &w, &spec()).unwrap();
        assert_eq!(r.both.level, Level::YesUniversal);
        assert!(r.reciprocal.is_no());
        let e = example2_equivalences(&w, &spec()).unwrap();
        assert!(e.rows().iter().all(|(_, v)| v.is_yes()), "{e:?}");
        assert!(e.reciprocal_full.is_no());
    }

    #[test]
    fn example2_constant_and_absolute() {
        let one = Weight::build("1", Carrier::Int, &[(Direction::Pos, Bounded), (Direction::Neg, Bounded)]).unwrap();
        let e = example2_equivalences(&one, &spec()).unwrap();
        assert!(e.rows().iter().all(|(_, v)| v.is_no()), "{e:?}");
        let abs = Weight::build("1+abs(n)", Carrier::Int, &[(Direction::Pos, Zero), (Direction::Neg, Zero)]).unwrap();
        let e = example2_equivalences(&abs, &spec()).unwrap();
        assert!(e.rows().iter().all(|(_, v)| v.is_yes()), "{e:?}");
    }

    #[test]
    fn product_example() {
        let s = Semigroup::product(nat(Family::Plus), nat(Family::RightZero)).unwrap();
        let w = Weight::build(
            "exp(-m)*(1+n)",
            s.carrier().clone(),
            &[(Direction::MPos, Unbounded), (Direction::NPos, Zero)],
        )
        .unwrap();
        let r = check_dual(&s, &w, &spec()).unwrap();
        assert_eq!(r.both.level, Level::YesUniversal, "{:?}", r.both);
        assert!(r.left.certificate.as_ref().unwrap().starts_with("product_rule"));
        assert!(r.weak_cancellativity.is_no());
        assert!(r.weak_cancellativity.witness.as_ref().unwrap().contains("(2,2)·(1,2)⁻¹ = {1}×N"));
        assert!(r.reciprocal.is_no());
    }

    #[test]
    fn zero_semigroups_are_one_sided() {
        let r = check_dual(&nat(Family::LeftZero), &Weight::one(Carrier::Nat), &spec()).unwrap();
        assert_eq!((r.left.level, r.right.level), (Level::YesUniversal, Level::No));
        let r = check_dual(&nat(Family::RightZero), &Weight::one(Carrier::Nat), &spec()).unwrap();
        assert_eq!((r.left.level, r.right.level), (Level::No, Level::YesUniversal));
    }

    #[test]
    fn non_submultiplicative_weight_is_rejected() {
        let w = Weight::build("1/(1+n)", Carrier::Nat, &[(Direction::Pos, Unbounded)]).unwrap();
        assert!(matches!(check_dual(&nat(Family::Plus), &w, &spec()), Err(DualError::InvalidWeight(_))));
    }

    #[test]
    fn transfer_between_scalar_multiples() {
        let w = wn("1+n", Zero);
        let w2 = w.scale(&crate::num::ratio(2, 1)).unwrap();
        let t = transfer_local_equiv(&nat(Family::Min), &w, &w2, &spec()).unwrap();
        assert_eq!(t.first.both.level, t.second.both.level);
        let w3 = wn("1+n^2", Zero);
        let t = transfer_local_equiv(&nat(Family::Min), &w, &w3, &spec()).unwrap();
        assert!(t.local_equivalence.is_no());
        assert!(t.first.both.is_yes() && t.second.both.is_yes());
    }

    #[test]
    fn explicit_pairs_outside_carrier_are_rejected() {
        let spec = CheckSpec { pairs: Some(vec![(S(0), S(1))]), ..CheckSpec::default() };
        assert!(check_dual(&nat(Family::Max), &Weight::one(Carrier::Nat), &spec).is_err());
    }
}
