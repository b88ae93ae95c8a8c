//! Weights `ω: S → (0, ∞)` given by closed-form expressions, with declared
//! and sample-validated limit classes of `1/ω` along each escape direction.

pub mod equiv;
pub mod expr;
pub mod sup;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::num::{LogNum, Value};
use crate::semigroup::{default_pairs, Carrier, Direction, Element, Semigroup};
use crate::verdict::Verdict;
pub use equiv::{equivalent, locally_equivalent};
pub use expr::{CmpOp, Cond, Dom, Expr, Interval, Mono, Point, Var};
pub use sup::{left_orbit, right_orbit, sided_sup_ratio, SupValue};

/// Default largest coordinate sampled along a direction.
pub const DEFAULT_TAIL_BUDGET: i64 = 1 << 21;

/// Spread of `ln(1/ω)` tolerated by a `bounded` declaration.
const BOUNDED_SPREAD: f64 = 1.3862943611198906;

/// Limit behaviour of `1/ω` along a direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TailClass {
    Zero,
    Bounded,
    Unbounded,
    Unknown,
}

impl TailClass {
    pub fn name(self) -> &'static str {
        match self {
            TailClass::Zero => "zero",
            TailClass::Bounded => "bounded",
            TailClass::Unbounded => "unbounded",
            TailClass::Unknown => "unknown",
        }
    }

    pub fn from_name(s: &str) -> Option<TailClass> {
        Some(match s {
            "zero" => TailClass::Zero,
            "bounded" => TailClass::Bounded,
            "unbounded" => TailClass::Unbounded,
            "unknown" => TailClass::Unknown,
            _ => return None,
        })
    }

    /// Class of `1/(ω₁ω₂)` from the classes of `1/ω₁` and `1/ω₂`.
    pub fn times(self, o: TailClass) -> TailClass {
        use TailClass::*;
        match (self, o) {
            (Unknown, _) | (_, Unknown) => Unknown,
            (Zero, Zero) | (Zero, Bounded) | (Bounded, Zero) => Zero,
            (Bounded, Bounded) => Bounded,
            (Unbounded, Zero) | (Zero, Unbounded) => Unknown,
            (Unbounded, _) | (_, Unbounded) => Unbounded,
        }
    }
}

impl fmt::Display for TailClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("weight is not positive at {point}: value {value}")]
    NonPositive { point: Element, value: String },
    #[error("weight cannot be evaluated at {point}: {msg}")]
    Eval { point: Element, msg: String },
    #[error("missing tail annotation for direction {0}")]
    MissingAnnotation(String),
    #[error("declared tail class {declared} for direction {direction} contradicts sampling, which looks {observed}")]
    Contradiction { direction: String, declared: TailClass, observed: String },
    #[error("variables {found} do not fit carrier {carrier}: {need}")]
    VariableMismatch { found: String, carrier: String, need: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("element {0} is not in the weight's carrier")]
    OutOfCarrier(Element),
    #[error("{0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightOptions {
    pub tail_budget: i64,
    /// Float mode evaluates every value in the log domain.
    pub exact: bool,
}

impl Default for WeightOptions {
    fn default() -> Self {
        WeightOptions { tail_budget: DEFAULT_TAIL_BUDGET, exact: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    expr: Expr,
    carrier: Carrier,
    classes: BTreeMap<Direction, TailClass>,
    factors: Option<Box<(Weight, Weight)>>,
    opts: WeightOptions,
}

impl Weight {
    /// Builds and validates a weight. Every non-diagonal direction of an
    /// infinite carrier needs a declared class.
    pub fn new(
        expr: Expr,
        carrier: Carrier,
        declared: &BTreeMap<Direction, TailClass>,
        opts: WeightOptions,
    ) -> Result<Weight, WeightError> {
        check_vars(&expr, &carrier)?;
        let mut classes = BTreeMap::new();
        for d in carrier.directions() {
            match declared.get(&d) {
                Some(c) => {
                    classes.insert(d, *c);
                }
                None if d == Direction::Diag => {}
                None => return Err(WeightError::MissingAnnotation(format!("tail_{}", d.key()))),
            }
        }
        let mut w = Weight { expr, carrier, classes, factors: None, opts };
        w.check_positive()?;
        if let Carrier::Product(ca, cb) = &w.carrier {
            w.factors = w.split_separable(ca, cb).map(Box::new);
            if !w.classes.contains_key(&Direction::Diag) {
                let derived = match &w.factors {
                    Some(fs) => fs.0.class(Direction::Pos).times(fs.1.class(Direction::Pos)),
                    None => TailClass::Unknown,
                };
                w.classes.insert(Direction::Diag, derived);
            }
        }
        for (d, c) in w.classes.clone() {
            w.validate_class(d, c)?;
        }
        Ok(w)
    }

    /// Parses `src` and builds a weight.
    pub fn build(src: &str, carrier: Carrier, declared: &[(Direction, TailClass)]) -> Result<Weight, WeightError> {
        Self::build_with(src, carrier, declared, WeightOptions::default())
    }

    pub fn build_with(
        src: &str,
        carrier: Carrier,
        declared: &[(Direction, TailClass)],
        opts: WeightOptions,
    ) -> Result<Weight, WeightError> {
        let expr = crate::config::parse_expr(src).map_err(|d| WeightError::Parse(d.to_string()))?;
        Weight::new(expr, carrier, &declared.iter().copied().collect(), opts)
    }

    /// The constant weight 1, bounded along every direction.
    pub fn one(carrier: Carrier) -> Weight {
        let declared = carrier.directions().into_iter().map(|d| (d, TailClass::Bounded)).collect();
        Weight::new(Expr::num(1), carrier, &declared, WeightOptions::default()).expect("the constant 1 is a weight")
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn opts(&self) -> WeightOptions {
        self.opts
    }

    pub fn classes(&self) -> &BTreeMap<Direction, TailClass> {
        &self.classes
    }

    pub fn class(&self, d: Direction) -> TailClass {
        self.classes.get(&d).copied().unwrap_or(TailClass::Unknown)
    }

    /// `(ω₁, ω₂)` with `ω(m, n) = ω₁(m)·ω₂(n)`, when known.
    pub fn factors(&self) -> Option<(&Weight, &Weight)> {
        self.factors.as_deref().map(|(a, b)| (a, b))
    }

    pub fn source(&self) -> String {
        self.expr.to_string()
    }

    pub fn point(e: &Element) -> Point {
        match *e {
            Element::Scalar(v) => Point { m: 0, n: v },
            Element::Pair(a, b) => Point { m: a, n: b },
        }
    }

    pub fn eval(&self, e: &Element) -> Result<Value, WeightError> {
        if !self.carrier.contains(e) {
            return Err(WeightError::OutOfCarrier(*e));
        }
        let v = self.expr.eval(Self::point(e)).map_err(|err| WeightError::Eval { point: *e, msg: err.to_string() })?;
        if !v.is_positive() {
            return Err(WeightError::NonPositive { point: *e, value: v.to_string() });
        }
        Ok(if self.opts.exact { v } else { v.approx() })
    }

    pub fn eval_f64(&self, e: &Element) -> f64 {
        self.expr.eval_f64(Self::point(e))
    }

    /// `1/ω(e)`.
    pub fn recip(&self, e: &Element) -> Result<Value, WeightError> {
        Ok(self.eval(e)?.recip().expect("weights are positive"))
    }

    /// Geometric sample points `1, 2, 4, ...` up to the tail budget along a
    /// direction, with the value of `ω` at each.
    pub fn tail_samples(&self, d: Direction) -> Result<Vec<(Element, Value)>, WeightError> {
        let mut out = Vec::new();
        let mut k: i64 = 1;
        while k <= self.opts.tail_budget.max(1) {
            if let Some(e) = self.carrier.point_along(d, k) {
                out.push((e, self.eval(&e)?));
            }
            k = match k.checked_mul(2) {
                Some(x) => x,
                None => break,
            };
        }
        Ok(out)
    }

    fn sample_points(&self) -> Vec<Element> {
        let mut pts: Vec<Element> = match self.carrier.size() {
            Some(n) => self.carrier.elements().take(n).collect(),
            None => self.carrier.elements().take(256).collect(),
        };
        for d in self.carrier.directions() {
            let mut k: i64 = 1;
            while k <= self.opts.tail_budget.max(1) {
                pts.extend(self.carrier.point_along(d, k));
                k *= 2;
            }
        }
        pts
    }

    fn check_positive(&self) -> Result<(), WeightError> {
        for p in self.sample_points() {
            self.eval(&p)?;
        }
        Ok(())
    }

    fn validate_class(&self, d: Direction, c: TailClass) -> Result<(), WeightError> {
        if c == TailClass::Unknown {
            return Ok(());
        }
        let ln: Vec<f64> = self.tail_samples(d)?.iter().map(|(_, v)| -v.to_log().ln).collect();
        let tail = &ln[ln.len() / 2..];
        if tail.len() < 2 {
            return Ok(());
        }
        let step_tol = |x: f64| 1e-12 * x.abs().max(1.0);
        let non_inc = tail.windows(2).all(|w| w[1] <= w[0] + step_tol(w[0]));
        let non_dec = tail.windows(2).all(|w| w[1] >= w[0] - step_tol(w[0]));
        let (first, last) = (tail[0], tail[tail.len() - 1]);
        let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ok = match c {
            TailClass::Zero => non_inc && last < first - step_tol(first),
            TailClass::Unbounded => non_dec && last > first + step_tol(first),
            TailClass::Bounded => hi - lo <= BOUNDED_SPREAD,
            TailClass::Unknown => true,
        };
        if ok {
            return Ok(());
        }
        let observed = if non_inc && last < first {
            "decaying"
        } else if non_dec && last > first {
            "growing"
        } else if hi - lo <= BOUNDED_SPREAD {
            "bounded"
        } else {
            "irregular"
        };
        Err(WeightError::Contradiction { direction: d.key().to_string(), declared: c, observed: observed.into() })
    }

    fn split_separable(&self, ca: &Carrier, cb: &Carrier) -> Option<(Weight, Weight)> {
        let (coeff, fs) = self.expr.factors();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for f in fs {
            let vs = f.vars();
            if vs.iter().all(|v| *v == Var::M) {
                left.push(f.rename(Var::M, Var::N));
            } else if vs.iter().all(|v| *v == Var::N) {
                right.push(f);
            } else {
                return None;
            }
        }
        let e1 = Expr::from_factors(&coeff, &left);
        let e2 = Expr::from_factors(&Value::one(), &right);
        let decl = |a: Direction, b: Direction| -> BTreeMap<Direction, TailClass> {
            [(Direction::Pos, self.class(a)), (Direction::Neg, self.class(b))].into_iter().collect()
        };
        let w1 = Weight::new(e1, ca.clone(), &decl(Direction::MPos, Direction::MNeg), self.opts).ok()?;
        let w2 = Weight::new(e2, cb.clone(), &decl(Direction::NPos, Direction::NNeg), self.opts).ok()?;
        Some((w1, w2))
    }

    /// Whether `ω` is bounded above. `None` when the annotations do not say.
    pub fn is_bounded(&self) -> Option<bool> {
        if self.carrier.is_finite() {
            return Some(true);
        }
        if let Some((a, b)) = self.factors() {
            return match (a.is_bounded(), b.is_bounded()) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            };
        }
        let dirs = self.carrier.directions();
        if dirs.iter().any(|d| self.class(*d) == TailClass::Zero) {
            return Some(false);
        }
        if self.carrier.is_scalar()
            && dirs.iter().all(|d| matches!(self.class(*d), TailClass::Bounded | TailClass::Unbounded))
        {
            return Some(true);
        }
        None
    }

    /// `c·ω` for a positive rational `c`.
    pub fn scale(&self, c: &BigRational) -> Result<Weight, WeightError> {
        if !c.is_positive() {
            return Err(WeightError::Unsupported("scaling factor must be positive".into()));
        }
        let expr = Expr::mul(Expr::Num(c.clone()), self.expr.clone());
        let mut w = Weight::new(expr, self.carrier.clone(), &self.classes, self.opts)?;
        if let Some((a, b)) = self.factors() {
            w.factors = Some(Box::new((a.scale(c)?, b.clone())));
        }
        Ok(w)
    }

    /// `ω̃(n) = ω(-n)` on the integers.
    pub fn reflect(&self) -> Result<Weight, WeightError> {
        if self.carrier != Carrier::Int {
            return Err(WeightError::Unsupported("reflection needs the integer carrier".into()));
        }
        let classes = [
            (Direction::Pos, self.class(Direction::Neg)),
            (Direction::Neg, self.class(Direction::Pos)),
        ]
        .into_iter()
        .collect();
        Weight::new(self.expr.reflect(Var::N), Carrier::Int, &classes, self.opts)
    }

    /// Restriction to the positive part of the carrier: `ℕ ⊂ ℤ`, or
    /// componentwise on pairs.
    pub fn restrict(&self, sub: &Carrier) -> Result<Weight, WeightError> {
        let fits = |big: &Carrier, small: &Carrier| {
            big == small || (*big == Carrier::Int && *small == Carrier::Nat)
        };
        let ok = match (&self.carrier, sub) {
            (Carrier::Product(a, b), Carrier::Product(x, y)) => fits(a, x) && fits(b, y),
            (big, small) => small.is_scalar() && fits(big, small),
        };
        if !ok {
            return Err(WeightError::Unsupported(format!(
                "{} is not a supported subsemigroup carrier of {}",
                sub.name(),
                self.carrier.name()
            )));
        }
        let classes = sub.directions().into_iter().map(|d| (d, self.class(d))).collect();
        Weight::new(self.expr.clone(), sub.clone(), &classes, self.opts)
    }
}

/// `(ω₁ × ω₂)(x, y) = ω₁(x)·ω₂(y)` on the product of the factor carriers.
pub fn product_weight(w1: &Weight, w2: &Weight) -> Result<Weight, WeightError> {
    if !w1.carrier.is_scalar() || !w2.carrier.is_scalar() {
        return Err(WeightError::Unsupported("product weights need one-dimensional factors".into()));
    }
    let carrier = Carrier::pair(w1.carrier.clone(), w2.carrier.clone());
    let expr = Expr::mul(w1.expr.rename(Var::N, Var::M), w2.expr.clone());
    let mut declared = BTreeMap::new();
    for d in w1.carrier.directions() {
        declared.insert(d.lift_first(), w1.class(d));
    }
    for d in w2.carrier.directions() {
        declared.insert(d.lift_second(), w2.class(d));
    }
    if carrier.directions().contains(&Direction::Diag) {
        declared.insert(Direction::Diag, w1.class(Direction::Pos).times(w2.class(Direction::Pos)));
    }
    let opts = WeightOptions {
        tail_budget: w1.opts.tail_budget.min(w2.opts.tail_budget),
        exact: w1.opts.exact && w2.opts.exact,
    };
    let mut w = Weight::new(expr, carrier, &declared, opts)?;
    w.factors = Some(Box::new((w1.clone(), w2.clone())));
    Ok(w)
}

fn check_vars(expr: &Expr, carrier: &Carrier) -> Result<(), WeightError> {
    let vs = expr.vars();
    if !carrier.is_scalar() || vs.iter().all(|v| *v == Var::N) {
        return Ok(());
    }
    Err(WeightError::VariableMismatch {
        found: format!("{{{}}}", vs.iter().map(|v| v.name()).collect::<Vec<_>>().join(",")),
        carrier: carrier.name(),
        need: "a one-dimensional carrier uses the variable n".into(),
    })
}

/// `ω(st) ≤ ω(s)ω(t)`: exhaustive on finite carriers, otherwise over the
/// first `budget` diagonal pairs plus geometric pairs along every direction.
pub fn check_submultiplicative(w: &Weight, s: &Semigroup, budget: usize) -> Verdict {
    if w.carrier() != s.carrier() {
        return Verdict::no(format!("carrier mismatch: {} vs {}", w.carrier(), s.carrier()));
    }
    let carrier = s.carrier();
    let mut pairs = match carrier.size() {
        Some(n) => default_pairs(carrier, n * n),
        None => default_pairs(carrier, budget.max(1)),
    };
    if !carrier.is_finite() {
        let mut geo = Vec::new();
        for d in carrier.directions() {
            let mut k = 1i64;
            while k <= w.opts.tail_budget.max(1) {
                geo.extend(carrier.point_along(d, k));
                k *= 4;
            }
        }
        for a in &geo {
            for b in &geo {
                pairs.push((*a, *b));
            }
        }
    }
    let count = pairs.len();
    for (a, b) in pairs {
        let prod = match s.mul(&a, &b) {
            Ok(p) => p,
            Err(e) => return Verdict::unknown(format!("cannot multiply {a} and {b}: {e}")),
        };
        let vals = (w.eval(&prod), w.eval(&a), w.eval(&b));
        let (Ok(wp), Ok(wa), Ok(wb)) = vals else {
            return Verdict::unknown(format!("weight not evaluable near ({a},{b})"));
        };
        let rhs = wa.mul(&wb);
        if wp.cmp_tol(&rhs).is_gt() {
            return Verdict::no(format!("({a},{b}): ω({prod}) = {wp} > ω({a})·ω({b}) = {rhs}"));
        }
    }
    if carrier.is_finite() {
        Verdict::universal(format!("exhaustive over {count} pairs"))
    } else {
        Verdict::sampled(format!("checked {count} pairs"))
    }
}

/// `1/ω` at a sample, in the log domain.
pub fn recip_log(v: &Value) -> LogNum {
    v.to_log().recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratio};
    use crate::semigroup::Family;
    use Element::Scalar as S;

    fn nat(src: &str, c: TailClass) -> Weight {
        Weight::build(src, Carrier::Nat, &[(Direction::Pos, c)]).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(nat("1+n", TailClass::Zero).eval(&S(4)).unwrap(), Value::Exact(rat(5)));
        assert_eq!(Weight::one(Carrier::Int).eval(&S(-17)).unwrap(), Value::one());
        let c = Carrier::pair(Carrier::Nat, Carrier::Nat);
        let w = Weight::build(
            "exp(-m)*(1+n)",
            c,
            &[(Direction::MPos, TailClass::Unbounded), (Direction::NPos, TailClass::Zero)],
        )
        .unwrap();
        let v = w.eval(&Element::Pair(1, 2)).unwrap().to_f64();
        assert!((v - 1.103638323514327).abs() < 1e-12);
        assert_eq!(w.class(Direction::Diag), TailClass::Unknown);
        assert!(w.factors().is_some());
    }

    #[test]
    fn annotations_are_required_and_validated() {
        assert!(matches!(
            Weight::build("1+n", Carrier::Nat, &[]),
            Err(WeightError::MissingAnnotation(_))
        ));
        assert!(matches!(
            Weight::build("1+n", Carrier::Nat, &[(Direction::Pos, TailClass::Bounded)]),
            Err(WeightError::Contradiction { .. })
        ));
        assert!(Weight::build("1", Carrier::Nat, &[(Direction::Pos, TailClass::Zero)]).is_err());
        assert!(Weight::build("exp(-n)", Carrier::Nat, &[(Direction::Pos, TailClass::Unbounded)]).is_ok());
        assert!(Weight::build("1+n", Carrier::Nat, &[(Direction::Pos, TailClass::Unknown)]).is_ok());
    }

    #[test]
    fn non_positive_weights_are_rejected() {
        assert!(matches!(
            Weight::build("n-3", Carrier::Nat, &[(Direction::Pos, TailClass::Zero)]),
            Err(WeightError::NonPositive { .. })
        ));
    }

    #[test]
    fn pair_variables_are_checked() {
        assert!(matches!(
            Weight::build("1+m", Carrier::Nat, &[(Direction::Pos, TailClass::Zero)]),
            Err(WeightError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn submultiplicativity_examples() {
        let max = Semigroup::builtin(Family::Max, Carrier::Nat).unwrap();
        assert!(check_submultiplicative(&nat("1+n", TailClass::Zero), &max, 200).is_yes());
        let plus = Semigroup::builtin(Family::Plus, Carrier::Nat).unwrap();
        assert!(check_submultiplicative(&nat("exp(n)", TailClass::Zero), &plus, 200).is_yes());
        let v = check_submultiplicative(&nat("1/(1+n)", TailClass::Unbounded), &plus, 200);
        assert!(v.is_no());
        assert!(v.witness.unwrap().starts_with("(1,1): ω(2) = 1/3 > ω(1)·ω(1) = 1/4"));
    }

    #[test]
    fn product_weight_examples() {
        let w1 = nat("exp(-n)", TailClass::Unbounded);
        let w2 = nat("1+n", TailClass::Zero);
        let p = product_weight(&w1, &w2).unwrap();
        assert_eq!(p.source(), "exp(-m)*(1 + n)");
        let q = product_weight(&nat("1+n", TailClass::Zero), &nat("1+n", TailClass::Zero)).unwrap();
        assert_eq!(q.eval(&Element::Pair(2, 3)).unwrap(), Value::Exact(rat(12)));
        assert_eq!(q.class(Direction::Diag), TailClass::Zero);
        let one = product_weight(&Weight::one(Carrier::Nat), &Weight::one(Carrier::Nat)).unwrap();
        assert_eq!(one.eval(&Element::Pair(5, 9)).unwrap(), Value::one());
    }

    #[test]
    fn restriction_and_reflection() {
        let w = Weight::build(
            "if n>=1 then 1+n else 1",
            Carrier::Int,
            &[(Direction::Pos, TailClass::Zero), (Direction::Neg, TailClass::Bounded)],
        )
        .unwrap();
        let r = w.restrict(&Carrier::Nat).unwrap();
        assert_eq!(r.eval(&S(4)).unwrap(), Value::Exact(rat(5)));
        assert_eq!(r.class(Direction::Pos), TailClass::Zero);
        let t = w.reflect().unwrap();
        assert_eq!(t.eval(&S(-4)).unwrap(), Value::Exact(rat(5)));
        assert_eq!(t.class(Direction::Neg), TailClass::Zero);
        let sq = Weight::build(
            "1+n^2",
            Carrier::Int,
            &[(Direction::Pos, TailClass::Zero), (Direction::Neg, TailClass::Zero)],
        )
        .unwrap();
        assert_eq!(sq.restrict(&Carrier::Nat).unwrap().eval(&S(3)).unwrap(), Value::Exact(rat(10)));
        assert!(r.restrict(&Carrier::Int).is_err());
    }

    #[test]
    fn boundedness() {
        assert_eq!(Weight::one(Carrier::Nat).is_bounded(), Some(true));
        assert_eq!(nat("1+n", TailClass::Zero).is_bounded(), Some(false));
        assert_eq!(nat("2 - 1/n", TailClass::Bounded).is_bounded(), Some(true));
        let s = nat("1+n", TailClass::Zero).scale(&ratio(1, 3)).unwrap();
        assert_eq!(s.eval(&S(2)).unwrap(), Value::Exact(rat(1)));
    }
}
