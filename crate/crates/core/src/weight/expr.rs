//! Weight expressions over the coordinates `m` and `n`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::num::{fmt_rational, LogNum, Value};

/// Largest accepted absolute integer exponent.
pub const MAX_EXPONENT: i32 = 1000;

/// Powers whose exact result would exceed this many bits are evaluated in
/// the log domain instead.
const MAX_EXACT_BITS: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    M,
    N,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::M => "m",
            Var::N => "n",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Ge,
    Gt,
    Eq,
    Lt,
    Le,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
            CmpOp::Eq => "=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
        }
    }
}

/// `var op value`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cond {
    pub var: Var,
    pub op: CmpOp,
    pub value: i64,
}

impl Cond {
    pub fn holds(&self, p: Point) -> bool {
        let x = p.get(self.var);
        match self.op {
            CmpOp::Ge => x >= self.value,
            CmpOp::Gt => x > self.value,
            CmpOp::Eq => x == self.value,
            CmpOp::Lt => x < self.value,
            CmpOp::Le => x <= self.value,
        }
    }

    /// The condition after substituting `var -> -var`.
    fn reflected(&self) -> Cond {
        let op = match self.op {
            CmpOp::Ge => CmpOp::Le,
            CmpOp::Gt => CmpOp::Lt,
            CmpOp::Eq => CmpOp::Eq,
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::Le => CmpOp::Ge,
        };
        Cond { var: self.var, op, value: -self.value }
    }

    /// Integer interval of values satisfying the condition.
    fn true_range(&self) -> (f64, f64) {
        let v = self.value as f64;
        match self.op {
            CmpOp::Ge => (v, f64::INFINITY),
            CmpOp::Gt => (v + 1.0, f64::INFINITY),
            CmpOp::Eq => (v, v),
            CmpOp::Lt => (f64::NEG_INFINITY, v - 1.0),
            CmpOp::Le => (f64::NEG_INFINITY, v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(BigRational),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Exp(Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Abs(Box<Expr>),
    If(Cond, Box<Expr>, Box<Expr>),
}

/// Coordinates of an evaluation point. One-dimensional carriers use `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Point {
    pub m: i64,
    pub n: i64,
}

impl Point {
    pub fn get(self, v: Var) -> i64 {
        match v {
            Var::M => self.m,
            Var::N => self.n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    DivisionByZero,
    ZeroToNegativePower,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::DivisionByZero => f.write_str("division by zero"),
            EvalError::ZeroToNegativePower => f.write_str("zero raised to a negative power"),
        }
    }
}

fn b(e: Expr) -> Box<Expr> {
    Box::new(e)
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn num(v: i64) -> Expr {
        Expr::Num(crate::num::rat(v))
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn mul(a: Expr, c: Expr) -> Expr {
        Expr::Mul(b(a), b(c))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                out.insert(*v);
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) | Expr::Abs(a) => a.collect_vars(out),
            Expr::Add(a, c) | Expr::Sub(a, c) | Expr::Mul(a, c) | Expr::Div(a, c) | Expr::Max(a, c) | Expr::Min(a, c) => {
                a.collect_vars(out);
                c.collect_vars(out);
            }
            Expr::If(cond, a, c) => {
                out.insert(cond.var);
                a.collect_vars(out);
                c.collect_vars(out);
            }
        }
    }

    pub fn has_exp(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Var(_) => false,
            Expr::Exp(_) => true,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Abs(a) => a.has_exp(),
            Expr::Add(a, c) | Expr::Sub(a, c) | Expr::Mul(a, c) | Expr::Div(a, c) | Expr::Max(a, c) | Expr::Min(a, c) => {
                a.has_exp() || c.has_exp()
            }
            Expr::If(_, a, c) => a.has_exp() || c.has_exp(),
        }
    }

    /// Exact evaluation, switching to the log domain below `exp`.
    pub fn eval(&self, p: Point) -> Result<Value, EvalError> {
        Ok(match self {
            Expr::Num(r) => Value::Exact(r.clone()),
            Expr::Var(v) => Value::int(p.get(*v)),
            Expr::Neg(a) => a.eval(p)?.neg(),
            Expr::Add(a, c) => a.eval(p)?.add(&c.eval(p)?),
            Expr::Sub(a, c) => a.eval(p)?.sub(&c.eval(p)?),
            Expr::Mul(a, c) => a.eval(p)?.mul(&c.eval(p)?),
            Expr::Div(a, c) => a.eval(p)?.div(&c.eval(p)?).ok_or(EvalError::DivisionByZero)?,
            Expr::Pow(a, k) => {
                let base = a.eval(p)?;
                if *k < 0 && base.is_zero() {
                    return Err(EvalError::ZeroToNegativePower);
                }
                match base {
                    Value::Exact(r) if (r.numer().bits() + r.denom().bits()) * k.unsigned_abs() as u64 > MAX_EXACT_BITS => {
                        Value::Approx(LogNum::from_rational(&r).powi(*k))
                    }
                    Value::Exact(r) => Value::Exact(num_traits::Pow::pow(&r, *k)),
                    Value::Approx(l) => Value::Approx(l.powi(*k)),
                }
            }
            Expr::Exp(a) => {
                let x = a.eval(p)?;
                if x.is_zero() {
                    Value::one()
                } else {
                    Value::Approx(LogNum::exp_of(x.to_f64()))
                }
            }
            Expr::Max(a, c) => a.eval(p)?.max(c.eval(p)?),
            Expr::Min(a, c) => a.eval(p)?.min(c.eval(p)?),
            Expr::Abs(a) => a.eval(p)?.abs(),
            Expr::If(cond, a, c) => {
                if cond.holds(p) {
                    a.eval(p)?
                } else {
                    c.eval(p)?
                }
            }
        })
    }

    /// Plain float evaluation for large scans. May overflow to infinity.
    pub fn eval_f64(&self, p: Point) -> f64 {
        match self {
            Expr::Num(r) => r.to_f64().unwrap_or(f64::NAN),
            Expr::Var(v) => p.get(*v) as f64,
            Expr::Neg(a) => -a.eval_f64(p),
            Expr::Add(a, c) => a.eval_f64(p) + c.eval_f64(p),
            Expr::Sub(a, c) => a.eval_f64(p) - c.eval_f64(p),
            Expr::Mul(a, c) => a.eval_f64(p) * c.eval_f64(p),
            Expr::Div(a, c) => a.eval_f64(p) / c.eval_f64(p),
            Expr::Pow(a, k) => a.eval_f64(p).powi(*k),
            Expr::Exp(a) => a.eval_f64(p).exp(),
            Expr::Max(a, c) => a.eval_f64(p).max(c.eval_f64(p)),
            Expr::Min(a, c) => a.eval_f64(p).min(c.eval_f64(p)),
            Expr::Abs(a) => a.eval_f64(p).abs(),
            Expr::If(cond, a, c) => {
                if cond.holds(p) {
                    a.eval_f64(p)
                } else {
                    c.eval_f64(p)
                }
            }
        }
    }

    /// Replaces every occurrence of `from` by the variable `to`.
    pub fn rename(&self, from: Var, to: Var) -> Expr {
        let r = |e: &Expr| b(e.rename(from, to));
        match self {
            Expr::Var(v) if *v == from => Expr::Var(to),
            Expr::Num(_) | Expr::Var(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(r(a)),
            Expr::Add(a, c) => Expr::Add(r(a), r(c)),
            Expr::Sub(a, c) => Expr::Sub(r(a), r(c)),
            Expr::Mul(a, c) => Expr::Mul(r(a), r(c)),
            Expr::Div(a, c) => Expr::Div(r(a), r(c)),
            Expr::Pow(a, k) => Expr::Pow(r(a), *k),
            Expr::Exp(a) => Expr::Exp(r(a)),
            Expr::Max(a, c) => Expr::Max(r(a), r(c)),
            Expr::Min(a, c) => Expr::Min(r(a), r(c)),
            Expr::Abs(a) => Expr::Abs(r(a)),
            Expr::If(cond, a, c) => {
                let var = if cond.var == from { to } else { cond.var };
                Expr::If(Cond { var, ..cond.clone() }, r(a), r(c))
            }
        }
    }

    /// The expression `x ↦ self(-x)` in the variable `v`.
    pub fn reflect(&self, v: Var) -> Expr {
        let r = |e: &Expr| b(e.reflect(v));
        match self {
            Expr::Var(x) if *x == v => Expr::Neg(b(Expr::Var(v))),
            Expr::Num(_) | Expr::Var(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(r(a)),
            Expr::Add(a, c) => Expr::Add(r(a), r(c)),
            Expr::Sub(a, c) => Expr::Sub(r(a), r(c)),
            Expr::Mul(a, c) => Expr::Mul(r(a), r(c)),
            Expr::Div(a, c) => Expr::Div(r(a), r(c)),
            Expr::Pow(a, k) => Expr::Pow(r(a), *k),
            Expr::Exp(a) => Expr::Exp(r(a)),
            Expr::Max(a, c) => Expr::Max(r(a), r(c)),
            Expr::Min(a, c) => Expr::Min(r(a), r(c)),
            Expr::Abs(a) => Expr::Abs(r(a)),
            Expr::If(cond, a, c) => {
                let cond = if cond.var == v { cond.reflected() } else { cond.clone() };
                Expr::If(cond, r(a), r(c))
            }
        }
    }

    /// Value of a variable-free expression.
    pub fn const_value(&self) -> Option<Value> {
        if self.vars().is_empty() {
            self.eval(Point { m: 0, n: 0 }).ok()
        } else {
            None
        }
    }

    /// Top-level multiplicative factors with constants folded into one
    /// coefficient: `self = coeff · Π factors`. Division contributes a
    /// `^-1` factor.
    pub fn factors(&self) -> (Value, Vec<Expr>) {
        let mut coeff = Value::one();
        let mut out = Vec::new();
        self.collect_factors(false, &mut coeff, &mut out);
        (coeff, out)
    }

    fn collect_factors(&self, inverted: bool, coeff: &mut Value, out: &mut Vec<Expr>) {
        if let Some(c) = self.const_value() {
            if !c.is_zero() {
                *coeff = if inverted { coeff.div(&c).expect("nonzero") } else { coeff.mul(&c) };
                return;
            }
        }
        match self {
            Expr::Mul(a, c) => {
                a.collect_factors(inverted, coeff, out);
                c.collect_factors(inverted, coeff, out);
            }
            Expr::Div(a, c) => {
                a.collect_factors(inverted, coeff, out);
                c.collect_factors(!inverted, coeff, out);
            }
            Expr::Neg(a) => {
                *coeff = coeff.neg();
                a.collect_factors(inverted, coeff, out);
            }
            other => out.push(if inverted { Expr::Pow(b(other.clone()), -1) } else { other.clone() }),
        }
    }

    /// Product of factors times a coefficient; the inverse of [`Expr::factors`]
    /// up to structure.
    pub fn from_factors(coeff: &Value, factors: &[Expr]) -> Expr {
        let mut it = factors.iter().cloned();
        let mut acc = match it.next() {
            None => return value_expr(coeff),
            Some(f) => f,
        };
        for f in it {
            acc = Expr::mul(acc, f);
        }
        if coeff.cmp_tol(&Value::one()).is_eq() && coeff.as_exact().is_some_and(|r| r.is_one()) {
            acc
        } else {
            Expr::mul(value_expr(coeff), acc)
        }
    }

    /// Interval enclosure over a box of coordinates.
    pub fn range(&self, dom: &Dom) -> Interval {
        match self {
            Expr::Num(r) => Interval::point(r.to_f64().unwrap_or(f64::NAN)),
            Expr::Var(v) => {
                let (lo, hi) = dom.get(*v);
                Interval::new(lo, hi)
            }
            Expr::Neg(a) => a.range(dom).neg(),
            Expr::Add(a, c) => a.range(dom).add(c.range(dom)),
            Expr::Sub(a, c) => a.range(dom).add(c.range(dom).neg()),
            Expr::Mul(a, c) => a.range(dom).mul(c.range(dom)),
            Expr::Div(a, c) => a.range(dom).mul(c.range(dom).recip()),
            Expr::Pow(a, k) => a.range(dom).powi(*k),
            Expr::Exp(a) => {
                let r = a.range(dom);
                Interval::new(r.lo.exp(), r.hi.exp())
            }
            Expr::Max(a, c) => {
                let (x, y) = (a.range(dom), c.range(dom));
                Interval::new(x.lo.max(y.lo), x.hi.max(y.hi))
            }
            Expr::Min(a, c) => {
                let (x, y) = (a.range(dom), c.range(dom));
                Interval::new(x.lo.min(y.lo), x.hi.min(y.hi))
            }
            Expr::Abs(a) => a.range(dom).abs(),
            Expr::If(cond, a, c) => {
                let mut acc: Option<Interval> = None;
                for (d, branch) in dom.split(cond) {
                    let e = if branch { a } else { c };
                    let r = e.range(&d);
                    acc = Some(match acc {
                        None => r,
                        Some(x) => x.hull(r),
                    });
                }
                acc.unwrap_or(Interval::FULL)
            }
        }
    }

    /// Monotonicity in `v` over the domain, other coordinates fixed.
    pub fn mono(&self, v: Var, dom: &Dom) -> Mono {
        match self {
            Expr::Num(_) => Mono::Const,
            Expr::Var(x) => {
                if *x == v {
                    Mono::Up
                } else {
                    Mono::Const
                }
            }
            Expr::Neg(a) => a.mono(v, dom).flip(),
            Expr::Add(a, c) => a.mono(v, dom).add(c.mono(v, dom)),
            Expr::Sub(a, c) => a.mono(v, dom).add(c.mono(v, dom).flip()),
            Expr::Mul(a, c) => mul_mono(a.mono(v, dom), a.range(dom), c.mono(v, dom), c.range(dom)),
            Expr::Div(a, c) => {
                let rc = c.range(dom);
                let mc = c.mono(v, dom);
                if mc == Mono::Const {
                    return mul_mono(a.mono(v, dom), a.range(dom), Mono::Const, rc.recip());
                }
                match rc.sign() {
                    Sign::Pos | Sign::Neg => mul_mono(a.mono(v, dom), a.range(dom), mc.flip(), rc.recip()),
                    _ => Mono::Unknown,
                }
            }
            Expr::Pow(a, k) => {
                let ma = a.mono(v, dom);
                if *k == 0 || ma == Mono::Const {
                    return Mono::Const;
                }
                let (m_abs, negated) = match a.range(dom).sign() {
                    Sign::Pos | Sign::NonNeg => (ma, false),
                    Sign::Neg | Sign::NonPos => (ma.flip(), true),
                    Sign::Mixed => return Mono::Unknown,
                };
                let m = if *k > 0 { m_abs } else { m_abs.flip() };
                if negated && k % 2 != 0 {
                    m.flip()
                } else {
                    m
                }
            }
            Expr::Exp(a) => a.mono(v, dom),
            Expr::Max(a, c) | Expr::Min(a, c) => a.mono(v, dom).add(c.mono(v, dom)),
            Expr::Abs(a) => {
                let ma = a.mono(v, dom);
                match a.range(dom).sign() {
                    _ if ma == Mono::Const => Mono::Const,
                    Sign::Pos | Sign::NonNeg => ma,
                    Sign::Neg | Sign::NonPos => ma.flip(),
                    Sign::Mixed => Mono::Unknown,
                }
            }
            Expr::If(cond, a, c) => {
                let parts = dom.split(cond);
                if cond.var != v {
                    return match parts.as_slice() {
                        [(d, br)] => (if *br { a } else { c }).mono(v, d),
                        _ => Mono::Unknown,
                    };
                }
                let mut pieces: Vec<(Dom, &Expr)> =
                    parts.into_iter().map(|(d, br)| (d, if br { &**a } else { &**c })).collect();
                pieces.sort_by(|x, y| x.0.get(v).0.total_cmp(&y.0.get(v).0));
                piecewise_mono(v, &pieces)
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::If(..) => 0,
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(r) if !r.is_integer() || r.is_negative() => 2,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.fmt_prec(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Num(r) => f.write_str(&fmt_rational(r)),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_prec(f, 4)
            }
            Expr::Add(a, c) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" + ")?;
                c.fmt_prec(f, 2)
            }
            Expr::Sub(a, c) => {
                a.fmt_prec(f, 1)?;
                f.write_str(" - ")?;
                c.fmt_prec(f, 2)
            }
            Expr::Mul(a, c) => {
                a.fmt_prec(f, 2)?;
                f.write_str("*")?;
                c.fmt_prec(f, 3)
            }
            Expr::Div(a, c) => {
                a.fmt_prec(f, 2)?;
                f.write_str("/")?;
                c.fmt_prec(f, 3)
            }
            Expr::Pow(a, k) => {
                a.fmt_prec(f, 5)?;
                write!(f, "^{k}")
            }
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Max(a, c) => write!(f, "max({a}, {c})"),
            Expr::Min(a, c) => write!(f, "min({a}, {c})"),
            Expr::Abs(a) => write!(f, "abs({a})"),
            Expr::If(cond, a, c) => {
                write!(f, "if {} {} {} then {a} else {c}", cond.var.name(), cond.op.symbol(), cond.value)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

fn value_expr(v: &Value) -> Expr {
    match v {
        Value::Exact(r) => Expr::Num(r.clone()),
        Value::Approx(l) => {
            let e = Expr::Exp(b(Expr::Num(float_to_rational(l.ln))));
            if l.negative {
                Expr::Neg(b(e))
            } else {
                e
            }
        }
    }
}

fn float_to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Pos,
    NonNeg,
    Neg,
    NonPos,
    Mixed,
}

/// Closed real interval; endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn mul0(a: f64, c: f64) -> f64 {
    if a == 0.0 || c == 0.0 {
        0.0
    } else {
        a * c
    }
}

impl Interval {
    pub const FULL: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Interval {
        if lo.is_nan() || hi.is_nan() {
            Interval::FULL
        } else {
            Interval { lo, hi }
        }
    }

    pub fn point(x: f64) -> Interval {
        Interval::new(x, x)
    }

    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }

    fn add(self, o: Interval) -> Interval {
        Interval::new(self.lo + o.lo, self.hi + o.hi)
    }

    fn mul(self, o: Interval) -> Interval {
        let c = [mul0(self.lo, o.lo), mul0(self.lo, o.hi), mul0(self.hi, o.lo), mul0(self.hi, o.hi)];
        if c.iter().any(|x| x.is_nan()) {
            return Interval::FULL;
        }
        Interval::new(c.iter().copied().fold(f64::INFINITY, f64::min), c.iter().copied().fold(f64::NEG_INFINITY, f64::max))
    }

    fn recip(self) -> Interval {
        if self.lo > 0.0 || self.hi < 0.0 {
            Interval::new(1.0 / self.hi, 1.0 / self.lo)
        } else {
            Interval::FULL
        }
    }

    fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Interval::new(0.0, self.hi.max(-self.lo))
        }
    }

    fn powi(self, k: i32) -> Interval {
        if k == 0 {
            return Interval::point(1.0);
        }
        if k < 0 {
            return self.powi(-k).recip();
        }
        let (a, c) = (self.lo.powi(k), self.hi.powi(k));
        if k % 2 == 1 || self.lo >= 0.0 {
            Interval::new(a, c)
        } else if self.hi <= 0.0 {
            Interval::new(c, a)
        } else {
            Interval::new(0.0, a.max(c))
        }
    }

    fn hull(self, o: Interval) -> Interval {
        Interval::new(self.lo.min(o.lo), self.hi.max(o.hi))
    }

    pub fn sign(self) -> Sign {
        if self.lo > 0.0 {
            Sign::Pos
        } else if self.lo >= 0.0 {
            Sign::NonNeg
        } else if self.hi < 0.0 {
            Sign::Neg
        } else if self.hi <= 0.0 {
            Sign::NonPos
        } else {
            Sign::Mixed
        }
    }
}

/// Integer box of coordinates, endpoints possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dom {
    pub m: (f64, f64),
    pub n: (f64, f64),
}

impl Dom {
    /// `n` ranging over `[lo, hi]`, `m` fixed at `m`.
    pub fn along_n(lo: f64, hi: f64, m: i64) -> Dom {
        Dom { m: (m as f64, m as f64), n: (lo, hi) }
    }

    pub fn get(&self, v: Var) -> (f64, f64) {
        match v {
            Var::M => self.m,
            Var::N => self.n,
        }
    }

    fn with(&self, v: Var, r: (f64, f64)) -> Dom {
        let mut d = *self;
        match v {
            Var::M => d.m = r,
            Var::N => d.n = r,
        }
        d
    }

    /// Nonempty sub-boxes on which the condition is constant, tagged with
    /// its truth value.
    fn split(&self, cond: &Cond) -> Vec<(Dom, bool)> {
        let (lo, hi) = self.get(cond.var);
        let (tlo, thi) = cond.true_range();
        let mut out = Vec::new();
        let mut push = |a: f64, z: f64, t: bool| {
            if a <= z && a < f64::INFINITY && z > f64::NEG_INFINITY {
                out.push((self.with(cond.var, (a, z)), t));
            }
        };
        push(lo, hi.min(tlo - 1.0), false);
        push(lo.max(tlo), hi.min(thi), true);
        push(lo.max(thi + 1.0), hi, false);
        out
    }
}

/// Weak monotonicity along one coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mono {
    Const,
    /// Non-decreasing.
    Up,
    /// Non-increasing.
    Down,
    Unknown,
}

impl Mono {
    pub fn flip(self) -> Mono {
        match self {
            Mono::Up => Mono::Down,
            Mono::Down => Mono::Up,
            m => m,
        }
    }

    fn add(self, o: Mono) -> Mono {
        match (self, o) {
            (Mono::Const, m) | (m, Mono::Const) => m,
            (a, c) if a == c => a,
            _ => Mono::Unknown,
        }
    }

    pub fn is_up(self) -> bool {
        matches!(self, Mono::Up | Mono::Const)
    }

    pub fn is_down(self) -> bool {
        matches!(self, Mono::Down | Mono::Const)
    }
}

fn mul_mono(ma: Mono, ra: Interval, mc: Mono, rc: Interval) -> Mono {
    if ma == Mono::Const && mc == Mono::Const {
        return Mono::Const;
    }
    // Reduce to nonnegative factors, remembering sign flips.
    let norm = |m: Mono, r: Interval| -> Option<(Mono, bool)> {
        match r.sign() {
            Sign::Pos | Sign::NonNeg => Some((m, false)),
            Sign::Neg | Sign::NonPos => Some((m.flip(), true)),
            Sign::Mixed => None,
        }
    };
    let (Some((a, fa)), Some((c, fc))) = (norm(ma, ra), norm(mc, rc)) else {
        return Mono::Unknown;
    };
    let m = a.add(c);
    if fa ^ fc {
        m.flip()
    } else {
        m
    }
}

fn piecewise_mono(v: Var, pieces: &[(Dom, &Expr)]) -> Mono {
    let monos: Vec<Mono> = pieces.iter().map(|(d, e)| e.mono(v, d)).collect();
    let ranges: Vec<Interval> = pieces.iter().map(|(d, e)| e.range(d)).collect();
    let fits = |dir: Mono| -> bool {
        let pieces_ok = monos.iter().all(|m| *m == Mono::Const || *m == dir);
        let joins_ok = ranges.windows(2).all(|w| match dir {
            Mono::Up => w[0].hi <= w[1].lo,
            _ => w[0].lo >= w[1].hi,
        });
        pieces_ok && joins_ok
    };
    match (fits(Mono::Up), fits(Mono::Down)) {
        (true, true) => Mono::Const,
        (true, false) => Mono::Up,
        (false, true) => Mono::Down,
        (false, false) => Mono::Unknown,
    }
}

/// Convenience: float of an exact rational, for diagnostics.
pub fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn n() -> Expr {
        Expr::Var(Var::N)
    }

    fn one_plus_n() -> Expr {
        Expr::Add(b(Expr::num(1)), b(n()))
    }

    fn at(n: i64) -> Point {
        Point { m: 0, n }
    }

    #[test]
    fn exact_evaluation() {
        assert_eq!(one_plus_n().eval(at(4)).unwrap(), Value::Exact(rat(5)));
        let sq = Expr::Add(b(Expr::num(1)), b(Expr::Pow(b(n()), 2)));
        assert_eq!(sq.eval(at(3)).unwrap(), Value::Exact(rat(10)));
        let inv = Expr::Pow(b(n()), -1);
        assert_eq!(inv.eval(at(0)), Err(EvalError::ZeroToNegativePower));
    }

    #[test]
    fn exp_moves_to_log_domain() {
        let e = Expr::Exp(b(Expr::Neg(b(Expr::Var(Var::M)))));
        let v = Expr::mul(e, one_plus_n()).eval(Point { m: 1, n: 2 }).unwrap();
        assert!((v.to_f64() - 3.0 * (-1f64).exp()).abs() < 1e-12);
        let big = Expr::Exp(b(n())).eval(at(5000)).unwrap();
        assert!((big.to_log().ln - 5000.0).abs() < 1e-9);
    }

    #[test]
    fn reflection_flips_conditions() {
        let pw = Expr::If(Cond { var: Var::N, op: CmpOp::Ge, value: 1 }, b(one_plus_n()), b(Expr::num(1)));
        let r = pw.reflect(Var::N);
        for k in -5..=5 {
            assert_eq!(r.eval(at(k)).unwrap(), pw.eval(at(-k)).unwrap());
        }
    }

    #[test]
    fn factors_fold_constants() {
        let e = Expr::mul(Expr::num(2), Expr::Div(b(one_plus_n()), b(Expr::num(3))));
        let (c, fs) = e.factors();
        assert_eq!(c, Value::Exact(crate::num::ratio(2, 3)));
        assert_eq!(fs, vec![one_plus_n()]);
    }

    #[test]
    fn monotonicity_of_piecewise_and_exponential_weights() {
        let nat = Dom::along_n(1.0, f64::INFINITY, 0);
        assert_eq!(one_plus_n().mono(Var::N, &nat), Mono::Up);
        let pw = Expr::If(Cond { var: Var::N, op: CmpOp::Ge, value: 1 }, b(one_plus_n()), b(Expr::num(1)));
        let int = Dom::along_n(f64::NEG_INFINITY, f64::INFINITY, 0);
        assert_eq!(pw.mono(Var::N, &int), Mono::Up);
        let decay = Expr::Exp(b(Expr::Neg(b(n()))));
        assert_eq!(decay.mono(Var::N, &nat), Mono::Down);
        let inv = Expr::Div(b(Expr::num(1)), b(one_plus_n()));
        assert_eq!(inv.mono(Var::N, &nat), Mono::Down);
        let abs = Expr::Add(b(Expr::num(1)), b(Expr::Abs(b(n()))));
        assert_eq!(abs.mono(Var::N, &int), Mono::Unknown);
        assert_eq!(abs.mono(Var::N, &nat), Mono::Up);
    }

    #[test]
    fn display_is_reparseable_shape() {
        let pw = Expr::If(Cond { var: Var::N, op: CmpOp::Ge, value: 1 }, b(one_plus_n()), b(Expr::num(1)));
        assert_eq!(pw.to_string(), "if n >= 1 then 1 + n else 1");
        let e = Expr::mul(Expr::Exp(b(Expr::Neg(b(Expr::Var(Var::M))))), one_plus_n());
        assert_eq!(e.to_string(), "exp(-m)*(1 + n)");
        assert_eq!(Expr::mul(Expr::num(2), pw).to_string(), "2*(if n >= 1 then 1 + n else 1)");
    }
}
