//! Numeric values: exact rationals, and a sign/log-magnitude float that keeps
//! weights such as `exp(-m)` representable far out along their tails.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Absolute tolerance for floating comparisons.
pub const FLOAT_TOL: f64 = 1e-9;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.abs().to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        let top: BigInt = x.abs() >> (shift as usize);
        top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// A real number stored as sign and natural log of its magnitude.
/// Zero is `ln = -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNum {
    pub negative: bool,
    pub ln: f64,
}

#[allow(clippy::should_implement_trait)]
impl LogNum {
    pub const ZERO: LogNum = LogNum { negative: false, ln: f64::NEG_INFINITY };
    pub const ONE: LogNum = LogNum { negative: false, ln: 0.0 };

    pub fn from_f64(x: f64) -> LogNum {
        LogNum { negative: x < 0.0, ln: x.abs().ln() }
    }

    pub fn from_rational(x: &BigRational) -> LogNum {
        if x.is_zero() {
            return LogNum::ZERO;
        }
        LogNum {
            negative: x.is_negative(),
            ln: ln_bigint(x.numer()) - ln_bigint(x.denom()),
        }
    }

    /// `e^x` for a plain float exponent.
    pub fn exp_of(x: f64) -> LogNum {
        LogNum { negative: false, ln: x }
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    pub fn is_positive(self) -> bool {
        !self.negative && !self.is_zero()
    }

    pub fn to_f64(self) -> f64 {
        let m = self.ln.exp();
        if self.negative {
            -m
        } else {
            m
        }
    }

    pub fn neg(self) -> LogNum {
        if self.is_zero() {
            self
        } else {
            LogNum { negative: !self.negative, ln: self.ln }
        }
    }

    pub fn abs(self) -> LogNum {
        LogNum { negative: false, ln: self.ln }
    }

    pub fn recip(self) -> LogNum {
        LogNum { negative: self.negative, ln: -self.ln }
    }

    pub fn mul(self, o: LogNum) -> LogNum {
        if self.is_zero() || o.is_zero() {
            return LogNum::ZERO;
        }
        LogNum { negative: self.negative ^ o.negative, ln: self.ln + o.ln }
    }

    pub fn div(self, o: LogNum) -> LogNum {
        self.mul(o.recip())
    }

    pub fn add(self, o: LogNum) -> LogNum {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (big, small) = if self.ln >= o.ln { (self, o) } else { (o, self) };
        let d = small.ln - big.ln;
        if big.negative == small.negative {
            LogNum { negative: big.negative, ln: big.ln + d.exp().ln_1p() }
        } else {
            let m = -d.exp_m1();
            if m <= 0.0 {
                LogNum::ZERO
            } else {
                LogNum { negative: big.negative, ln: big.ln + m.ln() }
            }
        }
    }

    pub fn sub(self, o: LogNum) -> LogNum {
        self.add(o.neg())
    }

    pub fn powi(self, k: i32) -> LogNum {
        if k == 0 {
            return LogNum::ONE;
        }
        LogNum {
            negative: self.negative && k % 2 != 0,
            ln: self.ln * k as f64,
        }
    }

    pub fn total_cmp(self, o: LogNum) -> Ordering {
        let key = |x: LogNum| -> (i8, f64) {
            if x.is_zero() {
                (0, 0.0)
            } else if x.negative {
                (-1, -x.ln)
            } else {
                (1, x.ln)
            }
        };
        let (sa, ma) = key(self);
        let (sb, mb) = key(o);
        sa.cmp(&sb).then(ma.partial_cmp(&mb).unwrap_or(Ordering::Equal))
    }

    /// Compares with tolerance: `Equal` when the values agree to within
    /// `FLOAT_TOL` absolutely or relatively.
    pub fn cmp_tol(self, o: LogNum) -> Ordering {
        let a = self.to_f64();
        let b = o.to_f64();
        if a.is_finite() && b.is_finite() {
            let diff = a - b;
            let scale = a.abs().max(b.abs()).max(1.0);
            if diff.abs() <= FLOAT_TOL * scale {
                return Ordering::Equal;
            }
            return if diff < 0.0 { Ordering::Less } else { Ordering::Greater };
        }
        if self.negative == o.negative && (self.ln - o.ln).abs() <= FLOAT_TOL {
            return Ordering::Equal;
        }
        self.total_cmp(o)
    }
}

/// An evaluated quantity: exact whenever every operation on the way was
/// rational, otherwise a log-domain float.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Approx(LogNum),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Exact(rat(n))
    }

    pub fn one() -> Value {
        Value::Exact(BigRational::one())
    }

    pub fn zero() -> Value {
        Value::Exact(BigRational::zero())
    }

    pub fn to_log(&self) -> LogNum {
        match self {
            Value::Exact(r) => LogNum::from_rational(r),
            Value::Approx(l) => *l,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64().unwrap_or_else(|| LogNum::from_rational(r).to_f64()),
            Value::Approx(l) => l.to_f64(),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_positive(),
            Value::Approx(l) => l.is_positive(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Approx(l) => l.is_zero(),
        }
    }

    pub fn approx(self) -> Value {
        Value::Approx(self.to_log())
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(-r),
            Value::Approx(l) => Value::Approx(l.neg()),
        }
    }

    pub fn abs(&self) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(r.abs()),
            Value::Approx(l) => Value::Approx(l.abs()),
        }
    }

    pub fn add(&self, o: &Value) -> Value {
        match (self, o) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Approx(self.to_log().add(o.to_log())),
        }
    }

    pub fn sub(&self, o: &Value) -> Value {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Value) -> Value {
        match (self, o) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => Value::Approx(self.to_log().mul(o.to_log())),
        }
    }

    /// Division; `None` on an exact zero divisor.
    pub fn div(&self, o: &Value) -> Option<Value> {
        if o.is_zero() {
            return None;
        }
        Some(match (self, o) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a / b),
            _ => Value::Approx(self.to_log().div(o.to_log())),
        })
    }

    pub fn recip(&self) -> Option<Value> {
        Value::one().div(self)
    }

    /// Exact comparison when both sides are exact; tolerance-based otherwise.
    pub fn cmp_tol(&self, o: &Value) -> Ordering {
        match (self, o) {
            (Value::Exact(a), Value::Exact(b)) => a.cmp(b),
            _ => self.to_log().cmp_tol(o.to_log()),
        }
    }

    pub fn max(self, o: Value) -> Value {
        if self.cmp_tol(&o) == Ordering::Less {
            o
        } else {
            self
        }
    }

    pub fn min(self, o: Value) -> Value {
        if self.cmp_tol(&o) == Ordering::Greater {
            o
        } else {
            self
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&fmt_rational(r)),
            Value::Approx(l) => f.write_str(&fmt_lognum(*l)),
        }
    }
}

/// Rationals print as `p/q` (or `p` when integral).
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floats print with 12 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let s = format!("{:.11e}", x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("exponent");
    let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
    if (-5..12).contains(&exp) {
        // Re-render in positional notation with the same significant digits.
        let digits = (11 - exp).max(0) as usize;
        let plain = format!("{:.*}", digits, x);
        if plain.contains('.') {
            plain.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            plain
        }
    } else {
        format!("{mantissa}e{exp}")
    }
}

pub fn fmt_lognum(l: LogNum) -> String {
    let x = l.to_f64();
    if x.is_finite() && (x != 0.0 || l.is_zero()) {
        fmt_f64(x)
    } else {
        let sign = if l.negative { "-" } else { "" };
        format!("{sign}exp({})", fmt_f64(l.ln))
    }
}

/// Parses a decimal literal such as `12`, `-0.25` or `1e-3` exactly.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    if exp.abs() > 4000 {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(numer);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// Parses `p/q`, an integer, or a decimal literal.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_decimal(p)?;
        let q = parse_decimal(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(p / q);
    }
    parse_decimal(s)
}

pub fn is_negative_sign(x: &BigRational) -> bool {
    x.numer().sign() == Sign::Minus
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lognum_arithmetic_matches_floats() {
        let a = LogNum::from_f64(3.0);
        let b = LogNum::from_f64(-5.0);
        assert!((a.add(b).to_f64() + 2.0).abs() < 1e-12);
        assert!((a.mul(b).to_f64() + 15.0).abs() < 1e-12);
        assert!((b.div(a).to_f64() + 5.0 / 3.0).abs() < 1e-12);
        assert!(a.sub(a).is_zero());
        assert!((b.powi(3).to_f64() + 125.0).abs() < 1e-9);
    }

    #[test]
    fn lognum_survives_huge_exponents() {
        let tiny = LogNum::exp_of(-4_000_000.0);
        let big = tiny.recip();
        assert!(tiny.is_positive());
        assert_eq!(big.total_cmp(LogNum::ONE), Ordering::Greater);
        assert_eq!(fmt_lognum(big), "exp(4000000)");
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal("1e-3"), Some(ratio(1, 1000)));
        assert_eq!(parse_decimal("-0.25"), Some(ratio(-1, 4)));
        assert_eq!(parse_rational("1/3"), Some(ratio(1, 3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_decimal("."), None);
        assert_eq!(parse_decimal("1e99999"), None);
    }

    #[test]
    fn float_format_uses_twelve_digits() {
        assert_eq!(fmt_f64(3.0 * (-1.0f64).exp()), "1.10363832351");
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(1e-7), "1e-7");
        assert_eq!(fmt_f64(2.0), "2");
        assert_eq!(fmt_rational(&ratio(-2, 3)), "-2/3");
    }

    #[test]
    fn rational_ln_handles_big_integers() {
        let big = BigRational::from_integer(num_traits::pow(BigInt::from(2), 4000));
        let l = LogNum::from_rational(&big);
        assert!((l.ln - 4000.0 * std::f64::consts::LN_2).abs() < 1e-6);
    }
}
