//! Finitely supported vectors written as `2*d(3) + 1/2*d(5)` or `e(3) - e(7)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::num::parse_rational;
use crate::semigroup::{Carrier, Element};

/// Which basis symbol a literal uses: `d` for point masses in ℓ¹, `e` for
/// indicator functions in ℓ^∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VecKind {
    L1,
    LInf,
}

impl VecKind {
    fn symbol(self) -> char {
        match self {
            VecKind::L1 => 'd',
            VecKind::LInf => 'e',
        }
    }
}

/// Parses `3`, `-2` or `(1,2)` and checks membership in the carrier.
pub fn parse_element(text: &str, carrier: &Carrier) -> Result<Element, String> {
    let t = text.trim();
    let e = if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (a, b) = inner.split_once(',').ok_or_else(|| format!("'{t}' is not an element"))?;
        let a = a.trim().parse::<i64>().map_err(|_| format!("'{t}' is not an element"))?;
        let b = b.trim().parse::<i64>().map_err(|_| format!("'{t}' is not an element"))?;
        Element::Pair(a, b)
    } else {
        Element::Scalar(t.parse::<i64>().map_err(|_| format!("'{t}' is not an element"))?)
    };
    if carrier.contains(&e) {
        Ok(e)
    } else {
        Err(format!("{e} is not in {}", carrier.name()))
    }
}

fn parse_coeff(text: &str) -> Option<BigRational> {
    parse_rational(text.trim())
}

/// Parses a vector literal into its support map. Zero coefficients are dropped.
pub fn parse_vector(text: &str, carrier: &Carrier, kind: VecKind) -> Result<BTreeMap<Element, BigRational>, String> {
    let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out: BTreeMap<Element, BigRational> = BTreeMap::new();
    if src.is_empty() {
        return Err("empty vector".into());
    }
    if src == "0" {
        return Ok(out);
    }
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut sign = BigRational::one();
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(format!("expected '+' or '-' at position {}", i + 1));
        }
        let start = i;
        while i < chars.len() && chars[i] != 'd' && chars[i] != 'e' {
            i += 1;
        }
        let coeff_text: String = chars[start..i].iter().collect();
        let coeff = if coeff_text.is_empty() {
            BigRational::one()
        } else {
            let c = coeff_text.strip_suffix('*').unwrap_or(&coeff_text);
            parse_coeff(c).ok_or_else(|| format!("'{c}' is not a rational coefficient"))?
        };
        if i >= chars.len() {
            return Err(format!("missing basis vector after '{coeff_text}'"));
        }
        if chars[i] != kind.symbol() {
            return Err(format!("expected basis symbol '{}', found '{}'", kind.symbol(), chars[i]));
        }
        i += 1;
        if i >= chars.len() || chars[i] != '(' {
            return Err(format!("expected '(' after '{}'", kind.symbol()));
        }
        let open = i;
        let mut depth = 0;
        while i < chars.len() {
            match chars[i] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            i += 1;
        }
        if i >= chars.len() {
            return Err("unbalanced parentheses".into());
        }
        let inner: String = chars[open + 1..i].iter().collect();
        i += 1;
        let e = parse_element(&inner, carrier)?;
        let slot = out.entry(e).or_insert_with(BigRational::zero);
        *slot += sign * coeff;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}
