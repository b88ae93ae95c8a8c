//! Sectioned key-value problem definitions.
//!
//! ```text
//! [semigroup] family="min" carrier="nat"
//! [weight]    expr="1+n" tail="zero"
//! [check]     pairs="(1,1) (2,3)" tail_budget=4096
//! ```
//!
//! Several `key=value` pairs may share a line. Values are double-quoted
//! strings (with `\"` and `\\` escapes) or bare tokens; `#` starts a comment.

mod expr;
mod vector;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use crate::num::{parse_decimal, ratio};
use crate::semigroup::{Carrier, Direction, Element, Family, Semigroup, Table};
use crate::weight::{TailClass, Var, Weight, WeightError, WeightOptions, DEFAULT_TAIL_BUDGET};

pub use expr::{parse_expr, parse_expr_at};
pub use vector::{parse_element, parse_vector, VecKind};

/// Default number of `(s, t)` pairs examined.
pub const DEFAULT_PAIR_BUDGET: usize = 25;
const MAX_TABLE_ORDER: usize = 256;

/// A positioned error. Line and column are 1-based; line 0 refers to
/// command-line overrides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub code: &'static str,
    pub message: String,
}

impl Diagnostic {
    pub fn new(line: usize, col: usize, code: &'static str, message: impl Into<String>) -> Diagnostic {
        Diagnostic { line, col, code, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: [{}] {}", self.line, self.col, self.code, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    value: String,
    line: usize,
    key_col: usize,
    value_col: usize,
}

type Section = BTreeMap<String, Entry>;

const SECTIONS: [&str; 4] = ["semigroup", "weight", "weight2", "check"];
const SEMIGROUP_KEYS: [&str; 12] = [
    "family",
    "carrier",
    "size",
    "table",
    "left",
    "right",
    "left_carrier",
    "right_carrier",
    "left_size",
    "right_size",
    "left_table",
    "right_table",
];
const WEIGHT_KEYS: [&str; 9] =
    ["expr", "tail", "tail_pos", "tail_neg", "tail_m_pos", "tail_m_neg", "tail_n_pos", "tail_n_neg", "tail_diag"];
const CHECK_KEYS: [&str; 5] = ["pairs", "budget", "tail_budget", "epsilons", "arithmetic"];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSpec {
    /// Explicit pairs; `None` means the default diagonal enumeration.
    pub pairs: Option<Vec<(Element, Element)>>,
    pub budget: usize,
    pub tail_budget: i64,
    pub epsilons: Vec<BigRational>,
    pub exact: bool,
}

impl Default for CheckSpec {
    fn default() -> Self {
        CheckSpec {
            pairs: None,
            budget: DEFAULT_PAIR_BUDGET,
            tail_budget: DEFAULT_TAIL_BUDGET,
            epsilons: vec![ratio(1, 10), ratio(1, 1000), ratio(1, 1_000_000)],
            exact: true,
        }
    }
}

/// Values that replace or add `[check]` keys, e.g. from command-line flags.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub entries: Vec<(String, String)>,
}

impl Overrides {
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.push((key.to_string(), value.into()));
    }
}

#[derive(Debug, Clone)]
pub struct ProblemConfig {
    pub semigroup: Semigroup,
    pub weight: Weight,
    pub weight2: Option<Weight>,
    pub check: CheckSpec,
    sections: BTreeMap<String, Section>,
}

impl PartialEq for ProblemConfig {
    fn eq(&self, other: &Self) -> bool {
        self.echo() == other.echo() && self.check == other.check
    }
}

impl ProblemConfig {
    /// `section -> key -> value`, sorted.
    pub fn echo(&self) -> BTreeMap<String, BTreeMap<String, String>> {
        self.sections
            .iter()
            .map(|(s, sec)| (s.clone(), sec.iter().map(|(k, e)| (k.clone(), e.value.clone())).collect()))
            .collect()
    }

    /// Canonical text that parses back to an equal config.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in SECTIONS {
            let Some(sec) = self.sections.get(name) else { continue };
            out.push_str(&format!("[{name}]\n"));
            for (k, e) in sec {
                out.push_str(&format!("{k} = \"{}\"\n", e.value.replace('\\', "\\\\").replace('"', "\\\"")));
            }
        }
        out
    }
}

fn tokenize(text: &str) -> Result<BTreeMap<String, Section>, Vec<Diagnostic>> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current: Option<String> = None;
    let mut diags = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        loop {
            skip_ws(&mut i);
            if i >= chars.len() || chars[i] == '#' {
                break;
            }
            let start = i;
            if chars[i] == '[' {
                let close = chars[i..].iter().position(|c| *c == ']').map(|p| p + i);
                let Some(close) = close else {
                    diags.push(Diagnostic::new(line_no, start + 1, "syntax", "unterminated section header"));
                    break;
                };
                let name: String = chars[i + 1..close].iter().collect::<String>().trim().to_string();
                if !SECTIONS.contains(&name.as_str()) {
                    diags.push(Diagnostic::new(line_no, start + 2, "unknown-section", format!("unknown section [{name}]")));
                    current = None;
                } else if sections.contains_key(&name) {
                    diags.push(Diagnostic::new(line_no, start + 1, "duplicate", format!("section [{name}] appears twice")));
                    current = None;
                } else {
                    sections.insert(name.clone(), Section::new());
                    current = Some(name);
                }
                i = close + 1;
                continue;
            }
            if !(chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                diags.push(Diagnostic::new(line_no, i + 1, "syntax", format!("expected a key, found '{}'", chars[i])));
                break;
            }
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let key: String = chars[start..i].iter().collect();
            skip_ws(&mut i);
            if i >= chars.len() || chars[i] != '=' {
                diags.push(Diagnostic::new(line_no, i + 1, "syntax", format!("expected '=' after key '{key}'")));
                break;
            }
            i += 1;
            skip_ws(&mut i);
            let value_col;
            let mut value = String::new();
            if i < chars.len() && chars[i] == '"' {
                i += 1;
                value_col = i + 1;
                let mut closed = false;
                while i < chars.len() {
                    match chars[i] {
                        '"' => {
                            closed = true;
                            i += 1;
                            break;
                        }
                        '\\' if i + 1 < chars.len() && (chars[i + 1] == '"' || chars[i + 1] == '\\') => {
                            value.push(chars[i + 1]);
                            i += 2;
                        }
                        c => {
                            value.push(c);
                            i += 1;
                        }
                    }
                }
                if !closed {
                    diags.push(Diagnostic::new(line_no, value_col - 1, "syntax", "unterminated string"));
                    break;
                }
            } else {
                value_col = i + 1;
                while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '#' && chars[i] != '"' {
                    value.push(chars[i]);
                    i += 1;
                }
                if value.is_empty() {
                    diags.push(Diagnostic::new(line_no, i + 1, "syntax", format!("missing value for key '{key}'")));
                    break;
                }
            }
            let Some(sec_name) = current.as_ref() else {
                diags.push(Diagnostic::new(line_no, start + 1, "syntax", format!("key '{key}' outside a known section")));
                continue;
            };
            let allowed: &[&str] = match sec_name.as_str() {
                "semigroup" => &SEMIGROUP_KEYS,
                "check" => &CHECK_KEYS,
                _ => &WEIGHT_KEYS,
            };
            if !allowed.contains(&key.as_str()) {
                diags.push(Diagnostic::new(line_no, start + 1, "unknown-key", format!("unknown key '{key}' in [{sec_name}]")));
                continue;
            }
            let sec = sections.get_mut(sec_name).expect("current section exists");
            if sec.contains_key(&key) {
                diags.push(Diagnostic::new(line_no, start + 1, "duplicate", format!("key '{key}' set twice in [{sec_name}]")));
                continue;
            }
            sec.insert(key, Entry { value, line: line_no, key_col: start + 1, value_col });
        }
    }
    if diags.is_empty() {
        Ok(sections)
    } else {
        Err(diags)
    }
}

fn at(e: &Entry, code: &'static str, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(e.line, e.value_col, code, msg)
}

fn section_pos(sections: &BTreeMap<String, Section>, name: &str) -> (usize, usize) {
    sections
        .get(name)
        .and_then(|s| s.values().map(|e| (e.line, e.key_col)).min())
        .unwrap_or((1, 1))
}

fn scalar_carrier(name: &str, size: Option<usize>) -> Option<Carrier> {
    match name {
        "nat" => Some(Carrier::Nat),
        "int" => Some(Carrier::Int),
        "finite" => size.map(Carrier::Finite),
        _ => None,
    }
}

fn pair_names(name: &str) -> Option<(&'static str, &'static str)> {
    Some(match name {
        "nat_pair" => ("nat", "nat"),
        "int_pair" => ("int", "int"),
        "nat_int" => ("nat", "int"),
        "int_nat" => ("int", "nat"),
        _ => return None,
    })
}

fn parse_table(e: &Entry) -> Result<Table, Diagnostic> {
    let mut rows = Vec::new();
    for row in e.value.split(';') {
        let row = row.trim();
        if row.is_empty() {
            continue;
        }
        let mut r = Vec::new();
        for tok in row.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: usize = tok.parse().map_err(|_| at(e, "value", format!("table entry '{tok}' is not an index")))?;
            r.push(v);
        }
        rows.push(r);
        if rows.len() > MAX_TABLE_ORDER {
            return Err(at(e, "value", format!("tables are limited to order {MAX_TABLE_ORDER}")));
        }
    }
    Table::from_rows(rows).map_err(|err| at(e, "table", err.to_string()))
}

fn parse_size(e: Option<&Entry>) -> Result<Option<usize>, Diagnostic> {
    match e {
        None => Ok(None),
        Some(e) => match e.value.parse::<usize>() {
            Ok(n) if (1..=MAX_TABLE_ORDER).contains(&n) => Ok(Some(n)),
            _ => Err(at(e, "value", format!("size must be an integer in 1..={MAX_TABLE_ORDER}"))),
        },
    }
}

/// Builds one factor (or the whole semigroup when `prefix` is empty).
fn build_simple(
    sec: &Section,
    family_key: &str,
    prefix: &str,
    default_carrier: Option<&str>,
    pos: (usize, usize),
) -> Result<Semigroup, Diagnostic> {
    let fam = sec.get(family_key).ok_or_else(|| {
        Diagnostic::new(pos.0, pos.1, "missing", format!("[semigroup] needs key '{family_key}'"))
    })?;
    let table_key = format!("{prefix}table");
    if fam.value == "table" {
        let t = sec
            .get(&table_key)
            .ok_or_else(|| at(fam, "missing", format!("family \"table\" needs key '{table_key}'")))?;
        let table = parse_table(t)?;
        return Semigroup::from_table(table).map_err(|err| at(t, "non-associative", err.to_string()));
    }
    let family = Family::from_name(&fam.value).ok_or_else(|| {
        at(fam, "unknown-family", format!("unknown family \"{}\"; expected max, min, plus, left_zero, right_zero, table or product", fam.value))
    })?;
    let carrier_key = format!("{prefix}carrier");
    let size = parse_size(sec.get(&format!("{prefix}size")))?;
    let (cname, centry) = match sec.get(&carrier_key) {
        Some(e) => (e.value.as_str(), Some(e)),
        None => match default_carrier {
            Some(d) => (d, None),
            None => {
                return Err(at(fam, "missing", format!("family \"{}\" needs key '{carrier_key}'", fam.value)));
            }
        },
    };
    let carrier = scalar_carrier(cname, size).ok_or_else(|| {
        let e = centry.unwrap_or(fam);
        if cname == "finite" {
            at(e, "missing", format!("carrier \"finite\" needs key '{prefix}size'"))
        } else {
            at(e, "value", format!("unknown carrier \"{cname}\" for family \"{}\"", fam.value))
        }
    })?;
    Semigroup::builtin(family, carrier).map_err(|err| at(centry.unwrap_or(fam), "unsupported", err.to_string()))
}

fn build_semigroup(sections: &BTreeMap<String, Section>) -> Result<Semigroup, Diagnostic> {
    let pos = section_pos(sections, "semigroup");
    let Some(sec) = sections.get("semigroup") else {
        return Err(Diagnostic::new(1, 1, "missing", "missing [semigroup] section"));
    };
    match sec.get("family") {
        Some(f) if f.value == "product" => {
            let names = match sec.get("carrier") {
                Some(c) => Some(pair_names(&c.value).ok_or_else(|| {
                    at(c, "value", format!("product carrier must be nat_pair, int_pair, nat_int or int_nat, not \"{}\"", c.value))
                })?),
                None => None,
            };
            let a = build_simple(sec, "left", "left_", names.map(|n| n.0), pos)?;
            let b = build_simple(sec, "right", "right_", names.map(|n| n.1), pos)?;
            Semigroup::product(a, b).map_err(|err| at(f, "unsupported", err.to_string()))
        }
        _ => build_simple(sec, "family", "", None, pos),
    }
}

fn weight_code(err: &WeightError) -> &'static str {
    match err {
        WeightError::NonPositive { .. } | WeightError::Eval { .. } => "non-positive",
        WeightError::Contradiction { .. } => "annotation",
        WeightError::MissingAnnotation(_) => "missing-annotation",
        WeightError::VariableMismatch { .. } => "variables",
        _ => "weight",
    }
}

fn build_weight(
    sections: &BTreeMap<String, Section>,
    name: &str,
    carrier: &Carrier,
    opts: WeightOptions,
) -> Result<Weight, Diagnostic> {
    let pos = section_pos(sections, name);
    let sec = sections.get(name).ok_or_else(|| Diagnostic::new(pos.0, pos.1, "missing", format!("missing [{name}] section")))?;
    let e = sec
        .get("expr")
        .ok_or_else(|| Diagnostic::new(pos.0, pos.1, "missing", format!("[{name}] needs key 'expr'")))?;
    let expr = parse_expr_at(&e.value, e.line, e.value_col)?;
    let vars = expr.vars();
    if !carrier.is_scalar() && !vars.is_empty() && !(vars.contains(&Var::M) && vars.contains(&Var::N)) {
        return Err(at(e, "variables", format!("variable set {{m,n}} required for carrier {}", carrier.name())));
    }
    if carrier.is_scalar() && vars.contains(&Var::M) {
        return Err(at(e, "variables", format!("carrier {} has the single variable n", carrier.name())));
    }
    let mut declared = BTreeMap::new();
    let mut entry_of = BTreeMap::new();
    for d in carrier.directions() {
        let key = format!("tail_{}", d.key());
        let ent = sec.get(&key).or_else(|| sec.get("tail"));
        if let Some(ent) = ent {
            let class = TailClass::from_name(&ent.value).ok_or_else(|| {
                at(ent, "value", format!("unknown tail class \"{}\"; expected zero, bounded, unbounded or unknown", ent.value))
            })?;
            declared.insert(d, class);
            entry_of.insert(d.key().to_string(), ent);
        } else if d != Direction::Diag {
            return Err(Diagnostic::new(
                pos.0,
                pos.1,
                "missing-annotation",
                format!("[{name}] needs key '{key}' (or 'tail') for carrier {}", carrier.name()),
            ));
        }
    }
    for (k, ent) in sec {
        if k.starts_with("tail_") && !carrier.directions().iter().any(|d| format!("tail_{}", d.key()) == *k) {
            return Err(at(ent, "unknown-key", format!("'{k}' is not a direction of carrier {}", carrier.name())));
        }
    }
    Weight::new(expr, carrier.clone(), &declared, opts).map_err(|err| {
        let target = match &err {
            WeightError::Contradiction { direction, .. } => entry_of.get(direction).copied().unwrap_or(e),
            _ => e,
        };
        at(target, weight_code(&err), err.to_string())
    })
}

fn parse_int<T: std::str::FromStr + PartialOrd + fmt::Display>(e: &Entry, lo: T, hi: T) -> Result<T, Diagnostic> {
    match e.value.trim().parse::<T>() {
        Ok(v) if v >= lo && v <= hi => Ok(v),
        _ => Err(at(e, "value", format!("expected an integer in {lo}..={hi}"))),
    }
}

/// Parses a list such as `(1,1) (2,3)` or `((2,2),(1,2)); ((1,1),(1,1))`.
pub fn parse_pairs(text: &str, carrier: &Carrier) -> Result<Vec<(Element, Element)>, (usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let skip = |i: &mut usize| {
        while *i < chars.len() && (chars[*i].is_whitespace() || chars[*i] == ',' || chars[*i] == ';') {
            *i += 1;
        }
    };
    loop {
        skip(&mut i);
        if i >= chars.len() {
            break;
        }
        if chars[i] != '(' {
            return Err((i, "expected '(' to start a pair".into()));
        }
        let mut depth = 0;
        let start = i;
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
            return Err((start, "unbalanced parentheses".into()));
        }
        let inner: String = chars[start + 1..i].iter().collect();
        i += 1;
        let split = top_level_comma(&inner).ok_or((start, "a pair needs two elements".to_string()))?;
        let a = parse_element(inner[..split].trim(), carrier).map_err(|m| (start, m))?;
        let b = parse_element(inner[split + 1..].trim(), carrier).map_err(|m| (start, m))?;
        out.push((a, b));
    }
    if out.is_empty() {
        return Err((0, "empty pair list".into()));
    }
    Ok(out)
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn build_check(sections: &BTreeMap<String, Section>, carrier: &Carrier) -> Result<CheckSpec, Diagnostic> {
    let mut spec = CheckSpec::default();
    let Some(sec) = sections.get("check") else { return Ok(spec) };
    if let Some(e) = sec.get("budget") {
        spec.budget = parse_int(e, 1usize, 1_000_000)?;
    }
    if let Some(e) = sec.get("tail_budget") {
        spec.tail_budget = parse_int(e, 2i64, 1i64 << 40)?;
    }
    if let Some(e) = sec.get("arithmetic") {
        spec.exact = match e.value.as_str() {
            "exact" => true,
            "float" => false,
            other => return Err(at(e, "value", format!("arithmetic must be exact or float, not \"{other}\""))),
        };
    }
    if let Some(e) = sec.get("epsilons") {
        let mut eps = Vec::new();
        for tok in e.value.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            match parse_decimal(tok) {
                Some(v) if v.is_positive() => eps.push(v),
                _ => return Err(at(e, "value", format!("epsilon '{tok}' is not a positive number"))),
            }
        }
        if eps.is_empty() {
            return Err(at(e, "value", "epsilon list is empty"));
        }
        eps.sort();
        eps.reverse();
        eps.dedup();
        spec.epsilons = eps;
    }
    if let Some(e) = sec.get("pairs") {
        let pairs = parse_pairs(&e.value, carrier)
            .map_err(|(p, m)| Diagnostic::new(e.line, e.value_col + p, "value", m))?;
        spec.pairs = Some(pairs);
    }
    Ok(spec)
}

/// Parses and validates a problem definition.
pub fn parse_config(text: &str) -> Result<ProblemConfig, Vec<Diagnostic>> {
    parse_config_with(text, &Overrides::default())
}

/// Like [`parse_config`], with `[check]` keys replaced by `overrides`.
pub fn parse_config_with(text: &str, overrides: &Overrides) -> Result<ProblemConfig, Vec<Diagnostic>> {
    let mut sections = tokenize(text)?;
    for (k, v) in &overrides.entries {
        if !CHECK_KEYS.contains(&k.as_str()) {
            return Err(vec![Diagnostic::new(0, 0, "unknown-key", format!("cannot override '{k}'"))]);
        }
        sections.entry("check".into()).or_default().insert(
            k.clone(),
            Entry { value: v.clone(), line: 0, key_col: 0, value_col: 0 },
        );
    }
    let one = |d: Diagnostic| vec![d];
    let semigroup = build_semigroup(&sections).map_err(one)?;
    let carrier = semigroup.carrier().clone();
    let check = build_check(&sections, &carrier).map_err(one)?;
    let opts = WeightOptions { tail_budget: check.tail_budget, exact: check.exact };
    let weight = if carrier.is_finite() && !sections.contains_key("weight") {
        Weight::one(carrier.clone())
    } else {
        build_weight(&sections, "weight", &carrier, opts).map_err(one)?
    };
    let weight2 = if sections.contains_key("weight2") {
        Some(build_weight(&sections, "weight2", &carrier, opts).map_err(one)?)
    } else {
        None
    };
    Ok(ProblemConfig { semigroup, weight, weight2, check, sections })
}

/// Parses raw bytes, reporting invalid UTF-8 at its position.
pub fn parse_config_bytes(bytes: &[u8]) -> Result<ProblemConfig, Vec<Diagnostic>> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_config(text),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).unwrap_or("");
            let line = valid.matches('\n').count() + 1;
            let col = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(vec![Diagnostic::new(line, col, "utf8", "input is not valid UTF-8")])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Value;

    #[test]
    fn example_one_inputs() {
        let cfg = parse_config("[semigroup] family=\"min\" carrier=\"nat\" [weight] expr=\"1+n\" tail=\"zero\"").unwrap();
        assert_eq!(cfg.semigroup.describe(), "(N, min)");
        assert_eq!(cfg.weight.eval(&Element::Scalar(4)).unwrap(), Value::int(5));
        assert_eq!(cfg.weight.class(Direction::Pos), TailClass::Zero);
    }

    #[test]
    fn pair_carrier_requires_both_variables() {
        let d = parse_config(
            "[semigroup]\nfamily=\"product\" left=\"plus\" right=\"right_zero\" carrier=\"nat_pair\"\n[weight]\nexpr=\"1+n\" tail=\"zero\"\n",
        )
        .unwrap_err();
        assert_eq!(d[0].code, "variables");
        assert!(d[0].message.contains("{m,n}"));
        assert_eq!((d[0].line, d[0].col), (4, 7));
    }

    #[test]
    fn piecewise_weight_on_integers() {
        let cfg = parse_config(
            "[semigroup]\nfamily=\"min\" carrier=\"int\"\n[weight]\nexpr=\"if n>=1 then 1+n else 1\" tail_pos=\"zero\" tail_neg=\"bounded\"\n",
        )
        .unwrap();
        assert_eq!(cfg.weight.eval(&Element::Scalar(-3)).unwrap(), Value::one());
        assert_eq!(cfg.weight.eval(&Element::Scalar(3)).unwrap(), Value::int(4));
    }

    #[test]
    fn diagnostics_are_positioned() {
        let cases = [
            ("[semigroup]\nfamily=\"maxx\" carrier=\"nat\"\n", "unknown-family", 2, 9),
            ("[semigroup]\nfamily=\"table\" table=\"1 0; 0 0\"\n", "non-associative", 2, 23),
            ("[semigroup] family=max carrier=nat\n[weight] expr=\"n-2\" tail=zero\n", "non-positive", 2, 16),
            ("[semigroup] family=max carrier=nat\n[weight] expr=\"1+n\" tail=bounded\n", "annotation", 2, 26),
            ("[semigroup] family=max carrier=nat\n[weight] expr=\"1+n\"\n", "missing-annotation", 2, 10),
            ("[semigroup] family=max carrier=nat\n[weight] expr=\"1+\" tail=zero\n", "syntax", 2, 18),
            ("[bogus]\n", "unknown-section", 1, 2),
            ("[semigroup] family=max carrier=nat\n[weight] expr=1 tail=bounded\n[check] pairs=\"(1,\"\n", "value", 3, 16),
        ];
        for (text, code, line, col) in cases {
            let d = parse_config(text).unwrap_err();
            assert_eq!((d[0].code, d[0].line, d[0].col), (code, line, col), "{text:?}: {}", d[0]);
        }
    }

    #[test]
    fn round_trip_through_text() {
        let text = "# comment\n[semigroup]\nfamily = \"product\"  left=plus right=right_zero carrier=nat_pair\n[weight]\nexpr=\"exp(-m)*(1+n)\" tail_m_pos=unbounded tail_n_pos=zero\n[check]\npairs=\"((2,2),(1,2))\" epsilons=\"0.1 0.001\"\n";
        let cfg = parse_config(text).unwrap();
        let again = parse_config(&cfg.to_text()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.check.pairs.as_ref().unwrap()[0], (Element::Pair(2, 2), Element::Pair(1, 2)));
    }

    #[test]
    fn invalid_utf8_is_positioned() {
        let d = parse_config_bytes(b"[semigroup]\nfa\xffmily").unwrap_err();
        assert_eq!((d[0].line, d[0].col, d[0].code), (2, 3, "utf8"));
    }

    #[test]
    fn finite_tables_need_no_weight() {
        let cfg = parse_config("[semigroup] family=table table=\"0 0; 1 1\"").unwrap();
        assert_eq!(cfg.weight.eval(&Element::Scalar(1)).unwrap(), Value::one());
    }

    #[test]
    fn overrides_replace_check_keys() {
        let mut o = Overrides::default();
        o.set("budget", "7");
        let cfg = parse_config_with("[semigroup] family=max carrier=nat\n[weight] expr=1 tail=bounded", &o).unwrap();
        assert_eq!(cfg.check.budget, 7);
    }
}
