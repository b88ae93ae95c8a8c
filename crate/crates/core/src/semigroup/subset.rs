//! Finitely describable subsets of a carrier.

use std::collections::BTreeSet;
use std::fmt;

use super::{Carrier, Direction, Element};

/// A subset of a carrier described symbolically. Normalized descriptors are
/// produced by [`SubsetDesc::normalize`]; every constructor in this crate
/// returns normalized values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubsetDesc {
    Empty,
    /// Sorted, duplicate-free, nonempty.
    Finite(Vec<Element>),
    /// The carrier minus a sorted, duplicate-free list.
    Cofinite(Vec<Element>),
    /// `{from, from+1, ...}` on a one-dimensional infinite carrier.
    Tail(i64),
    /// `{..., to-1, to}` on the integers.
    Head(i64),
    /// Cartesian product of subsets of the two factor carriers.
    Product(Box<SubsetDesc>, Box<SubsetDesc>),
    /// Finite union of normalized parts, at least two.
    Union(Vec<SubsetDesc>),
    /// Members known up to a magnitude bound; beyond it membership is open
    /// unless `exhausted`.
    Enumerated {
        prefix: Vec<Element>,
        bound: i64,
        exhausted: bool,
    },
}

/// One-dimensional normal form: `{x <= head} ∪ {x >= tail} ∪ points`.
#[derive(Debug, Default, Clone)]
struct Line {
    head: Option<i64>,
    tail: Option<i64>,
    points: BTreeSet<i64>,
}

impl Line {
    fn merge(&mut self, other: Line) {
        self.head = match (self.head, other.head) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.points.extend(other.points);
    }
}

fn scalar(e: &Element) -> Option<i64> {
    match e {
        Element::Scalar(v) => Some(*v),
        Element::Pair(..) => None,
    }
}

fn scalars(v: &[Element]) -> impl Iterator<Item = i64> + '_ {
    v.iter().filter_map(scalar)
}

fn sorted_dedup(mut v: Vec<Element>) -> Vec<Element> {
    v.sort();
    v.dedup();
    v
}

impl SubsetDesc {
    pub fn full() -> SubsetDesc {
        SubsetDesc::Cofinite(Vec::new())
    }

    pub fn finite(elems: impl IntoIterator<Item = Element>) -> SubsetDesc {
        let v = sorted_dedup(elems.into_iter().collect());
        if v.is_empty() {
            SubsetDesc::Empty
        } else {
            SubsetDesc::Finite(v)
        }
    }

    pub fn singleton(e: Element) -> SubsetDesc {
        SubsetDesc::Finite(vec![e])
    }

    pub fn product(a: SubsetDesc, b: SubsetDesc) -> SubsetDesc {
        SubsetDesc::Product(Box::new(a), Box::new(b))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SubsetDesc::Empty)
    }

    fn to_line(&self, carrier: &Carrier) -> Option<Line> {
        let mut line = Line::default();
        match self {
            SubsetDesc::Empty => {}
            SubsetDesc::Finite(v) => line.points.extend(scalars(v)),
            SubsetDesc::Tail(a) => line.tail = Some(*a),
            SubsetDesc::Head(a) => line.head = Some(*a),
            SubsetDesc::Cofinite(excl) => {
                let excl: BTreeSet<i64> = scalars(excl).collect();
                match carrier {
                    Carrier::Finite(n) => {
                        line.points.extend((0..*n as i64).filter(|x| !excl.contains(x)));
                    }
                    Carrier::Nat => {
                        let top = excl.iter().next_back().copied().unwrap_or(0).max(0);
                        line.tail = Some(top + 1);
                        line.points.extend((1..=top).filter(|x| !excl.contains(x)));
                    }
                    Carrier::Int => {
                        match (excl.iter().next(), excl.iter().next_back()) {
                            (Some(&lo), Some(&hi)) => {
                                line.head = Some(lo - 1);
                                line.tail = Some(hi + 1);
                                line.points.extend((lo..=hi).filter(|x| !excl.contains(x)));
                            }
                            _ => {
                                line.head = Some(0);
                                line.tail = Some(1);
                            }
                        }
                    }
                    Carrier::Product(..) => return None,
                }
            }
            SubsetDesc::Union(parts) => {
                for p in parts {
                    line.merge(p.to_line(carrier)?);
                }
            }
            SubsetDesc::Enumerated { prefix, exhausted: true, .. } => {
                line.points.extend(scalars(prefix))
            }
            SubsetDesc::Enumerated { .. } | SubsetDesc::Product(..) => return None,
        }
        Some(line)
    }

    fn from_line(mut line: Line, carrier: &Carrier) -> SubsetDesc {
        match carrier {
            Carrier::Finite(n) => {
                let n = *n as i64;
                let mut pts: BTreeSet<i64> = line.points.into_iter().filter(|x| (0..n).contains(x)).collect();
                if let Some(h) = line.head {
                    pts.extend(0..=h.min(n - 1));
                }
                if let Some(t) = line.tail {
                    pts.extend(t.max(0)..n);
                }
                SubsetDesc::finite(pts.into_iter().map(Element::Scalar))
            }
            Carrier::Nat => {
                if let Some(h) = line.head {
                    line.points.extend(1..=h);
                }
                line.points.retain(|&x| x >= 1);
                match line.tail {
                    None => SubsetDesc::finite(line.points.into_iter().map(Element::Scalar)),
                    Some(t) => {
                        let mut t = t.max(1);
                        while t > 1 && line.points.contains(&(t - 1)) {
                            t -= 1;
                        }
                        let below: Vec<i64> = line.points.range(..t).copied().collect();
                        if t == 1 {
                            SubsetDesc::full()
                        } else if below.is_empty() {
                            SubsetDesc::Tail(t)
                        } else {
                            let set: BTreeSet<i64> = below.into_iter().collect();
                            SubsetDesc::Cofinite(
                                (1..t).filter(|x| !set.contains(x)).map(Element::Scalar).collect(),
                            )
                        }
                    }
                }
            }
            Carrier::Int => {
                let Line { head, tail, points } = line;
                let mut head = head;
                let mut tail = tail;
                if let Some(t) = tail.as_mut() {
                    while points.contains(&(*t - 1)) && head.is_none_or(|h| *t - 1 > h) {
                        *t -= 1;
                    }
                }
                if let Some(h) = head.as_mut() {
                    while points.contains(&(*h + 1)) && tail.is_none_or(|t| *h + 1 < t) {
                        *h += 1;
                    }
                }
                let mid: Vec<i64> = points
                    .into_iter()
                    .filter(|&x| head.is_none_or(|h| x > h) && tail.is_none_or(|t| x < t))
                    .collect();
                match (head, tail) {
                    (Some(h), Some(t)) => {
                        if h + 1 >= t {
                            SubsetDesc::full()
                        } else {
                            let set: BTreeSet<i64> = mid.into_iter().collect();
                            SubsetDesc::Cofinite(
                                (h + 1..t).filter(|x| !set.contains(x)).map(Element::Scalar).collect(),
                            )
                        }
                    }
                    (None, Some(t)) => {
                        if mid.is_empty() {
                            SubsetDesc::Tail(t)
                        } else {
                            SubsetDesc::Union(vec![
                                SubsetDesc::finite(mid.into_iter().map(Element::Scalar)),
                                SubsetDesc::Tail(t),
                            ])
                        }
                    }
                    (Some(h), None) => {
                        if mid.is_empty() {
                            SubsetDesc::Head(h)
                        } else {
                            SubsetDesc::Union(vec![
                                SubsetDesc::Head(h),
                                SubsetDesc::finite(mid.into_iter().map(Element::Scalar)),
                            ])
                        }
                    }
                    (None, None) => SubsetDesc::finite(mid.into_iter().map(Element::Scalar)),
                }
            }
            Carrier::Product(..) => unreachable!("line form is one-dimensional"),
        }
    }

    /// Canonical form relative to `carrier`.
    pub fn normalize(self, carrier: &Carrier) -> SubsetDesc {
        match carrier {
            Carrier::Product(ca, cb) => self.normalize_pair(ca, cb),
            _ => match self.to_line(carrier) {
                Some(line) => SubsetDesc::from_line(line, carrier),
                None => match self {
                    SubsetDesc::Enumerated { prefix, bound, exhausted } => SubsetDesc::Enumerated {
                        prefix: sorted_dedup(prefix),
                        bound,
                        exhausted,
                    },
                    SubsetDesc::Union(parts) => normalize_union(parts, carrier),
                    other => other,
                },
            },
        }
    }

    fn normalize_pair(self, ca: &Carrier, cb: &Carrier) -> SubsetDesc {
        let carrier = Carrier::Product(Box::new(ca.clone()), Box::new(cb.clone()));
        match self {
            SubsetDesc::Product(a, b) => {
                let a = a.normalize(ca);
                let b = b.normalize(cb);
                if a.is_empty() || b.is_empty() {
                    return SubsetDesc::Empty;
                }
                let is_full = |d: &SubsetDesc, c: &Carrier| match d {
                    SubsetDesc::Cofinite(v) => v.is_empty(),
                    SubsetDesc::Finite(v) => c.size() == Some(v.len()),
                    _ => false,
                };
                if is_full(&a, ca) && is_full(&b, cb) {
                    return SubsetDesc::full();
                }
                if let (SubsetDesc::Finite(xs), SubsetDesc::Finite(ys)) = (&a, &b) {
                    let mut out = Vec::with_capacity(xs.len() * ys.len());
                    for x in scalars(xs) {
                        for y in scalars(ys) {
                            out.push(Element::Pair(x, y));
                        }
                    }
                    return SubsetDesc::finite(out);
                }
                SubsetDesc::product(a, b)
            }
            SubsetDesc::Finite(v) => SubsetDesc::finite(v),
            SubsetDesc::Cofinite(v) => {
                if carrier.is_finite() {
                    let excl: BTreeSet<Element> = v.into_iter().collect();
                    SubsetDesc::finite(carrier.elements().filter(|e| !excl.contains(e)))
                } else {
                    SubsetDesc::Cofinite(sorted_dedup(v))
                }
            }
            SubsetDesc::Union(parts) => normalize_union(parts, &carrier),
            SubsetDesc::Enumerated { prefix, bound, exhausted } => {
                if exhausted {
                    SubsetDesc::finite(prefix)
                } else {
                    SubsetDesc::Enumerated { prefix: sorted_dedup(prefix), bound, exhausted }
                }
            }
            other => other,
        }
    }

    /// Union of two subsets of `carrier`, normalized.
    pub fn union(&self, other: &SubsetDesc, carrier: &Carrier) -> SubsetDesc {
        SubsetDesc::Union(vec![self.clone(), other.clone()]).normalize(carrier)
    }

    /// Membership; `None` only for enumerated descriptors beyond their bound.
    pub fn contains(&self, carrier: &Carrier, x: &Element) -> Option<bool> {
        if !carrier.contains(x) {
            return Some(false);
        }
        match self {
            SubsetDesc::Empty => Some(false),
            SubsetDesc::Finite(v) => Some(v.binary_search(x).is_ok()),
            SubsetDesc::Cofinite(v) => Some(v.binary_search(x).is_err()),
            SubsetDesc::Tail(a) => Some(scalar(x).is_some_and(|v| v >= *a)),
            SubsetDesc::Head(a) => Some(scalar(x).is_some_and(|v| v <= *a)),
            SubsetDesc::Product(a, b) => {
                let (Carrier::Product(ca, cb), Element::Pair(p, q)) = (carrier, x) else {
                    return Some(false);
                };
                match a.contains(ca, &Element::Scalar(*p))? {
                    false => Some(false),
                    true => b.contains(cb, &Element::Scalar(*q)),
                }
            }
            SubsetDesc::Union(parts) => {
                let mut open = false;
                for p in parts {
                    match p.contains(carrier, x) {
                        Some(true) => return Some(true),
                        Some(false) => {}
                        None => open = true,
                    }
                }
                if open {
                    None
                } else {
                    Some(false)
                }
            }
            SubsetDesc::Enumerated { prefix, bound, exhausted } => {
                if prefix.contains(x) {
                    Some(true)
                } else if *exhausted || x.magnitude() <= *bound {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    /// `Some(true)` when the subset is finite; `None` when undecided.
    pub fn is_finite(&self, carrier: &Carrier) -> Option<bool> {
        if carrier.is_finite() {
            return Some(true);
        }
        match self {
            SubsetDesc::Empty | SubsetDesc::Finite(_) => Some(true),
            SubsetDesc::Cofinite(_) | SubsetDesc::Tail(_) | SubsetDesc::Head(_) => Some(false),
            SubsetDesc::Product(a, b) => {
                let Carrier::Product(ca, cb) = carrier else { return Some(false) };
                if a.is_empty() || b.is_empty() {
                    return Some(true);
                }
                Some(a.is_finite(ca)? && b.is_finite(cb)?)
            }
            SubsetDesc::Union(parts) => {
                let mut all = true;
                for p in parts {
                    match p.is_finite(carrier) {
                        Some(false) => return Some(false),
                        None => all = false,
                        Some(true) => {}
                    }
                }
                if all {
                    Some(true)
                } else {
                    None
                }
            }
            SubsetDesc::Enumerated { exhausted, .. } => {
                if *exhausted {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    /// Whether the complement in `carrier` is finite. Conservative for unions
    /// of products.
    pub fn complement_is_finite(&self, carrier: &Carrier) -> bool {
        if carrier.is_finite() {
            return true;
        }
        match self {
            SubsetDesc::Cofinite(_) => true,
            SubsetDesc::Tail(_) => matches!(carrier, Carrier::Nat),
            SubsetDesc::Union(parts) => {
                parts.iter().any(|p| p.complement_is_finite(carrier))
                    || (matches!(carrier, Carrier::Int)
                        && parts.iter().any(|p| matches!(p, SubsetDesc::Tail(_)))
                        && parts.iter().any(|p| matches!(p, SubsetDesc::Head(_))))
            }
            SubsetDesc::Product(a, b) => {
                let Carrier::Product(ca, cb) = carrier else { return false };
                let full_or_finite_carrier = |d: &SubsetDesc, c: &Carrier, other: &Carrier| {
                    other.is_finite() && d.complement_is_finite(c)
                        || matches!(d, SubsetDesc::Cofinite(v) if v.is_empty())
                };
                full_or_finite_carrier(a, ca, cb) && full_or_finite_carrier(b, cb, ca)
            }
            _ => false,
        }
    }

    /// Escape directions along which the subset is unbounded.
    pub fn escape_directions(&self, carrier: &Carrier) -> BTreeSet<Direction> {
        let mut out = BTreeSet::new();
        match (self, carrier) {
            (_, Carrier::Finite(_)) => {}
            (SubsetDesc::Tail(_), _) => {
                out.insert(Direction::Pos);
            }
            (SubsetDesc::Head(_), _) => {
                out.insert(Direction::Neg);
            }
            (SubsetDesc::Cofinite(_), c) => {
                out.extend(c.directions().into_iter().filter(|d| *d != Direction::Diag));
            }
            (SubsetDesc::Union(parts), c) => {
                for p in parts {
                    out.extend(p.escape_directions(c));
                }
            }
            (SubsetDesc::Product(a, b), Carrier::Product(ca, cb)) if !a.is_empty() && !b.is_empty() => {
                out.extend(a.escape_directions(ca).into_iter().map(Direction::lift_first));
                out.extend(b.escape_directions(cb).into_iter().map(Direction::lift_second));
            }
            _ => {}
        }
        out
    }

    /// Elements of a finite subset.
    pub fn finite_elements(&self, carrier: &Carrier) -> Option<Vec<Element>> {
        match self {
            SubsetDesc::Empty => Some(Vec::new()),
            SubsetDesc::Finite(v) => Some(v.clone()),
            SubsetDesc::Enumerated { prefix, exhausted: true, .. } => Some(prefix.clone()),
            _ if carrier.is_finite() => {
                let mut out = Vec::new();
                for e in carrier.elements() {
                    if self.contains(carrier, &e)? {
                        out.push(e);
                    }
                }
                Some(out)
            }
            SubsetDesc::Product(a, b) => {
                let Carrier::Product(ca, cb) = carrier else { return None };
                let xs = a.finite_elements(ca)?;
                let ys = b.finite_elements(cb)?;
                let mut out = Vec::new();
                for x in scalars(&xs) {
                    for y in scalars(&ys) {
                        out.push(Element::Pair(x, y));
                    }
                }
                Some(out)
            }
            SubsetDesc::Union(parts) => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(p.finite_elements(carrier)?);
                }
                Some(sorted_dedup(out))
            }
            _ => None,
        }
    }

    /// Canonical text relative to a carrier, e.g. `{3}`, `tail(4)`, `{1}×N`.
    pub fn fmt_in(&self, carrier: &Carrier) -> String {
        match self {
            SubsetDesc::Cofinite(v) if v.is_empty() => carrier.name(),
            SubsetDesc::Product(a, b) => match carrier {
                Carrier::Product(ca, cb) => {
                    format!("{}×{}", factor_text(a, ca), factor_text(b, cb))
                }
                _ => self.to_string(),
            },
            SubsetDesc::Union(parts) => {
                parts.iter().map(|p| p.fmt_in(carrier)).collect::<Vec<_>>().join(" ∪ ")
            }
            other => other.to_string(),
        }
    }
}

fn factor_text(d: &SubsetDesc, c: &Carrier) -> String {
    match d {
        SubsetDesc::Union(_) => format!("({})", d.fmt_in(c)),
        _ => d.fmt_in(c),
    }
}

fn normalize_union(parts: Vec<SubsetDesc>, carrier: &Carrier) -> SubsetDesc {
    let mut flat = Vec::new();
    let mut stack = parts;
    while let Some(p) = stack.pop() {
        match p {
            SubsetDesc::Union(inner) => stack.extend(inner),
            other => {
                let n = other.normalize(carrier);
                match n {
                    SubsetDesc::Empty => {}
                    SubsetDesc::Union(inner) => flat.extend(inner),
                    n => flat.push(n),
                }
            }
        }
    }
    if flat.iter().any(|p| matches!(p, SubsetDesc::Cofinite(v) if v.is_empty())) {
        return SubsetDesc::full();
    }
    let mut finite_pts = Vec::new();
    let mut rest = Vec::new();
    for p in flat {
        match p {
            SubsetDesc::Finite(v) => finite_pts.extend(v),
            other => rest.push(other),
        }
    }
    // Drop finite points already covered by another part.
    finite_pts.retain(|e| !rest.iter().any(|p| p.contains(carrier, e) == Some(true)));
    if !finite_pts.is_empty() {
        rest.push(SubsetDesc::finite(finite_pts));
    }
    rest.sort();
    rest.dedup();
    match rest.len() {
        0 => SubsetDesc::Empty,
        1 => rest.pop().expect("one part"),
        _ => SubsetDesc::Union(rest),
    }
}

fn fmt_elements(v: &[Element]) -> String {
    // Runs of three or more consecutive scalars print as `a..b`.
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < v.len() {
        if let Element::Scalar(start) = v[i] {
            let mut j = i;
            while j + 1 < v.len() && v[j + 1] == Element::Scalar(start + (j + 1 - i) as i64) {
                j += 1;
            }
            if j - i >= 2 {
                out.push(format!("{}..{}", start, start + (j - i) as i64));
                i = j + 1;
                continue;
            }
        }
        out.push(v[i].to_string());
        i += 1;
    }
    out.join(",")
}

impl fmt::Display for SubsetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetDesc::Empty => f.write_str("{}"),
            SubsetDesc::Finite(v) => write!(f, "{{{}}}", fmt_elements(v)),
            SubsetDesc::Cofinite(v) => write!(f, "cofinite{{{}}}", fmt_elements(v)),
            SubsetDesc::Tail(a) => write!(f, "tail({a})"),
            SubsetDesc::Head(a) => write!(f, "head({a})"),
            SubsetDesc::Product(a, b) => write!(f, "{a}×{b}"),
            SubsetDesc::Union(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                f.write_str(&s.join(" ∪ "))
            }
            SubsetDesc::Enumerated { prefix, bound, exhausted } => {
                write!(f, "enum{{{};bound={}", fmt_elements(prefix), bound)?;
                if *exhausted {
                    f.write_str(";exhausted")?;
                }
                f.write_str("}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Element::Scalar as S;

    #[test]
    fn nat_tail_from_one_is_everything() {
        assert_eq!(SubsetDesc::Tail(1).normalize(&Carrier::Nat), SubsetDesc::full());
        assert_eq!(SubsetDesc::Tail(-3).normalize(&Carrier::Nat), SubsetDesc::full());
        assert_eq!(SubsetDesc::Tail(4).normalize(&Carrier::Nat), SubsetDesc::Tail(4));
    }

    #[test]
    fn tail_plus_points_collapses_to_cofinite_on_nat() {
        let u = SubsetDesc::Tail(5).union(&SubsetDesc::finite([S(3)]), &Carrier::Nat);
        assert_eq!(u, SubsetDesc::Cofinite(vec![S(1), S(2), S(4)]));
        let u = SubsetDesc::Tail(5).union(&SubsetDesc::finite([S(3), S(4)]), &Carrier::Nat);
        assert_eq!(u, SubsetDesc::Tail(3));
    }

    #[test]
    fn tail_plus_points_on_int_stays_two_part() {
        let u = SubsetDesc::Tail(5).union(&SubsetDesc::finite([S(-2)]), &Carrier::Int);
        assert_eq!(u, SubsetDesc::Union(vec![SubsetDesc::finite([S(-2)]), SubsetDesc::Tail(5)]));
        assert_eq!(u.contains(&Carrier::Int, &S(-2)), Some(true));
        assert_eq!(u.contains(&Carrier::Int, &S(0)), Some(false));
        assert_eq!(u.contains(&Carrier::Int, &S(100)), Some(true));
        let both = SubsetDesc::Tail(5).union(&SubsetDesc::Head(2), &Carrier::Int);
        assert_eq!(both, SubsetDesc::Cofinite(vec![S(3), S(4)]));
        assert!(both.complement_is_finite(&Carrier::Int));
    }

    #[test]
    fn product_text_uses_carrier_names() {
        let c = Carrier::pair(Carrier::Nat, Carrier::Nat);
        let d = SubsetDesc::product(SubsetDesc::singleton(S(1)), SubsetDesc::full()).normalize(&c);
        assert_eq!(d.fmt_in(&c), "{1}×N");
        assert_eq!(d.is_finite(&c), Some(false));
        assert_eq!(d.contains(&c, &Element::Pair(1, 77)), Some(true));
        assert_eq!(d.contains(&c, &Element::Pair(2, 77)), Some(false));
        let dirs: Vec<_> = d.escape_directions(&c).into_iter().collect();
        assert_eq!(dirs, vec![Direction::NPos]);
    }

    #[test]
    fn finite_runs_print_compactly() {
        let d = SubsetDesc::finite((1..=999).map(S));
        assert_eq!(d.to_string(), "{1..999}");
        assert_eq!(SubsetDesc::finite([S(3), S(7)]).to_string(), "{3,7}");
    }

    #[test]
    fn enumerated_membership_is_open_beyond_bound() {
        let d = SubsetDesc::Enumerated { prefix: vec![S(2)], bound: 10, exhausted: false };
        assert_eq!(d.contains(&Carrier::Nat, &S(2)), Some(true));
        assert_eq!(d.contains(&Carrier::Nat, &S(5)), Some(false));
        assert_eq!(d.contains(&Carrier::Nat, &S(11)), None);
        assert_eq!(d.is_finite(&Carrier::Nat), None);
        let done = SubsetDesc::Enumerated { prefix: vec![S(2)], bound: 10, exhausted: true };
        assert_eq!(done.normalize(&Carrier::Nat), SubsetDesc::finite([S(2)]));
    }

    #[test]
    fn finite_carrier_normalizes_to_lists() {
        let c = Carrier::Finite(3);
        assert_eq!(SubsetDesc::full().normalize(&c), SubsetDesc::finite([S(0), S(1), S(2)]));
        assert_eq!(SubsetDesc::Cofinite(vec![S(1)]).normalize(&c), SubsetDesc::finite([S(0), S(2)]));
    }
}
