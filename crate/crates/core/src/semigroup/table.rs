//! Cayley tables over `{0, ..., n-1}`.

use std::collections::HashMap;

use super::SemigroupError;
use crate::verdict::Verdict;

/// Multiplication table: entry `[a * n + b]` is the index of `ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    n: usize,
    data: Vec<usize>,
}

impl Table {
    /// Builds a table from rows, checking shape and entry range.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Table, SemigroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(SemigroupError::BadTable("table has no rows".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::BadTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|&&v| v >= n) {
                return Err(SemigroupError::BadTable(format!(
                    "row {i} has entry {bad} outside 0..{n}"
                )));
            }
            data.extend(row);
        }
        Ok(Table { n, data })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.data[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    /// Exhaustive scan of all triples.
    pub fn check_associativity(&self) -> Verdict {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        return Verdict::no(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
                    }
                }
            }
        }
        Verdict::universal(format!("exhaustive over {} triples", n * n * n))
    }

    /// Closes a set of self-maps of `{0, ..., points-1}` under composition and
    /// returns the multiplication table of the generated semigroup, where
    /// `f·g` means "apply `f`, then `g`". Fails when the closure exceeds `cap`.
    pub fn from_transformations(gens: &[Vec<usize>], cap: usize) -> Result<Table, SemigroupError> {
        let points = gens.first().map_or(0, |g| g.len());
        if points == 0 || gens.iter().any(|g| g.len() != points || g.iter().any(|&v| v >= points)) {
            return Err(SemigroupError::BadTable("generators must be self-maps of one finite set".into()));
        }
        let compose = |f: &[usize], g: &[usize]| -> Vec<usize> { f.iter().map(|&x| g[x]).collect() };
        let mut elems: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
            }
        }
        let mut frontier = 0;
        while frontier < elems.len() {
            let f = elems[frontier].clone();
            for g in gens {
                let fg = compose(&f, g);
                if !index.contains_key(&fg) {
                    if elems.len() == cap {
                        return Err(SemigroupError::BadTable(format!("closure exceeds {cap} elements")));
                    }
                    index.insert(fg.clone(), elems.len());
                    elems.push(fg);
                }
            }
            frontier += 1;
        }
        let n = elems.len();
        let mut data = Vec::with_capacity(n * n);
        for f in &elems {
            for g in &elems {
                data.push(index[&compose(f, g)]);
            }
        }
        Ok(Table { n, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Level;

    #[test]
    fn left_zero_table_is_associative() {
        let t = Table::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(t.check_associativity().level, Level::YesUniversal);
    }

    #[test]
    fn one_element_table_is_associative() {
        let t = Table::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(t.check_associativity().level, Level::YesUniversal);
    }

    #[test]
    fn constructed_counterexample_is_found() {
        // (0·0)·1 = 1·1 = 0 but 0·(0·1) = 0·0 = 1.
        let t = Table::from_rows(vec![vec![1, 0], vec![0, 0]]).unwrap();
        let v = t.check_associativity();
        assert_eq!(v.level, Level::No);
        assert!(v.witness.unwrap().contains('≠'));
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(Table::from_rows(vec![]).is_err());
        assert!(Table::from_rows(vec![vec![0, 1], vec![0]]).is_err());
        assert!(Table::from_rows(vec![vec![0, 2], vec![0, 0]]).is_err());
    }

    #[test]
    fn transformation_closure_is_associative() {
        let t = Table::from_transformations(&[vec![1, 2, 0], vec![0, 0, 2]], 64).unwrap();
        assert_eq!(t.check_associativity().level, Level::YesUniversal);
        assert!(Table::from_transformations(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], 5).is_err());
    }
}
