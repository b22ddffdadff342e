//! Exact rank computation over the rationals for sparse vectors.
//!
//! Vectors are sparse maps from an ordered coordinate key to a rational
//! coefficient.  [`RowReducer`] maintains a row-reduced spanning set and
//! supports incremental insertion and membership tests, which is all the
//! spanning-set and null-space computations need.

use std::collections::BTreeMap;

use num::Zero;

use crate::Rat;

/// A sparse vector over ordered coordinate keys.
pub type SparseVec<K> = BTreeMap<K, Rat>;

/// Incremental exact row reduction: rows are kept with distinct leading
/// (minimal) keys and unit leading coefficient.
#[derive(Debug, Clone)]
pub struct RowReducer<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for RowReducer<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> RowReducer<K> {
    /// Empty reducer.
    pub fn new() -> Self {
        RowReducer {
            rows: BTreeMap::new(),
        }
    }

    /// Current rank.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows, returning the remainder.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        loop {
            let lead = match v.keys().next() {
                Some(k) => k.clone(),
                None => return v,
            };
            let Some(row) = self.rows.get(&lead) else {
                return v;
            };
            let coeff = v.get(&lead).cloned().unwrap_or_else(Rat::zero);
            for (k, c) in row {
                let entry = v.entry(k.clone()).or_insert_with(Rat::zero);
                *entry -= &coeff * c;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    /// Insert `v` if independent of the stored rows; returns whether the rank
    /// grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut rem = self.reduce(v);
        let Some(lead) = rem.keys().next().cloned() else {
            return false;
        };
        let pivot = rem.get(&lead).cloned().unwrap();
        for c in rem.values_mut() {
            *c /= &pivot;
        }
        self.rows.insert(lead, rem);
        true
    }

    /// Whether `v` lies in the span of the stored rows.
    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

/// Rank of a collection of sparse vectors.
pub fn rank<K: Ord + Clone>(rows: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut red = RowReducer::new();
    for r in rows {
        red.insert(r);
    }
    red.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, rat(c))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            v(&[(0, 1), (1, 2)]),
            v(&[(0, 2), (1, 4)]),
            v(&[(1, 1), (2, 1)]),
        ];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn membership_and_incremental_rank() {
        let mut red = RowReducer::new();
        assert!(red.insert(v(&[(0, 1), (2, 3)])));
        assert!(red.insert(v(&[(1, 5)])));
        assert!(!red.insert(v(&[(0, 2), (1, 5), (2, 6)])));
        assert_eq!(red.rank(), 2);
        assert!(red.contains(&v(&[(0, -1), (1, 10), (2, -3)])));
        assert!(!red.contains(&v(&[(2, 1)])));
        // exact fractions survive reduction
        let mut w = SparseVec::new();
        let mut w2 = w.clone();
        w2.insert(0u32, ratio(1, 3));
        w2.insert(2u32, rat(1));
        assert!(red.contains(&w2));
        w.insert(0u32, ratio(1, 3));
        w.insert(2u32, rat(2));
        assert!(!red.contains(&w));
    }
}
