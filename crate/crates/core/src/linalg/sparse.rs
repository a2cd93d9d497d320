use std::collections::BTreeMap;

use crate::arith::{CycField, CycNum};

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, CycNum)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: vec![] }
    }

    pub fn unit(field: &CycField, i: usize) -> Self {
        SparseVec {
            entries: vec![(i, field.one())],
        }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_entries<I: IntoIterator<Item = (usize, CycNum)>>(entries: I) -> Self {
        let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
        for (i, v) in entries {
            match acc.get_mut(&i) {
                Some(cur) => *cur = &*cur + &v,
                None => {
                    acc.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Builds from entries already sorted by strictly increasing index.
    /// Zeros are dropped.
    pub fn from_sorted(entries: Vec<(usize, CycNum)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec {
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[CycNum]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, field: &CycField, len: usize) -> Vec<CycNum> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, CycNum)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, CycNum)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, CycNum)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<&(usize, CycNum)> {
        self.entries.first()
    }

    /// Largest stored index plus one (0 for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn get(&self, i: usize) -> Option<&CycNum> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scaled(&self, c: &CycNum) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &CycNum, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&v.field().one(), other),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&-v.field().one(), other),
        }
    }

    /// Sparse-sparse dot product (no conjugation).
    pub fn dot(&self, other: &SparseVec, field: &CycField) -> CycNum {
        let mut acc = field.zero();
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = &acc + &(&a[i].1 * &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Relabels indices through `map`; the result is re-sorted.
    pub fn permuted(&self, map: &[usize]) -> SparseVec {
        let mut entries: Vec<(usize, CycNum)> =
            self.entries.iter().map(|(i, v)| (map[*i], v.clone())).collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }

    pub(crate) fn push_sorted(&mut self, i: usize, v: CycNum) {
        debug_assert!(self.entries.last().is_none_or(|(j, _)| *j < i));
        if !v.is_zero() {
            self.entries.push((i, v));
        }
    }
}
