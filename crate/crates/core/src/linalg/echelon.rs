//! Incremental sparse row reduction.
//!
//! Rows are kept with their leading (smallest) column as pivot and a pivot
//! value of 1. Reducing a new row only ever introduces columns to the right
//! of the pivot being eliminated, so insertion terminates after at most one
//! subtraction per pivot column.

use crate::arith::{CycField, CycNum};

use super::SparseVec;

const NONE: usize = usize::MAX;

pub(crate) struct Echelon {
    field: CycField,
    pivot_row: Vec<usize>,
    rows: Vec<SparseVec>,
}

fn normalize(v: SparseVec, field: &CycField) -> SparseVec {
    let (c, lead) = v.leading().expect("normalize on zero row").clone();
    if lead.is_one() {
        return v;
    }
    if v.nnz() == 1 {
        return SparseVec::unit(field, c);
    }
    let inv = lead.invert().expect("nonzero leading entry");
    v.scaled(&inv)
}

impl Echelon {
    pub fn new(field: &CycField, cols: usize) -> Self {
        Echelon {
            field: field.clone(),
            pivot_row: vec![NONE; cols],
            rows: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a row; returns its pivot column if it was independent of the
    /// rows already present.
    pub fn insert(&mut self, mut v: SparseVec) -> Option<usize> {
        loop {
            let (c, a) = v.leading()?.clone();
            let p = self.pivot_row[c];
            if p == NONE {
                self.pivot_row[c] = self.rows.len();
                self.rows.push(normalize(v, &self.field));
                return Some(c);
            }
            v = v.axpy(&-a, &self.rows[p]);
        }
    }

    /// Eliminates every entry of `v` lying in a pivot column, starting at
    /// column `from`.
    fn reduce_from(&self, mut v: SparseVec, from: usize) -> SparseVec {
        let mut start = from;
        loop {
            let hit = v
                .iter()
                .find(|(c, _)| *c >= start && self.pivot_row[*c] != NONE)
                .map(|(c, a)| (*c, a.clone()));
            match hit {
                None => return v,
                Some((c, a)) => {
                    v = v.axpy(&-a, &self.rows[self.pivot_row[c]]);
                    start = c + 1;
                }
            }
        }
    }

    /// Brings the rows to reduced row echelon form; returns them sorted by
    /// pivot column.
    pub fn into_rref(mut self) -> Vec<(usize, SparseVec)> {
        let mut pivots: Vec<usize> = (0..self.pivot_row.len())
            .filter(|&c| self.pivot_row[c] != NONE)
            .collect();
        for &c in pivots.iter().rev() {
            let r = self.pivot_row[c];
            let row = std::mem::take(&mut self.rows[r]);
            let reduced = if row.nnz() > 1 {
                self.reduce_from(row, c + 1)
            } else {
                row
            };
            self.rows[r] = reduced;
        }
        pivots.sort_unstable();
        let mut rows = std::mem::take(&mut self.rows);
        pivots
            .into_iter()
            .map(|c| (c, std::mem::take(&mut rows[self.pivot_row[c]])))
            .collect()
    }

    /// Basis of the null space of the inserted rows (in `cols` coordinates):
    /// one vector per free column `f`, equal to `e_f - Σ_p R[p][f] e_p`.
    pub fn kernel(self, cols: usize) -> Vec<SparseVec> {
        let field = self.field.clone();
        let rref = self.into_rref();
        let mut is_pivot = vec![false; cols];
        for (c, _) in &rref {
            is_pivot[*c] = true;
        }
        let mut parts: Vec<Vec<(usize, CycNum)>> = vec![vec![]; cols];
        for (p, row) in &rref {
            for (c, a) in row.iter().skip(1) {
                debug_assert!(!is_pivot[*c]);
                parts[*c].push((*p, -a));
            }
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut entries = std::mem::take(&mut parts[f]);
                entries.push((f, field.one()));
                entries.sort_by_key(|(i, _)| *i);
                SparseVec::from_sorted(entries)
            })
            .collect()
    }
}

/// Reduced row echelon basis of the span of `vectors` (pivot entries 1,
/// sorted by pivot). Deterministic for a given subspace.
pub fn canonical_basis(field: &CycField, dim: usize, vectors: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut ech = Echelon::new(field, dim);
    for v in vectors {
        ech.insert(v);
    }
    ech.into_rref().into_iter().map(|(_, v)| v).collect()
}
