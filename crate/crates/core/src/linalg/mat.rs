use std::collections::BTreeMap;

use crate::arith::{CycField, CycNum};

use super::echelon::{canonical_basis, Echelon};
use super::{LinalgError, SparseVec};

/// An exact matrix over a cyclotomic field, stored as sparse rows.
///
/// Dense inputs and outputs go through [`Mat::from_dense`] and
/// [`Mat::to_dense`]; both forms describe the same matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    field: CycField,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Mat {
    pub fn zeros(field: &CycField, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(field: &CycField, n: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows: n,
            cols: n,
            data: (0..n).map(|i| SparseVec::unit(field, i)).collect(),
        }
    }

    pub fn diagonal(field: &CycField, diag: Vec<CycNum>) -> Mat {
        let n = diag.len();
        Mat {
            field: field.clone(),
            rows: n,
            cols: n,
            data: diag
                .into_iter()
                .enumerate()
                .map(|(i, v)| SparseVec::from_sorted(vec![(i, v)]))
                .collect(),
        }
    }

    pub fn from_rows(field: &CycField, rows: usize, cols: usize, data: Vec<SparseVec>) -> Mat {
        assert_eq!(data.len(), rows);
        debug_assert!(data.iter().all(|r| r.support_bound() <= cols));
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_columns(field: &CycField, rows: usize, columns: &[SparseVec]) -> Mat {
        let mut data: Vec<Vec<(usize, CycNum)>> = vec![vec![]; rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter() {
                data[*i].push((j, v.clone()));
            }
        }
        Mat {
            field: field.clone(),
            rows,
            cols: columns.len(),
            data: data.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    /// Builds from (row, col, value) triplets. Zero values are skipped;
    /// repeated positions and out-of-range indices are errors.
    pub fn from_triplets<I>(field: &CycField, rows: usize, cols: usize, triplets: I) -> Result<Mat, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, CycNum)>,
    {
        let mut data: Vec<BTreeMap<usize, CycNum>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(LinalgError::IndexOutOfRange { row: i, col: j, rows, cols });
            }
            if data[i].insert(j, v).is_some() {
                return Err(LinalgError::DuplicateEntry { row: i, col: j });
            }
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data: data
                .into_iter()
                .map(|m| SparseVec::from_sorted(m.into_iter().collect()))
                .collect(),
        })
    }

    pub fn from_dense(field: &CycField, dense: &[Vec<CycNum>]) -> Mat {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: dense.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<CycNum>> {
        self.data
            .iter()
            .map(|r| r.to_dense(&self.field, self.cols))
            .collect()
    }

    pub fn triplets(&self) -> Vec<(usize, usize, CycNum)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v.clone())))
            .collect()
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> CycNum {
        self.data[i].get(j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    /// Largest number of nonzeros in any column.
    pub fn max_column_nnz(&self) -> usize {
        let mut counts = vec![0usize; self.cols];
        for r in &self.data {
            for (j, _) in r.iter() {
                counts[*j] += 1;
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols: Vec<Vec<(usize, CycNum)>> = vec![vec![]; self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r.iter() {
                cols[*j].push((i, v.clone()));
            }
        }
        cols.into_iter().map(SparseVec::from_sorted).collect()
    }

    pub fn column(&self, j: usize) -> SparseVec {
        let entries = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(j).map(|v| (i, v.clone())))
            .collect();
        SparseVec::from_sorted(entries)
    }

    pub fn transpose(&self) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data: self.columns(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.nnz() == 1 && r.entries()[0].0 == i && r.entries()[0].1.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    fn check_same_shape(&self, other: &Mat) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_same_shape(other)?;
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_same_shape(other)?;
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, c: &CycNum) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scaled(c)).collect(),
        }
    }

    /// `self - c·I`.
    pub fn sub_scalar_identity(&self, c: &CycNum) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| r.axpy(&-c, &SparseVec::unit(&self.field, i)))
            .collect();
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
                for (k, a) in row.iter() {
                    for (j, b) in other.data[*k].iter() {
                        let t = a * b;
                        match acc.get_mut(j) {
                            Some(cur) => *cur = &*cur + &t,
                            None => {
                                acc.insert(*j, t);
                            }
                        }
                    }
                }
                SparseVec::from_sorted(acc.into_iter().collect())
            })
            .collect();
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let entries = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let d = r.dot(v, &self.field);
                (!d.is_zero()).then_some((i, d))
            })
            .collect();
        SparseVec::from_sorted(entries)
    }

    /// Kronecker product: `(A⊗B)[i·rB + k, j·cB + l] = A[i,j]·B[k,l]`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let (rb, cb) = (other.rows, other.cols);
        let mut data = Vec::with_capacity(self.rows * rb);
        for arow in &self.data {
            for brow in &other.data {
                let mut entries = Vec::with_capacity(arow.nnz() * brow.nnz());
                for (j, a) in arow.iter() {
                    for (l, b) in brow.iter() {
                        entries.push((j * cb + l, a * b));
                    }
                }
                data.push(SparseVec::from_sorted(entries));
            }
        }
        Mat {
            field: self.field.clone(),
            rows: self.rows * rb,
            cols: self.cols * cb,
            data,
        }
    }

    pub fn trace(&self) -> CycNum {
        let mut acc = self.field.zero();
        for (i, r) in self.data.iter().enumerate().take(self.cols) {
            if let Some(v) = r.get(i) {
                acc = &acc + v;
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(&self.field, self.cols);
        let mut rows: Vec<&SparseVec> = self.data.iter().filter(|r| !r.is_zero()).collect();
        rows.sort_by_key(|r| r.nnz());
        for r in rows {
            ech.insert(r.clone());
        }
        ech.rank()
    }

    /// Basis of `{v : Av = 0}` in reduced echelon form: each vector's first
    /// nonzero coordinate is 1 and is zero in every other basis vector.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        kernel_of_rows(&self.field, self.cols, self.data.iter().cloned())
    }

    pub fn inverse(&self) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut ech = Echelon::new(&self.field, 2 * n);
        for (i, r) in self.data.iter().enumerate() {
            let mut aug = r.clone();
            aug.push_sorted(n + i, self.field.one());
            match ech.insert(aug) {
                Some(p) if p < n => {}
                _ => return Err(LinalgError::Singular),
            }
        }
        let data = ech
            .into_rref()
            .into_iter()
            .map(|(_, row)| {
                let entries = row
                    .into_entries()
                    .into_iter()
                    .filter(|(j, _)| *j >= n)
                    .map(|(j, v)| (j - n, v))
                    .collect();
                SparseVec::from_sorted(entries)
            })
            .collect();
        Ok(Mat {
            field: self.field.clone(),
            rows: n,
            cols: n,
            data,
        })
    }

    /// Exact r-th power; negative exponents go through the inverse.
    pub fn pow(&self, r: i64) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if r < 0 {
            return self.inverse()?.pow(-r);
        }
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.field, self.rows);
        let mut e = r as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Smallest `k` in `1..=limit` with `self^k = I`.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        if !self.is_square() {
            return None;
        }
        let mut cur = self.clone();
        for k in 1..=limit {
            if cur.is_identity() {
                return Some(k);
            }
            cur = cur.mul(self).ok()?;
        }
        None
    }
}

/// Joint null space of a family of sparse rows over `cols` unknowns.
///
/// Columns are processed in order of increasing occupancy and rows in order
/// of increasing length, which keeps fill-in low for the permutation-like
/// systems produced by generator actions. The result is canonicalized, so it
/// does not depend on either ordering.
pub fn kernel_of_rows<I>(field: &CycField, cols: usize, rows: I) -> Vec<SparseVec>
where
    I: IntoIterator<Item = SparseVec>,
{
    let mut rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_zero()).collect();
    let mut counts = vec![0usize; cols];
    for r in &rows {
        for (j, _) in r.iter() {
            counts[*j] += 1;
        }
    }
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by_key(|&j| (counts[j], j));
    let mut to_new = vec![0usize; cols];
    for (new, &old) in order.iter().enumerate() {
        to_new[old] = new;
    }
    rows.sort_by_key(SparseVec::nnz);
    let mut ech = Echelon::new(field, cols);
    for r in rows {
        ech.insert(r.permuted(&to_new));
    }
    let raw: Vec<SparseVec> = ech.kernel(cols).into_iter().map(|v| v.permuted(&order)).collect();
    canonical_basis(field, cols, raw)
}
