//! Exact linear algebra over a cyclotomic field.

mod echelon;
mod mat;
mod sparse;

pub use echelon::canonical_basis;
pub use mat::{kernel_of_rows, Mat};
pub use sparse::SparseVec;

use thiserror::Error;

use crate::arith::{CycField, CycNum};
use echelon::Echelon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("target vector lies outside the span of the basis")]
    OutsideSpan,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("entry ({row}, {col}) out of range for {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
}

/// Reusable coordinate solver for a fixed independent family of vectors.
pub struct SpanSolver {
    field: CycField,
    dim: usize,
    k: usize,
    rows: Vec<(usize, SparseVec)>,
    pivot_row: Vec<usize>,
}

impl SpanSolver {
    pub fn new(field: &CycField, dim: usize, basis: &[SparseVec]) -> Result<Self, LinalgError> {
        let k = basis.len();
        let mut ech = Echelon::new(field, dim + k);
        for (i, b) in basis.iter().enumerate() {
            if b.support_bound() > dim {
                return Err(LinalgError::DimensionMismatch {
                    left: (dim, 1),
                    right: (b.support_bound(), 1),
                });
            }
            let mut aug = b.clone();
            aug.push_sorted(dim + i, field.one());
            match ech.insert(aug) {
                Some(p) if p < dim => {}
                _ => return Err(LinalgError::DependentBasis),
            }
        }
        let rows = ech.into_rref();
        let mut pivot_row = vec![usize::MAX; dim];
        for (j, (p, _)) in rows.iter().enumerate() {
            pivot_row[*p] = j;
        }
        Ok(SpanSolver {
            field: field.clone(),
            dim,
            k,
            rows,
            pivot_row,
        })
    }

    /// Coordinates `c` with `Σ c_i basis_i = target`.
    pub fn solve(&self, target: &SparseVec) -> Result<Vec<CycNum>, LinalgError> {
        if target.support_bound() > self.dim {
            return Err(LinalgError::OutsideSpan);
        }
        let mut r = target.clone();
        let mut start = 0;
        loop {
            let hit = r
                .iter()
                .find(|(c, _)| *c >= start && *c < self.dim && self.pivot_row[*c] != usize::MAX)
                .map(|(c, a)| (*c, a.clone()));
            match hit {
                None => break,
                Some((c, a)) => {
                    r = r.axpy(&-a, &self.rows[self.pivot_row[c]].1);
                    start = c + 1;
                }
            }
        }
        if r.leading().is_some_and(|(c, _)| *c < self.dim) {
            return Err(LinalgError::OutsideSpan);
        }
        let mut out = vec![self.field.zero(); self.k];
        for (c, v) in r.iter() {
            out[c - self.dim] = -v;
        }
        Ok(out)
    }
}

/// Expresses `target` in an independent family of vectors of length `dim`.
pub fn solve_in_span(
    field: &CycField,
    dim: usize,
    basis: &[SparseVec],
    target: &SparseVec,
) -> Result<Vec<CycNum>, LinalgError> {
    SpanSolver::new(field, dim, basis)?.solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use proptest::prelude::*;

    fn q3() -> CycField {
        CycField::new(3)
    }

    fn int(f: &CycField, n: i64) -> CycNum {
        f.from_int(n)
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let f = q3();
        assert!(Mat::identity(&f, 3).kernel_basis().is_empty());
        let k = Mat::zeros(&f, 2, 2).kernel_basis();
        assert_eq!(k, vec![SparseVec::unit(&f, 0), SparseVec::unit(&f, 1)]);
    }

    #[test]
    fn zeta3_rank_one_kernel() {
        let f = q3();
        let z = f.zeta_pow(1);
        let a = Mat::from_dense(&f, &[vec![f.one(), z.clone()], vec![f.zeta_pow(2), f.one()]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        // independent check: second row is zeta^2 times the first
        let r0 = a.row(0).scaled(&f.zeta_pow(2));
        assert_eq!(&r0, a.row(1));
        // normalized with leading 1, so the kernel vector is (-zeta3, 1) rescaled by 1/(-zeta3)
        let expect = SparseVec::from_dense(&[-&z, f.one()]);
        let lead = expect.leading().unwrap().1.invert().unwrap();
        assert_eq!(k[0], expect.scaled(&lead));
        assert!(a.mul_vec(&k[0]).is_zero());
        assert!(a.mul_vec(&expect).is_zero());
    }

    #[test]
    fn pow_examples() {
        let f = CycField::new(4);
        let a = Mat::diagonal(&f, vec![f.zeta_pow(1)]);
        assert!(a.pow(0).unwrap().is_identity());
        assert_eq!(a.pow(-1).unwrap(), Mat::diagonal(&f, vec![f.zeta_pow(3)]));
        let p = Mat::from_dense(&f, &[vec![f.zero(), f.one()], vec![f.one(), f.zero()]]);
        assert!(p.pow(2).unwrap().is_identity());
        let s = Mat::zeros(&f, 2, 2);
        assert_eq!(s.pow(-1), Err(LinalgError::Singular));
    }

    #[test]
    fn trace_kron_examples() {
        let f = q3();
        assert_eq!(Mat::identity(&f, 5).trace(), int(&f, 5));
        assert_eq!(Mat::identity(&f, 2).kron(&Mat::identity(&f, 3)), Mat::identity(&f, 6));
        let a = Mat::from_dense(&f, &[vec![int(&f, 1), int(&f, 2)], vec![int(&f, 3), int(&f, 4)]]);
        let b = Mat::from_dense(&f, &[vec![int(&f, 0), int(&f, 5)], vec![int(&f, 6), int(&f, 7)]]);
        let k = a.kron(&b);
        for i in 0..2 {
            for j in 0..2 {
                for r in 0..2 {
                    for c in 0..2 {
                        assert_eq!(k.get(i * 2 + r, j * 2 + c), &a.get(i, j) * &b.get(r, c));
                    }
                }
            }
        }
    }

    #[test]
    fn triplets_roundtrip_and_errors() {
        let f = q3();
        let m = Mat::from_triplets(&f, 2, 3, vec![(0, 2, f.zeta_pow(1)), (1, 0, int(&f, -2))]).unwrap();
        assert_eq!(Mat::from_dense(&f, &m.to_dense()), m);
        assert_eq!(Mat::from_triplets(&f, 2, 3, m.triplets()).unwrap(), m);
        assert_eq!(
            Mat::from_triplets(&f, 2, 2, vec![(0, 0, f.one()), (0, 0, f.one())]),
            Err(LinalgError::DuplicateEntry { row: 0, col: 0 })
        );
        assert!(matches!(
            Mat::from_triplets(&f, 2, 2, vec![(2, 0, f.one())]),
            Err(LinalgError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn solve_in_span_examples() {
        let f = q3();
        let e = |i| SparseVec::unit(&f, i);
        let c = solve_in_span(&f, 3, &[e(0), e(1)], &e(0).add(&e(1))).unwrap();
        assert_eq!(c, vec![f.one(), f.one()]);

        let z = f.zeta_pow(1);
        let b = SparseVec::from_dense(&[f.one(), z.clone()]);
        let t = SparseVec::from_dense(&[z.clone(), f.zeta_pow(2)]);
        assert_eq!(solve_in_span(&f, 2, &[b], &t).unwrap(), vec![z]);

        assert_eq!(solve_in_span(&f, 2, &[e(0)], &e(1)), Err(LinalgError::OutsideSpan));
        assert_eq!(
            solve_in_span(&f, 2, &[e(0), e(0).scaled(&int(&f, 2))], &e(0)),
            Err(LinalgError::DependentBasis)
        );
    }

    fn small_mat(n: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec((-3i64..=3, -3i64..=3, 0u8..3), n * n).prop_map(move |v| {
            let f = CycField::new(3);
            let dense: Vec<Vec<CycNum>> = v
                .chunks(n)
                .map(|row| {
                    row.iter()
                        .map(|&(a, b, zero)| {
                            if zero == 0 {
                                f.zero()
                            } else {
                                f.from_poly(vec![Rational::from(a), Rational::from(b)])
                            }
                        })
                        .collect()
                })
                .collect();
            Mat::from_dense(&f, &dense)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn inverse_roundtrip(a in small_mat(4)) {
            if let Ok(inv) = a.inverse() {
                prop_assert!(a.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&a).unwrap().is_identity());
            } else {
                prop_assert!(a.rank() < 4);
            }
        }

        #[test]
        fn rank_nullity(a in small_mat(5)) {
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.len(), a.cols());
            for v in &k {
                prop_assert!(a.mul_vec(v).is_zero());
                prop_assert!(v.leading().unwrap().1.is_one());
            }
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn trace_commutes(a in small_mat(3), b in small_mat(3)) {
            prop_assert_eq!(a.mul(&b).unwrap().trace(), b.mul(&a).unwrap().trace());
        }

        #[test]
        fn pow_additive(a in small_mat(3), r in -2i64..=2, s in -2i64..=2) {
            if a.inverse().is_ok() {
                let lhs = a.pow(r + s).unwrap();
                let rhs = a.pow(r).unwrap().mul(&a.pow(s).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn solve_recovers_coefficients(a in small_mat(4), c in proptest::collection::vec(-4i64..=4, 4)) {
            let f = a.field().clone();
            let basis = canonical_basis(&f, 4, a.row_vecs().to_vec());
            let coeffs: Vec<CycNum> = c.iter().take(basis.len()).map(|&x| f.from_int(x)).collect();
            let mut t = SparseVec::new();
            for (b, x) in basis.iter().zip(&coeffs) {
                t = t.axpy(x, b);
            }
            prop_assert_eq!(solve_in_span(&f, 4, &basis, &t).unwrap(), coeffs);
        }
    }
}
