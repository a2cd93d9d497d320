#![allow(dead_code)]

use std::sync::Arc;

use hopf_fs::arith::CycNum;
use hopf_fs::constructors::{book_hopf, group_algebra, BookHopfParams, GroupPresentation};
use hopf_fs::hopf::HopfAlgebra;
use hopf_fs::linalg::Mat;
use hopf_fs::modules::HModule;

pub fn book(n: usize, m: usize) -> Arc<HopfAlgebra> {
    Arc::new(book_hopf(BookHopfParams::new(n, m, 1).unwrap()))
}

pub fn group(name: &str, field: usize) -> (GroupPresentation, Arc<HopfAlgebra>) {
    let g = GroupPresentation::builtin(name).unwrap();
    let h = Arc::new(group_algebra(&g, field));
    (g, h)
}

pub fn ints(h: &HopfAlgebra, rows: &[&[i64]]) -> Mat {
    let f = h.field();
    let dense: Vec<Vec<CycNum>> = rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect();
    Mat::from_dense(f, &dense)
}

/// The 2-dimensional simple module of S3: permutations acting on
/// `{v ∈ Q³ : Σv = 0}` with basis `e0 − e1`, `e1 − e2`.
pub fn s3_standard(h: &Arc<HopfAlgebra>, g: &GroupPresentation) -> HModule {
    let perm = |sigma: [usize; 3]| {
        let image = |i: usize, j: usize| {
            let mut w = [0i64; 3];
            w[sigma[i]] += 1;
            w[sigma[j]] -= 1;
            [w[0], -w[2]]
        };
        let c0 = image(0, 1);
        let c1 = image(1, 2);
        ints(h, &[&[c0[0], c1[0]], &[c0[1], c1[1]]])
    };
    HModule::from_group_generators(h.clone(), g, "std", &[(1, perm([0, 2, 1])), (3, perm([1, 2, 0]))]).unwrap()
}

/// The sign character of S3 (index 1 and 3 are a transposition and a
/// 3-cycle).
pub fn s3_sign(h: &Arc<HopfAlgebra>, g: &GroupPresentation) -> HModule {
    HModule::from_group_generators(h.clone(), g, "sign", &[(1, ints(h, &[&[-1]])), (3, ints(h, &[&[1]]))]).unwrap()
}

/// The 2-dimensional simple module of Q8 over Q(ζ4).
pub fn q8_standard(h: &Arc<HopfAlgebra>, g: &GroupPresentation) -> HModule {
    let f = h.field();
    let z = f.zeta_pow(1);
    let i = Mat::from_dense(f, &[vec![z.clone(), f.zero()], vec![f.zero(), -&z]]);
    let j = ints(h, &[&[0, -1], &[1, 0]]);
    HModule::from_group_generators(h.clone(), g, "std", &[(1, i), (2, j)]).unwrap()
}

/// The 2-dimensional simple module of D4: `r` rotates by a quarter turn,
/// `s` reflects.
pub fn d4_standard(h: &Arc<HopfAlgebra>, g: &GroupPresentation) -> HModule {
    let r = ints(h, &[&[0, -1], &[1, 0]]);
    let s = ints(h, &[&[1, 0], &[0, -1]]);
    HModule::from_group_generators(h.clone(), g, "std", &[(1, r), (4, s)]).unwrap()
}

/// Book-algebra module from images of `g, x, y`.
pub fn book_module(h: &Arc<HopfAlgebra>, g: Mat, x: Mat, y: Mat) -> HModule {
    let m = HModule::from_generator_actions(h.clone(), "V", vec![g, x, y]).unwrap();
    m.verify().unwrap();
    m
}

/// For `H(ω_3, 2)`: `g ↦ diag(1, ω)`, `x, y ↦ E_{10}`. Here V** is not
/// isomorphic to V.
pub fn non_pivotal_book_module(h: &Arc<HopfAlgebra>) -> HModule {
    let f = h.field();
    let g = Mat::diagonal(f, vec![f.one(), f.zeta_pow(1)]);
    let e10 = ints(h, &[&[0, 0], &[1, 0]]);
    book_module(h, g, e10.clone(), e10)
}
