mod common;

use common::*;
use hopf_fs::adjoint::{
    adjoint_pivotal, chi_ad_integral, chi_ad_trace, e_ad_order, group_nu, nu_adjoint, nu_adjoint_fast, semisimple_nu,
    sweedler_blocks, table1_row, valid_m, Method,
};
use hopf_fs::arith::{CycNum, Rational};
use hopf_fs::hopf::HopfError;
use hopf_fs::modules::HModule;

fn values(reports: Vec<hopf_fs::modules::IndicatorReport>) -> Vec<CycNum> {
    reports.into_iter().map(|r| r.value).collect()
}

#[test]
fn group_adjoint_is_conjugation() {
    for name in ["S3", "Q8", "Z/4"] {
        let (g, h) = group(name, 1);
        let ad = HModule::adjoint(h.clone());
        for a in 0..g.order() {
            let m = ad.basis_action(a);
            for b in 0..g.order() {
                let conj = g.mul(g.mul(a, b), g.inverse[a]);
                let col = m.column(b);
                assert_eq!(col.nnz(), 1);
                assert!(col.get(conj).is_some_and(|c| c.is_one()));
            }
        }
        assert!(adjoint_pivotal(h.clone()).phi().is_identity());
    }
}

#[test]
fn adjoint_character_of_groups() {
    for name in ["S3", "Q8", "D4", "Z/5"] {
        let (g, h) = group(name, 1);
        let trace = chi_ad_trace(&h);
        let integral = chi_ad_integral(&h).unwrap();
        for a in 0..g.order() {
            let c = h.field().from_int(g.centralizer_order(a) as i64);
            assert_eq!(trace[a], c, "{name}");
            assert_eq!(integral[a], c, "{name}");
        }
        assert_eq!(trace[g.identity], h.field().from_int(h.dim() as i64));
    }
}

#[test]
fn adjoint_character_paths_agree_on_book_algebra_unit() {
    let h = book(3, 2);
    let trace = chi_ad_trace(&h);
    assert_eq!(trace[h.monomial_index(0, 0, 0).unwrap()], h.field().from_int(27));
}

#[test]
fn block_legs() {
    assert_eq!(sweedler_blocks(10, 4), vec![vec![0, 4, 8, 2, 6], vec![1, 5, 9, 3, 7]]);
    assert_eq!(sweedler_blocks(3, 1), vec![vec![0, 1, 2]]);
    assert_eq!(sweedler_blocks(4, 0), vec![vec![0], vec![1], vec![2], vec![3]]);
    assert_eq!(sweedler_blocks(4, -1), vec![vec![0, 3, 2, 1]]);
}

#[test]
fn group_formula_closed_forms() {
    let z2 = hopf_fs::constructors::GroupPresentation::builtin("Z/2").unwrap();
    for n in 1..=6i64 {
        for r in -6..=6i64 {
            let d = num_integer::gcd(n, r);
            assert_eq!(group_nu(&z2, n, r), Rational::from_int(1 << d));
        }
    }
    let s3 = hopf_fs::constructors::GroupPresentation::builtin("S3").unwrap();
    assert_eq!(group_nu(&s3, 2, 1), Rational::from_int(5));
    let trivial = hopf_fs::constructors::GroupPresentation::builtin("Z/1").unwrap();
    assert_eq!(group_nu(&trivial, 4, 3), Rational::one());
}

#[test]
fn semisimple_formula_matches_group_and_tensor_paths() {
    for (name, max_n) in [("S3", 3), ("Z/2", 3), ("Q8", 2), ("D4", 2)] {
        let (g, h) = group(name, 1);
        for n in 1..=max_n {
            let rs: Vec<i64> = (-3..=3).collect();
            let general = values(nu_adjoint(&h, None, n, &rs, Method::General).unwrap());
            for (r, v) in rs.iter().zip(&general) {
                let expected = h.field().from_rational(group_nu(&g, n, *r));
                assert_eq!(*v, expected, "{name} n={n} r={r}");
                assert_eq!(semisimple_nu(&h, n, *r).unwrap(), expected, "{name} n={n} r={r}");
            }
            let by_group = values(nu_adjoint(&h, Some(&g), n, &rs, Method::Group).unwrap());
            assert_eq!(by_group, general);
        }
    }
}

#[test]
fn semisimple_formula_rejects_book_algebras() {
    assert!(matches!(semisimple_nu(&book(2, 1), 1, 1), Err(HopfError::NotSemisimple)));
}

#[test]
fn fast_path_matches_tensor_path() {
    let rs: Vec<i64> = (-4..=4).collect();
    for (n, m) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3)] {
        let h = book(n, m);
        let fast = values(nu_adjoint(&h, None, 1, &rs, Method::Fast).unwrap());
        let general = values(adjoint_pivotal(h.clone()).nu_sweep(1, &rs).unwrap());
        assert_eq!(fast, general, "H({n},{m})");
    }
}

#[test]
fn book_first_indicators() {
    for n in 2..=7usize {
        for m in valid_m(n) {
            let h = book(n, m);
            let rs: Vec<i64> = (-(n as i64)..=2 * n as i64).collect();
            let got = values(nu_adjoint_fast(&h, &rs).unwrap());
            for (r, v) in rs.iter().zip(&got) {
                let expected = if m == 1 {
                    2 * n - 1
                } else if (r * (m as i64 - 1)).rem_euclid(n as i64) == 0 {
                    n
                } else {
                    0
                };
                assert_eq!(*v, h.field().from_int(expected as i64), "H({n},{m}) r={r}");
            }
        }
    }
}

#[test]
fn rotation_orders_bound_periodicity() {
    for (n, m) in [(3, 2), (4, 3), (5, 2), (5, 1)] {
        let h = book(n, m);
        let e = e_ad_order(&h, 1, 1000).unwrap().unwrap();
        assert_eq!(n as u64 % e, 0);
        let rs: Vec<i64> = (0..2 * n as i64).collect();
        let v = values(nu_adjoint_fast(&h, &rs).unwrap());
        for r in 0..n {
            assert_eq!(v[r], v[r + e as usize]);
        }
    }
    let (_, h) = group("S3", 1);
    for n in 1..=3 {
        let e = e_ad_order(&h, n, 1000).unwrap().unwrap();
        assert_eq!(n as u64 % e, 0, "n={n}");
    }
    let h = book(2, 1);
    let e = e_ad_order(&h, 2, 1000).unwrap().unwrap();
    let s2_order = h.s_squared().multiplicative_order(100).unwrap();
    assert_eq!((2 * s2_order) % e, 0);
}

#[test]
fn table_rows() {
    let row = table1_row(9, 2, &[1, 3, 9]).unwrap();
    assert_eq!(row.center_dim, 9);
    assert_eq!(row.e_table_reading, 3);
    assert_eq!(row.e_text_reading, 6);
    assert_eq!(row.e_measured, Some(6));
    for (r, v) in &row.values {
        let expected = if r.rem_euclid(9) == 0 { 9 } else { 0 };
        assert_eq!(*v, row_field(9).from_int(expected));
    }
}

fn row_field(n: usize) -> hopf_fs::arith::CycField {
    hopf_fs::arith::CycField::new(n)
}
