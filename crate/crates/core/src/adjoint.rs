//! Indicators of the adjoint object `(H_ad, S²)`.

use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;

use crate::arith::{CycField, CycNum, Rational};
use crate::constructors::{book_hopf, BookHopfParams, GroupPresentation};
use crate::hopf::{HopfAlgebra, HopfError};
use crate::linalg::{Mat, SparseVec};
use crate::modules::{rotation_matrix, HModule, IndicatorReport, ModuleError, PivotalModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `Trace(S^{-2r}|_Cent)`, valid for `n = 1`.
    Fast,
    /// Invariants of the tensor power and the rotation operator.
    General,
    /// Integral formula, semisimple algebras only.
    Semisimple,
    /// Centralizer counting, group algebras only.
    Group,
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Method::Fast),
            "general" => Ok(Method::General),
            "semisimple" => Ok(Method::Semisimple),
            "group" => Ok(Method::Group),
            _ => Err(format!("unknown method {s:?} (expected fast, general, semisimple or group)")),
        }
    }
}

/// The adjoint module with `φ = S²`.
pub fn adjoint_pivotal(hopf: Arc<HopfAlgebra>) -> PivotalModule {
    let phi = hopf.s_squared().clone();
    PivotalModule::new(HModule::adjoint(hopf), phi).expect("S^2 intertwines the adjoint action")
}

/// Matrix of `S²` restricted to the center, in the echelon basis of the
/// center.
pub fn s_squared_on_center(hopf: &HopfAlgebra) -> Result<(Vec<SparseVec>, Mat), ModuleError> {
    let center = hopf.center_basis();
    let m = rotation_matrix(hopf.field(), hopf.dim(), 1, &center, hopf.s_squared())?;
    Ok((center, m))
}

/// `ν_{1,r} = Trace(S^{-2r}|_Cent)` for each `r`.
pub fn nu_adjoint_fast(hopf: &HopfAlgebra, rs: &[i64]) -> Result<Vec<IndicatorReport>, ModuleError> {
    let (center, m) = s_squared_on_center(hopf)?;
    let order = m.multiplicative_order(4096);
    rs.iter()
        .map(|&r| {
            Ok(IndicatorReport {
                value: m.pow(-r)?.trace(),
                n: 1,
                r,
                invariant_dim: center.len(),
                e_matrix_order: order,
                method: "fast".into(),
            })
        })
        .collect()
}

/// `ν_{n,r}` of the adjoint object for each `r`, by the chosen method.
pub fn nu_adjoint(
    hopf: &Arc<HopfAlgebra>,
    group: Option<&GroupPresentation>,
    n: i64,
    rs: &[i64],
    method: Method,
) -> Result<Vec<IndicatorReport>, ModuleError> {
    if n < 1 {
        return Err(ModuleError::Shape(format!("n = {n} must be positive")));
    }
    let simple = |value: CycNum, r: i64, method: &str| IndicatorReport {
        value,
        n,
        r,
        invariant_dim: 0,
        e_matrix_order: None,
        method: method.into(),
    };
    match method {
        Method::Fast if n == 1 => nu_adjoint_fast(hopf, rs),
        Method::Fast | Method::General => adjoint_pivotal(hopf.clone()).nu_sweep(n, rs),
        Method::Semisimple => rs
            .iter()
            .map(|&r| Ok(simple(semisimple_nu(hopf, n, r)?, r, "semisimple")))
            .collect(),
        Method::Group => {
            let g = group.ok_or_else(|| ModuleError::Shape("group method needs a group algebra".into()))?;
            rs.iter()
                .map(|&r| Ok(simple(hopf.field().from_rational(group_nu(g, n, r)), r, "group")))
                .collect()
        }
    }
}

/// `⟨χ_ad, h⟩ = ⟨λ, h_(1) Λ_(1) S(h_(2)) S(Λ_(2))⟩` on each basis element,
/// with `ε(Λ) = 1` and `⟨λ, Λ⟩ = 1`.
pub fn chi_ad_integral(hopf: &HopfAlgebra) -> Result<Vec<CycNum>, HopfError> {
    let f = hopf.field();
    let d = hopf.dim();
    let big = hopf.normalized_left_integral()?;
    let lambda = hopf.dual_right_integral(&big)?;
    let delta_big = hopf.comult(&big);
    Ok((0..d)
        .map(|h| {
            let mut acc = SparseVec::new();
            for (h1, h2, c) in hopf.comult_basis(h) {
                for (u, x) in delta_big.iter() {
                    let (l1, l2) = (u / d, u % d);
                    let left = hopf.mul(&SparseVec::unit(f, *h1), &SparseVec::unit(f, l1));
                    let right = hopf.mul(hopf.antipode_basis(*h2), hopf.antipode_basis(l2));
                    acc = acc.axpy(&(c * x), &hopf.mul(&left, &right));
                }
            }
            apply(f, &lambda, &acc)
        })
        .collect())
}

/// `h ↦ Trace(ad_h)` on each basis element.
pub fn chi_ad_trace(hopf: &Arc<HopfAlgebra>) -> Vec<CycNum> {
    let ad = HModule::adjoint(hopf.clone());
    (0..hopf.dim()).map(|i| ad.basis_action(i).trace()).collect()
}

fn apply(f: &CycField, form: &[CycNum], v: &SparseVec) -> CycNum {
    let mut acc = f.zero();
    for (i, c) in v.iter() {
        acc = &acc + &(c * &form[*i]);
    }
    acc
}

/// Leg order of the block product: block `c` multiplies legs
/// `i_{c,0}, …, i_{c,n/d−1}` (0-based here) with `i_{a,b} ≡ a + br (mod n)`.
pub fn sweedler_blocks(n: i64, r: i64) -> Vec<Vec<usize>> {
    let d = n.gcd(&r);
    (0..d)
        .map(|a| (0..n / d).map(|b| (a + b * r).rem_euclid(n) as usize).collect())
        .collect()
}

/// `ν_{n,r} = Σ Π_c ⟨χ_ad, Λ_(i_{c,0}) ⋯ Λ_(i_{c,n/d−1})⟩` over the Sweedler
/// terms of `Δ^{(n)}(Λ)`, for semisimple H.
pub fn semisimple_nu(hopf: &HopfAlgebra, n: i64, r: i64) -> Result<CycNum, HopfError> {
    assert!(n >= 1);
    if !hopf.is_semisimple()? {
        return Err(HopfError::NotSemisimple);
    }
    let f = hopf.field();
    let d = hopf.dim();
    let chi = chi_ad_integral(hopf)?;
    let big = hopf.normalized_left_integral()?;
    let delta = hopf.iterated_comult(&big, n as usize)?;
    let blocks = sweedler_blocks(n, r);
    let mut total = f.zero();
    for (idx, coef) in delta.iter() {
        let mut legs = vec![0; n as usize];
        let mut rest = *idx;
        for leg in legs.iter_mut().rev() {
            *leg = rest % d;
            rest /= d;
        }
        let mut term = coef.clone();
        for block in &blocks {
            let mut prod = hopf.unit().clone();
            for &b in block {
                prod = hopf.mul(&prod, &SparseVec::unit(f, legs[b]));
            }
            term = &term * &apply(f, &chi, &prod);
            if term.is_zero() {
                break;
            }
        }
        total = &total + &term;
    }
    Ok(total)
}

/// `(1/|G|) Σ_g |C_G(g^{n/d})|^d` with `d = gcd(n, r)`.
pub fn group_nu(g: &GroupPresentation, n: i64, r: i64) -> Rational {
    assert!(n >= 1);
    let d = n.gcd(&r);
    let mut sum = Rational::zero();
    for a in 0..g.order() {
        let c = g.centralizer_order(g.pow(a, n / d)) as i64;
        sum = &sum + &Rational::from_int(c).pow(d);
    }
    &sum / &Rational::from_int(g.order() as i64)
}

/// Multiplicative order of the rotation on invariants of `A^{⊗n}`.
pub fn e_ad_order(hopf: &Arc<HopfAlgebra>, n: usize, limit: u64) -> Result<Option<u64>, ModuleError> {
    let m = if n == 1 {
        s_squared_on_center(hopf)?.1.inverse()?
    } else {
        adjoint_pivotal(hopf.clone()).rotation(n)?.matrix
    };
    Ok(m.multiplicative_order(limit))
}

/// One line of the `ν_{1,r}` table for `H(ω_N, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub m: usize,
    pub values: Vec<(i64, CycNum)>,
    pub center_dim: usize,
    /// `(m² − 1) mod N`.
    pub e_table_reading: usize,
    /// `(1 − m²) mod N`.
    pub e_text_reading: usize,
    /// Exponent `e` with `S²(Λ) = ω^e Λ`, measured on the algebra.
    pub e_measured: Option<usize>,
}

pub fn table1_row(n: usize, m: usize, rs: &[i64]) -> Result<Table1Row, ModuleError> {
    let params = BookHopfParams::new(n, m, 1).map_err(|e| ModuleError::Shape(e.to_string()))?;
    let h = book_hopf(params);
    let reports = nu_adjoint_fast(&h, rs)?;
    let c = h.integral_scalar()?;
    let m2 = (m * m) % n;
    Ok(Table1Row {
        m,
        center_dim: reports.first().map_or(0, |r| r.invariant_dim),
        values: reports.into_iter().map(|r| (r.r, r.value)).collect(),
        e_table_reading: (m2 + n - 1) % n,
        e_text_reading: (n + 1 - m2) % n,
        e_measured: c.zeta_exponent(),
    })
}

/// The values of `m` with `0 < m < N`, `gcd(N, m) = 1`.
pub fn valid_m(n: usize) -> Vec<usize> {
    (1..n).filter(|m| m.gcd(&n) == 1).collect()
}
