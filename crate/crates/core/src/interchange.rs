//! Versioned JSON documents for algebras and modules.
//!
//! A coefficient is an array of `[num, den]` pairs, one per power of ζ below
//! the degree of Φ_N. Integers that do not fit in an `i64` are strings.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{CycField, CycNum, Rational};
use crate::constructors::GroupPresentation;
use crate::hopf::{HopfAlgebra, HopfError};
use crate::linalg::{LinalgError, Mat, SparseVec};
use crate::modules::{HModule, ModuleError};

pub const FORMAT_VERSION: u32 = 1;

/// Largest dimension written by [`export_algebra`]; the product table has
/// `dim²` slots.
pub const MAX_EXPORT_DIM: usize = 2048;

#[derive(Debug, Error)]
pub enum InterchangeError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported format_version {0}")]
    Version(u32),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("dimension {0} is too large to export")]
    TooLarge(usize),
    #[error("loaded algebra fails the {0} axiom")]
    Axiom(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

pub type Coeff = Vec<[Int; 2]>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub label: String,
    pub element: Vec<(usize, Coeff)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub format_version: u32,
    #[serde(default)]
    pub label: String,
    pub cyclotomic_order: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub unit: Vec<Coeff>,
    pub counit: Vec<Coeff>,
    /// `[i, j, k, c]`: `e_i e_j` has coefficient `c` on `e_k`.
    pub mult: Vec<(usize, usize, usize, Coeff)>,
    /// `[i, j, k, c]`: `Δ(e_i)` has coefficient `c` on `e_j ⊗ e_k`.
    pub comult: Vec<(usize, usize, usize, Coeff)>,
    /// `[row, col, c]`.
    pub antipode: Vec<(usize, usize, Coeff)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<Vec<usize>>>,
}

type Entries = Vec<(usize, usize, Coeff)>;

/// A module given by matrices for the algebra's generators, for every basis
/// element, or (group algebras) for some group elements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDocument {
    pub format_version: u32,
    #[serde(default)]
    pub label: String,
    pub cyclotomic_order: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Entries>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Entries>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_elements: Option<Vec<(usize, Entries)>>,
}

fn encode_int(n: BigInt) -> Int {
    i64::try_from(&n).map_or_else(|_| Int::Big(n.to_string()), Int::Small)
}

fn decode_int(n: &Int) -> Result<BigInt, InterchangeError> {
    match n {
        Int::Small(v) => Ok(BigInt::from(*v)),
        Int::Big(s) => s.parse().map_err(|_| InterchangeError::Malformed(format!("bad integer {s:?}"))),
    }
}

pub fn encode(c: &CycNum) -> Coeff {
    c.coeffs().iter().map(|q| [encode_int(q.numer()), encode_int(q.denom())]).collect()
}

pub fn decode(f: &CycField, c: &Coeff) -> Result<CycNum, InterchangeError> {
    let coeffs = c
        .iter()
        .map(|[n, d]| {
            let d = decode_int(d)?;
            if d == BigInt::from(0) {
                return Err(InterchangeError::Malformed("zero denominator".into()));
            }
            Ok(Rational::from_bigints(decode_int(n)?, d))
        })
        .collect::<Result<Vec<_>, _>>()?;
    CycNum::from_coeffs(f, coeffs).map_err(|e| InterchangeError::Malformed(e.to_string()))
}

fn encode_vec(v: &SparseVec) -> Vec<(usize, Coeff)> {
    v.iter().map(|(i, c)| (*i, encode(c))).collect()
}

fn decode_vec(f: &CycField, dim: usize, v: &[(usize, Coeff)]) -> Result<SparseVec, InterchangeError> {
    if v.iter().any(|(i, _)| *i >= dim) {
        return Err(InterchangeError::Malformed("index out of range".into()));
    }
    let entries = v.iter().map(|(i, c)| Ok((*i, decode(f, c)?))).collect::<Result<Vec<_>, InterchangeError>>()?;
    Ok(SparseVec::from_entries(entries))
}

fn decode_dense(f: &CycField, dim: usize, v: &[Coeff], what: &str) -> Result<Vec<CycNum>, InterchangeError> {
    if v.len() != dim {
        return Err(InterchangeError::Malformed(format!("{what} has {} entries, expected {dim}", v.len())));
    }
    v.iter().map(|c| decode(f, c)).collect()
}

fn encode_mat(m: &Mat) -> Entries {
    m.triplets().into_iter().map(|(r, c, v)| (r, c, encode(&v))).collect()
}

fn decode_mat(f: &CycField, rows: usize, cols: usize, e: &Entries) -> Result<Mat, InterchangeError> {
    let t = e.iter().map(|(r, c, v)| Ok((*r, *c, decode(f, v)?))).collect::<Result<Vec<_>, InterchangeError>>()?;
    Ok(Mat::from_triplets(f, rows, cols, t)?)
}

pub fn export_algebra(h: &HopfAlgebra) -> Result<AlgebraDocument, InterchangeError> {
    let d = h.dim();
    if d > MAX_EXPORT_DIM {
        return Err(InterchangeError::TooLarge(d));
    }
    let dense = |v: &SparseVec| -> Vec<Coeff> {
        let mut out = vec![encode(&h.field().zero()); d];
        for (i, c) in v.iter() {
            out[*i] = encode(c);
        }
        out
    };
    let mut mult = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, c) in h.mul_basis(i, j).iter() {
                mult.push((i, j, *k, encode(c)));
            }
        }
    }
    let comult = (0..d)
        .flat_map(|i| h.comult_basis(i).iter().map(move |(j, k, c)| (i, *j, *k, encode(c))))
        .collect();
    let counit = h.counit().iter().map(encode).collect();
    let trivial_words = (0..d).all(|i| h.basis_word(i) == [i])
        && h.generators().iter().enumerate().all(|(i, g)| g.element == SparseVec::unit(h.field(), i));
    let (generators, words) = if trivial_words {
        (None, None)
    } else {
        let gens = h
            .generators()
            .iter()
            .map(|g| GeneratorEntry { label: g.label.clone(), element: encode_vec(&g.element) })
            .collect();
        (Some(gens), Some((0..d).map(|i| h.basis_word(i).to_vec()).collect()))
    };
    Ok(AlgebraDocument {
        format_version: FORMAT_VERSION,
        label: h.label().to_string(),
        cyclotomic_order: h.field().order(),
        dim: d,
        basis_names: Some((0..d).map(|i| h.basis_name(i)).collect()),
        unit: dense(h.unit()),
        counit,
        mult,
        comult,
        antipode: encode_mat(h.antipode()),
        generators,
        words,
    })
}

/// Rebuilds the algebra and runs the axiom checks on it.
pub fn load_algebra(doc: &AlgebraDocument) -> Result<HopfAlgebra, InterchangeError> {
    if doc.format_version != FORMAT_VERSION {
        return Err(InterchangeError::Version(doc.format_version));
    }
    let d = doc.dim;
    if doc.cyclotomic_order == 0 {
        return Err(InterchangeError::Malformed("cyclotomic_order must be positive".into()));
    }
    let f = CycField::new(doc.cyclotomic_order);
    let unit = decode_dense(&f, d, &doc.unit, "unit")?;
    let unit = SparseVec::from_dense(&unit);
    let counit = decode_dense(&f, d, &doc.counit, "counit")?;
    let mut mult: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); d * d];
    for (i, j, k, c) in &doc.mult {
        if *i >= d || *j >= d || *k >= d {
            return Err(InterchangeError::Malformed(format!("mult entry ({i}, {j}, {k}) out of range")));
        }
        mult[i * d + j].push((*k, decode(&f, c)?));
    }
    let mult = mult.into_iter().map(SparseVec::from_entries).collect();
    let mut comult = vec![Vec::new(); d];
    for (i, j, k, c) in &doc.comult {
        if *i >= d {
            return Err(InterchangeError::Malformed(format!("comult entry {i} out of range")));
        }
        comult[*i].push((*j, *k, decode(&f, c)?));
    }
    let antipode = decode_mat(&f, d, d, &doc.antipode)?;
    let h = HopfAlgebra::from_tables(&f, doc.label.clone(), unit, mult, comult, counit, antipode, doc.basis_names.clone())?;
    let h = match (&doc.generators, &doc.words) {
        (Some(gens), Some(words)) => {
            let gens = gens
                .iter()
                .map(|g| Ok((g.label.clone(), decode_vec(&f, d, &g.element)?)))
                .collect::<Result<Vec<_>, InterchangeError>>()?;
            h.with_generators(gens, words.clone())?
        }
        (None, None) => h,
        _ => return Err(InterchangeError::Malformed("generators and words must appear together".into())),
    };
    let report = h.verify_axioms();
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(InterchangeError::Axiom(bad.name.to_string()));
    }
    Ok(h)
}

pub fn algebra_to_json(h: &HopfAlgebra) -> Result<String, InterchangeError> {
    Ok(serde_json::to_string_pretty(&export_algebra(h)?)?)
}

pub fn algebra_from_json(s: &str) -> Result<HopfAlgebra, InterchangeError> {
    load_algebra(&serde_json::from_str(s)?)
}

/// Writes the generator actions of `v`.
pub fn export_module(v: &HModule) -> ModuleDocument {
    ModuleDocument {
        format_version: FORMAT_VERSION,
        label: v.label().to_string(),
        cyclotomic_order: v.field().order(),
        dim: v.dim(),
        generators: Some(v.generator_actions().iter().map(encode_mat).collect()),
        basis: None,
        group_elements: None,
    }
}

pub fn load_module(
    hopf: Arc<HopfAlgebra>,
    group: Option<&GroupPresentation>,
    doc: &ModuleDocument,
) -> Result<HModule, InterchangeError> {
    if doc.format_version != FORMAT_VERSION {
        return Err(InterchangeError::Version(doc.format_version));
    }
    let f = hopf.field().clone();
    if doc.cyclotomic_order != f.order() {
        return Err(InterchangeError::Malformed(format!(
            "module is over Q(zeta{}) but the algebra is over Q(zeta{})",
            doc.cyclotomic_order,
            f.order()
        )));
    }
    let dim = doc.dim;
    let mats = |list: &[Entries]| list.iter().map(|e| decode_mat(&f, dim, dim, e)).collect::<Result<Vec<_>, _>>();
    let label = if doc.label.is_empty() { "V".to_string() } else { doc.label.clone() };
    let module = match (&doc.generators, &doc.basis, &doc.group_elements) {
        (Some(g), None, None) => HModule::from_generator_actions(hopf, label, mats(g)?)?,
        (None, Some(b), None) => HModule::from_basis_actions(hopf, label, mats(b)?)?,
        (None, None, Some(pairs)) => {
            let g = group.ok_or_else(|| InterchangeError::Malformed("group_elements needs a group algebra".into()))?;
            let images = pairs
                .iter()
                .map(|(a, e)| {
                    if *a >= g.order() {
                        return Err(InterchangeError::Malformed(format!("group element {a} out of range")));
                    }
                    Ok((*a, decode_mat(&f, dim, dim, e)?))
                })
                .collect::<Result<Vec<_>, InterchangeError>>()?;
            HModule::from_group_generators(hopf, g, label, &images)?
        }
        _ => {
            return Err(InterchangeError::Malformed(
                "exactly one of generators, basis, group_elements is required".into(),
            ))
        }
    };
    module.verify()?;
    Ok(module)
}

pub fn module_from_json(hopf: Arc<HopfAlgebra>, group: Option<&GroupPresentation>, s: &str) -> Result<HModule, InterchangeError> {
    load_module(hopf, group, &serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_travel_as_strings() {
        let f = CycField::new(3);
        let big = BigInt::from(i64::MAX) * BigInt::from(1000);
        let c = &f.from_rational(Rational::from_bigints(big.clone(), BigInt::from(11))) * &f.zeta_pow(1);
        let enc = encode(&c);
        assert!(matches!(enc[1][0], Int::Big(_)));
        assert_eq!(decode(&f, &enc).unwrap(), c);
        let json = serde_json::to_string(&enc).unwrap();
        assert!(json.contains(&format!("\"{big}\"")));
    }

    #[test]
    fn rejects_bad_documents() {
        let f = CycField::new(1);
        assert!(decode(&f, &vec![[Int::Small(1), Int::Small(0)]]).is_err());
        assert!(decode(&f, &vec![[Int::Big("x".into()), Int::Small(1)]]).is_err());
        let bad = r#"{"format_version": 9, "cyclotomic_order": 1, "dim": 0, "unit": [], "counit": [], "mult": [], "comult": [], "antipode": []}"#;
        assert!(matches!(algebra_from_json(bad), Err(InterchangeError::Version(9))));
    }
}
