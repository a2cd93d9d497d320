//! Finite-dimensional Hopf algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{ArithError, CycField, CycNum};
use crate::constructors::BookRule;
use crate::linalg::{kernel_of_rows, LinalgError, Mat, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("expected a one-dimensional space of integrals, found dimension {0}")]
    IntegralDimension(usize),
    #[error("integral on H pairs to zero with the left integral")]
    IntegralNormalization,
    #[error("S^2 does not act on the integral by a scalar")]
    NotEigenvector,
    #[error("malformed structure constants: {0}")]
    Malformed(String),
    #[error("tensor index space too large ({dim}^{n})")]
    TooLarge { dim: usize, n: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Comult = Vec<(usize, usize, CycNum)>;

pub(crate) enum Structure {
    Tables {
        /// `mult[i * d + j]` is the product `a_i a_j`.
        mult: Vec<SparseVec>,
        comult: Vec<Comult>,
    },
    Book {
        rule: BookRule,
        comult: Vec<OnceLock<Comult>>,
    },
}

/// An algebra generator with lazily built left, right and adjoint
/// operators.
pub struct Generator {
    pub label: String,
    pub element: SparseVec,
    left: OnceLock<Mat>,
    right: OnceLock<Mat>,
    adjoint: OnceLock<Mat>,
}

impl Generator {
    pub(crate) fn new(label: impl Into<String>, element: SparseVec) -> Self {
        Generator {
            label: label.into(),
            element,
            left: OnceLock::new(),
            right: OnceLock::new(),
            adjoint: OnceLock::new(),
        }
    }
}

pub struct HopfAlgebra {
    field: CycField,
    dim: usize,
    label: String,
    unit: SparseVec,
    counit: Vec<CycNum>,
    antipode: Mat,
    antipode_cols: Vec<SparseVec>,
    structure: Structure,
    generators: Vec<Generator>,
    words: Vec<Vec<usize>>,
    basis_names: Option<Vec<String>>,
    s_squared: OnceLock<Mat>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfAlgebra({}, dim {}, Q(zeta{}))", self.label, self.dim, self.field.order())
    }
}

/// Result of one axiom check. `witness` holds the first failing basis
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const AXIOMS: [&str; 8] = [
    "associativity",
    "unit",
    "coassociativity",
    "counit",
    "comult_multiplicative",
    "counit_multiplicative",
    "antipode",
    "antipode_invertible",
];

fn first_failure<I, F>(indices: I, mut ok: F) -> Option<Vec<usize>>
where
    I: IntoIterator<Item = Vec<usize>>,
    F: FnMut(&[usize]) -> bool,
{
    indices.into_iter().find(|ix| !ok(ix))
}

impl HopfAlgebra {
    /// Builds an algebra from explicit tables. Every basis element is used as
    /// a generator.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        field: &CycField,
        label: impl Into<String>,
        unit: SparseVec,
        mult: Vec<SparseVec>,
        comult: Vec<Comult>,
        counit: Vec<CycNum>,
        antipode: Mat,
        basis_names: Option<Vec<String>>,
    ) -> Result<HopfAlgebra, HopfError> {
        let d = counit.len();
        let bad = |what: &str| Err(HopfError::Malformed(what.to_string()));
        if mult.len() != d * d {
            return bad("multiplication table has wrong size");
        }
        if comult.len() != d {
            return bad("comultiplication table has wrong size");
        }
        if antipode.rows() != d || antipode.cols() != d {
            return bad("antipode has wrong shape");
        }
        if unit.support_bound() > d || mult.iter().any(|v| v.support_bound() > d) {
            return bad("basis index out of range");
        }
        if comult.iter().flatten().any(|(j, k, _)| *j >= d || *k >= d) {
            return bad("basis index out of range in comultiplication");
        }
        if basis_names.as_ref().is_some_and(|n| n.len() != d) {
            return bad("wrong number of basis names");
        }
        let generators = (0..d)
            .map(|i| {
                let name = basis_names.as_ref().map_or_else(|| format!("e{i}"), |n| n[i].clone());
                Generator::new(name, SparseVec::unit(field, i))
            })
            .collect();
        Ok(HopfAlgebra::assemble(
            field,
            label.into(),
            unit,
            counit,
            antipode,
            Structure::Tables { mult, comult },
            generators,
            (0..d).map(|i| vec![i]).collect(),
            basis_names,
        ))
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        field: &CycField,
        label: String,
        unit: SparseVec,
        counit: Vec<CycNum>,
        antipode: Mat,
        structure: Structure,
        generators: Vec<Generator>,
        words: Vec<Vec<usize>>,
        basis_names: Option<Vec<String>>,
    ) -> HopfAlgebra {
        let antipode_cols = antipode.columns();
        HopfAlgebra {
            field: field.clone(),
            dim: counit.len(),
            label,
            unit,
            counit,
            antipode,
            antipode_cols,
            structure,
            generators,
            words,
            basis_names,
            s_squared: OnceLock::new(),
        }
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn counit(&self) -> &[CycNum] {
        &self.counit
    }

    pub fn antipode(&self) -> &Mat {
        &self.antipode
    }

    pub fn basis_name(&self, i: usize) -> String {
        if let Some(names) = &self.basis_names {
            return names[i].clone();
        }
        match &self.structure {
            Structure::Book { rule, .. } => rule.monomial_name(i),
            Structure::Tables { .. } => format!("e{i}"),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Generator indices whose ordered product is the basis element `i`.
    pub fn basis_word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub(crate) fn book_rule(&self) -> Option<&BookRule> {
        match &self.structure {
            Structure::Book { rule, .. } => Some(rule),
            Structure::Tables { .. } => None,
        }
    }

    /// Index of `x^p y^q g^r` for an algebra built by `book_hopf`.
    pub fn monomial_index(&self, p: usize, q: usize, r: usize) -> Option<usize> {
        let rule = self.book_rule()?;
        (p < rule.n && q < rule.n && r < rule.n).then(|| rule.index(p, q, r))
    }

    /// Exponents `(p, q, r)` of a monomial basis element of `book_hopf`.
    pub fn monomial_exps(&self, i: usize) -> Option<(usize, usize, usize)> {
        Some(self.book_rule()?.exps(i))
    }

    /// `(N, m)` for an algebra built by `book_hopf`.
    pub fn book_params(&self) -> Option<(usize, usize)> {
        self.book_rule().map(|r| (r.n, r.m))
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.structure, Structure::Tables { .. })
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec {
        match &self.structure {
            Structure::Tables { mult, .. } => mult[i * self.dim + j].clone(),
            Structure::Book { rule, .. } => match rule.mono_mul(i, j) {
                None => SparseVec::new(),
                Some((k, e)) => SparseVec::from_sorted(vec![(k, rule.omega(e).clone())]),
            },
        }
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = Vec::with_capacity(a.nnz() * b.nnz());
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let xy = x * y;
                for (k, z) in self.mul_basis(*i, *j).iter() {
                    acc.push((*k, &xy * z));
                }
            }
        }
        SparseVec::from_entries(acc)
    }

    pub fn comult_basis(&self, i: usize) -> &[(usize, usize, CycNum)] {
        match &self.structure {
            Structure::Tables { comult, .. } => &comult[i],
            Structure::Book { rule, comult } => comult[i].get_or_init(|| rule.comult(i)),
        }
    }

    /// Δ(a) as a vector over `d²` coordinates, index `j·d + k` for `a_j ⊗ a_k`.
    pub fn comult(&self, a: &SparseVec) -> SparseVec {
        let d = self.dim;
        SparseVec::from_entries(a.iter().flat_map(|(i, x)| {
            self.comult_basis(*i)
                .iter()
                .map(move |(j, k, c)| (j * d + k, x * c))
        }))
    }

    pub fn counit_of(&self, a: &SparseVec) -> CycNum {
        let mut acc = self.field.zero();
        for (i, x) in a.iter() {
            acc = &acc + &(x * &self.counit[*i]);
        }
        acc
    }

    pub fn antipode_basis(&self, i: usize) -> &SparseVec {
        &self.antipode_cols[i]
    }

    pub fn antipode_of(&self, a: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, x) in a.iter() {
            acc = acc.axpy(x, &self.antipode_cols[*i]);
        }
        acc
    }

    pub fn s_squared(&self) -> &Mat {
        self.s_squared
            .get_or_init(|| self.antipode.mul(&self.antipode).expect("square antipode"))
    }

    /// Product in `H ⊗ H` of two vectors over `d²` coordinates.
    pub fn mul_tensor(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let d = self.dim;
        let mut acc = Vec::new();
        for (u, x) in a.iter() {
            for (v, y) in b.iter() {
                let left = self.mul_basis(u / d, v / d);
                if left.is_zero() {
                    continue;
                }
                let right = self.mul_basis(u % d, v % d);
                let xy = x * y;
                for (p, s) in left.iter() {
                    let c = &xy * s;
                    for (q, t) in right.iter() {
                        acc.push((p * d + q, &c * t));
                    }
                }
            }
        }
        SparseVec::from_entries(acc)
    }

    fn op_matrix<F>(&self, image: F) -> Mat
    where
        F: Fn(usize) -> SparseVec,
    {
        let cols: Vec<SparseVec> = (0..self.dim).map(image).collect();
        Mat::from_columns(&self.field, self.dim, &cols)
    }

    /// Matrix of `b ↦ a·b`.
    pub fn left_mult_matrix(&self, a: &SparseVec) -> Mat {
        self.op_matrix(|j| self.mul(a, &SparseVec::unit(&self.field, j)))
    }

    /// Matrix of `b ↦ b·a`.
    pub fn right_mult_matrix(&self, a: &SparseVec) -> Mat {
        self.op_matrix(|j| self.mul(&SparseVec::unit(&self.field, j), a))
    }

    /// Matrix of `b ↦ h_(1) b S(h_(2))`.
    pub fn adjoint_matrix(&self, h: &SparseVec) -> Mat {
        let delta = self.comult(h);
        let d = self.dim;
        self.op_matrix(|j| {
            let b = SparseVec::unit(&self.field, j);
            let mut acc = SparseVec::new();
            for (u, c) in delta.iter() {
                let left = self.mul(&SparseVec::unit(&self.field, u / d), &b);
                let term = self.mul(&left, &self.antipode_cols[u % d]);
                acc = acc.axpy(c, &term);
            }
            acc
        })
    }

    pub fn generator_left(&self, k: usize) -> &Mat {
        let g = &self.generators[k];
        g.left.get_or_init(|| self.left_mult_matrix(&g.element))
    }

    pub fn generator_right(&self, k: usize) -> &Mat {
        let g = &self.generators[k];
        g.right.get_or_init(|| self.right_mult_matrix(&g.element))
    }

    pub fn generator_adjoint(&self, k: usize) -> &Mat {
        let g = &self.generators[k];
        g.adjoint.get_or_init(|| self.adjoint_matrix(&g.element))
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        let d = self.dim;
        let f = &self.field;
        let e = |i| SparseVec::unit(f, i);
        let pairs = || (0..d).flat_map(move |i| (0..d).map(move |j| vec![i, j]));
        let singles = || (0..d).map(|i| vec![i]);
        let mut checks = Vec::new();
        let mut push = |name: &'static str, witness: Option<Vec<usize>>| {
            checks.push(AxiomCheck {
                name,
                passed: witness.is_none(),
                witness,
            })
        };

        let assoc = first_failure(
            (0..d).flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| vec![i, j, k]))),
            |ix| {
                let ab = self.mul_basis(ix[0], ix[1]);
                let bc = self.mul_basis(ix[1], ix[2]);
                self.mul(&ab, &e(ix[2])) == self.mul(&e(ix[0]), &bc)
            },
        );
        push("associativity", assoc);

        let unit = first_failure(singles(), |ix| {
            let a = e(ix[0]);
            self.mul(&self.unit, &a) == a && self.mul(&a, &self.unit) == a
        });
        push("unit", unit);

        let coassoc = first_failure(singles(), |ix| {
            let delta = self.comult(&e(ix[0]));
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (u, c) in delta.iter() {
                let (a, b) = (u / d, u % d);
                for (j, k, x) in self.comult_basis(a) {
                    left.push(((j * d + k) * d + b, c * x));
                }
                for (j, k, x) in self.comult_basis(b) {
                    right.push(((a * d + j) * d + k, c * x));
                }
            }
            SparseVec::from_entries(left) == SparseVec::from_entries(right)
        });
        push("coassociativity", coassoc);

        let counit = first_failure(singles(), |ix| {
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for (j, k, c) in self.comult_basis(ix[0]) {
                left = left.axpy(&(c * &self.counit[*j]), &e(*k));
                right = right.axpy(&(c * &self.counit[*k]), &e(*j));
            }
            left == e(ix[0]) && right == e(ix[0])
        });
        push("counit", counit);

        let unit_tensor = {
            let mut t = Vec::new();
            for (i, x) in self.unit.iter() {
                for (j, y) in self.unit.iter() {
                    t.push((i * d + j, x * y));
                }
            }
            SparseVec::from_entries(t)
        };
        let comult_mult = if self.comult(&self.unit) != unit_tensor {
            Some(vec![])
        } else {
            let deltas: Vec<SparseVec> = (0..d).map(|i| self.comult(&e(i))).collect();
            first_failure(pairs(), |ix| {
                self.comult(&self.mul_basis(ix[0], ix[1])) == self.mul_tensor(&deltas[ix[0]], &deltas[ix[1]])
            })
        };
        push("comult_multiplicative", comult_mult);

        let counit_mult = if !self.counit_of(&self.unit).is_one() {
            Some(vec![])
        } else {
            first_failure(pairs(), |ix| {
                self.counit_of(&self.mul_basis(ix[0], ix[1])) == &self.counit[ix[0]] * &self.counit[ix[1]]
            })
        };
        push("counit_multiplicative", counit_mult);

        let antipode = first_failure(singles(), |ix| {
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for (j, k, c) in self.comult_basis(ix[0]) {
                left = left.axpy(c, &self.mul(&self.antipode_cols[*j], &e(*k)));
                right = right.axpy(c, &self.mul(&e(*j), &self.antipode_cols[*k]));
            }
            let target = self.unit.scaled(&self.counit[ix[0]]);
            left == target && right == target
        });
        push("antipode", antipode);

        let invertible = match self.antipode.inverse() {
            Ok(_) => None,
            Err(_) => Some(vec![]),
        };
        push("antipode_invertible", invertible);

        AxiomReport { checks }
    }

    fn power_dim(&self, n: usize) -> Result<usize, HopfError> {
        self.dim
            .checked_pow(n as u32)
            .ok_or(HopfError::TooLarge { dim: self.dim, n })
    }

    /// `Δ^{(n)}(a)` over `d^n` coordinates (row-major in the legs); `n = 1`
    /// returns `a`.
    pub fn iterated_comult(&self, a: &SparseVec, n: usize) -> Result<SparseVec, HopfError> {
        assert!(n >= 1);
        self.power_dim(n)?;
        let d = self.dim;
        let mut cur = a.clone();
        for k in 1..n {
            let tail = d.pow(k as u32 - 1);
            let mut next = Vec::new();
            for (u, c) in cur.iter() {
                let (head, rest) = (u / tail, u % tail);
                for (j, l, x) in self.comult_basis(head) {
                    next.push(((j * d + l) * tail + rest, c * x));
                }
            }
            cur = SparseVec::from_entries(next);
        }
        Ok(cur)
    }

    /// Matrix of `Δ^{(n)}` as a `d^n × d` map.
    pub fn iterated_comult_matrix(&self, n: usize) -> Result<Mat, HopfError> {
        let rows = self.power_dim(n)?;
        let cols = (0..self.dim)
            .map(|i| self.iterated_comult(&SparseVec::unit(&self.field, i), n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::from_columns(&self.field, rows, &cols))
    }

    /// `(f ⋆ g)(h) = f(h_(1)) g(h_(2))`.
    pub fn convolution(&self, f: &Mat, g: &Mat) -> Result<Mat, HopfError> {
        let d = self.dim;
        for m in [f, g] {
            if m.rows() != d || m.cols() != d {
                return Err(LinalgError::DimensionMismatch {
                    left: (d, d),
                    right: (m.rows(), m.cols()),
                }
                .into());
            }
        }
        let fc = f.columns();
        let gc = g.columns();
        let cols: Vec<SparseVec> = (0..d)
            .map(|h| {
                let mut acc = SparseVec::new();
                for (j, k, c) in self.comult_basis(h) {
                    acc = acc.axpy(c, &self.mul(&fc[*j], &gc[*k]));
                }
                acc
            })
            .collect();
        Ok(Mat::from_columns(&self.field, d, &cols))
    }

    /// The convolution unit `h ↦ ε(h)·1`.
    pub fn conv_unit(&self) -> Mat {
        let cols: Vec<SparseVec> = self.counit.iter().map(|c| self.unit.scaled(c)).collect();
        Mat::from_columns(&self.field, self.dim, &cols)
    }

    /// `id^{⋆m}`; for `m < 0` this is `S^{⋆(−m)}`.
    pub fn conv_power_of_id(&self, m: i64) -> Result<Mat, HopfError> {
        let base = if m >= 0 {
            Mat::identity(&self.field, self.dim)
        } else {
            self.antipode.clone()
        };
        let mut acc = self.conv_unit();
        for _ in 0..m.unsigned_abs() {
            acc = self.convolution(&acc, &base)?;
        }
        Ok(acc)
    }

    /// `Trace(S ∘ id^{⋆(n−1)})`.
    pub fn kmn_indicator(&self, n: i64) -> Result<CycNum, HopfError> {
        let p = self.conv_power_of_id(n - 1)?;
        Ok(self.antipode.mul(&p)?.trace())
    }

    fn generator_kernel<F>(&self, op: F) -> Vec<SparseVec>
    where
        F: Fn(usize) -> Mat,
    {
        let rows: Vec<SparseVec> = (0..self.generators.len())
            .flat_map(|k| op(k).row_vecs().to_vec())
            .collect();
        kernel_of_rows(&self.field, self.dim, rows)
    }

    fn minus_counit(&self, m: &Mat, k: usize) -> Mat {
        let c = self.counit_of(&self.generators[k].element);
        m.sub_scalar_identity(&c).expect("square operator")
    }

    /// Basis of `{Λ : hΛ = ε(h)Λ}`.
    pub fn left_integrals(&self) -> Vec<SparseVec> {
        self.generator_kernel(|k| self.minus_counit(self.generator_left(k), k))
    }

    /// Basis of `{Λ : Λh = ε(h)Λ}`.
    pub fn right_integrals(&self) -> Vec<SparseVec> {
        self.generator_kernel(|k| self.minus_counit(self.generator_right(k), k))
    }

    pub fn left_integral(&self) -> Result<SparseVec, HopfError> {
        let mut ints = self.left_integrals();
        if ints.len() != 1 {
            return Err(HopfError::IntegralDimension(ints.len()));
        }
        Ok(ints.pop().unwrap())
    }

    pub fn is_semisimple(&self) -> Result<bool, HopfError> {
        Ok(!self.counit_of(&self.left_integral()?).is_zero())
    }

    /// The left integral with `ε(Λ) = 1`.
    pub fn normalized_left_integral(&self) -> Result<SparseVec, HopfError> {
        let l = self.left_integral()?;
        let eps = self.counit_of(&l);
        if eps.is_zero() {
            return Err(HopfError::NotSemisimple);
        }
        Ok(l.scaled(&eps.invert()?))
    }

    /// The scalar `c` with `S²(Λ) = cΛ` for the left integral `Λ`.
    pub fn integral_scalar(&self) -> Result<CycNum, HopfError> {
        let l = self.left_integral()?;
        let image = self.s_squared().mul_vec(&l);
        let (i, lead) = l.leading().expect("nonzero integral").clone();
        let c = &image.get(i).cloned().unwrap_or_else(|| self.field.zero()) * &lead.invert()?;
        if image != l.scaled(&c) {
            return Err(HopfError::NotEigenvector);
        }
        Ok(c)
    }

    /// The functional `λ` with `λ(h_(1))h_(2) = λ(h)1` and `⟨λ, Λ⟩ = 1`.
    pub fn dual_right_integral(&self, lambda_big: &SparseVec) -> Result<Vec<CycNum>, HopfError> {
        let d = self.dim;
        let mut rows: BTreeMap<(usize, usize), Vec<(usize, CycNum)>> = BTreeMap::new();
        for h in 0..d {
            for (j, l, c) in self.comult_basis(h) {
                rows.entry((h, *l)).or_default().push((*j, c.clone()));
            }
            for (k, u) in self.unit.iter() {
                rows.entry((h, *k)).or_default().push((h, -u));
            }
        }
        let kernel = kernel_of_rows(&self.field, d, rows.into_values().map(SparseVec::from_entries));
        let v = kernel
            .into_iter()
            .find(|v| !v.dot(lambda_big, &self.field).is_zero())
            .ok_or(HopfError::IntegralNormalization)?;
        let scale = v.dot(lambda_big, &self.field).invert()?;
        Ok(v.scaled(&scale).to_dense(&self.field, d))
    }

    /// Checks `λ(h_(1))h_(2) = λ(h)1` (right) or `h_(1)λ(h_(2)) = λ(h)1`
    /// (left) on every basis element.
    pub fn is_dual_integral(&self, lambda: &[CycNum], right: bool) -> bool {
        (0..self.dim).all(|h| {
            let mut acc = SparseVec::new();
            for (j, l, c) in self.comult_basis(h) {
                let (coef_idx, leg) = if right { (*j, *l) } else { (*l, *j) };
                acc = acc.axpy(&(c * &lambda[coef_idx]), &SparseVec::unit(&self.field, leg));
            }
            acc == self.unit.scaled(&lambda[h])
        })
    }

    pub fn center_basis(&self) -> Vec<SparseVec> {
        self.generator_kernel(|k| {
            self.generator_left(k)
                .sub(self.generator_right(k))
                .expect("same shape")
        })
    }

    /// Smallest `m ≤ limit` for which `S^{2m}` is inner, certified by an
    /// invertible `a` with `S^{2m}(h)a = ah`. Candidates are basis vectors of
    /// the solution space and then `trials` random combinations with
    /// coefficients in `-3..=3`.
    pub fn inner_order_of_s2(&self, limit: u64, trials: usize, seed: u64) -> Result<Option<u64>, HopfError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s2 = self.s_squared();
        let mut power = Mat::identity(&self.field, self.dim);
        for m in 1..=limit {
            power = power.mul(s2)?;
            if power.is_identity() {
                return Ok(Some(m));
            }
            let w = self.generator_kernel(|k| {
                let g = &self.generators[k].element;
                let twisted = power.mul_vec(g);
                self.left_mult_matrix(&twisted)
                    .sub(self.generator_right(k))
                    .expect("same shape")
            });
            if w.is_empty() {
                continue;
            }
            let invertible = |a: &SparseVec| self.left_mult_matrix(a).rank() == self.dim;
            if w.iter().any(invertible) {
                return Ok(Some(m));
            }
            if w.len() > 1 {
                for _ in 0..trials {
                    let mut a = SparseVec::new();
                    for b in &w {
                        let c = self.field.from_int(rng.gen_range(-3..=3));
                        a = a.axpy(&c, b);
                    }
                    if !a.is_zero() && invertible(&a) {
                        return Ok(Some(m));
                    }
                }
            }
        }
        Ok(None)
    }

    /// A copy with explicit multiplication and comultiplication tables and
    /// every basis element as a generator.
    pub fn materialize(&self) -> HopfAlgebra {
        let d = self.dim;
        let mult = (0..d * d).map(|ij| self.mul_basis(ij / d, ij % d)).collect();
        let comult = (0..d).map(|i| self.comult_basis(i).to_vec()).collect();
        let names = (0..d).map(|i| self.basis_name(i)).collect();
        HopfAlgebra::from_tables(
            &self.field,
            self.label.clone(),
            self.unit.clone(),
            mult,
            comult,
            self.counit.clone(),
            self.antipode.clone(),
            Some(names),
        )
        .expect("consistent tables")
    }

    /// Replaces the generating set. `words[i]` must multiply out to the
    /// basis element `i`.
    pub fn with_generators(mut self, gens: Vec<(String, SparseVec)>, words: Vec<Vec<usize>>) -> Result<HopfAlgebra, HopfError> {
        let d = self.dim;
        if words.len() != d {
            return Err(HopfError::Malformed("need one word per basis element".into()));
        }
        if gens.iter().any(|(_, v)| v.support_bound() > d) {
            return Err(HopfError::Malformed("generator outside the algebra".into()));
        }
        for (i, word) in words.iter().enumerate() {
            let mut prod = self.unit.clone();
            for &k in word {
                let (_, g) = gens.get(k).ok_or_else(|| HopfError::Malformed(format!("word {i} uses unknown generator {k}")))?;
                prod = self.mul(&prod, g);
            }
            if prod != SparseVec::unit(&self.field, i) {
                return Err(HopfError::Malformed(format!("word {i} does not multiply to basis element {i}")));
            }
        }
        self.generators = gens.into_iter().map(|(l, v)| Generator::new(l, v)).collect();
        self.words = words;
        Ok(self)
    }
}
