//! Modules over a Hopf algebra, pivotal pairs and their indicators.

use std::collections::{BTreeMap, VecDeque};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{CycField, CycNum};
use crate::constructors::GroupPresentation;
use crate::hopf::{HopfAlgebra, HopfError};
use crate::linalg::{kernel_of_rows, LinalgError, Mat, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("action matrices have the wrong shape or count: {0}")]
    Shape(String),
    #[error("module law fails for basis pair ({0}, {1})")]
    ModuleLaw(usize, usize),
    #[error("phi does not intertwine the action with its S^2 twist (generator {0})")]
    NotPivotal(usize),
    #[error("module is not absolutely simple (End has dimension {0})")]
    NotAbsolutelySimple(usize),
    #[error("no isomorphism V -> V** found")]
    NoPivotalIso,
    #[error("no isomorphism V -> V* found")]
    NotSelfDual,
    #[error("the antipode does not preserve the annihilator")]
    AnnihilatorNotStable,
    #[error("E maps an invariant tensor outside the invariant subspace")]
    InvarianceViolated,
    #[error("tensor power too large")]
    TooLarge,
    #[error("modules over different algebras")]
    ParentMismatch,
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A left module, stored as the action of each algebra generator. Actions of
/// basis elements are products along the algebra's basis words.
pub struct HModule {
    hopf: Arc<HopfAlgebra>,
    label: String,
    dim: usize,
    gen_actions: Vec<Mat>,
    basis_actions: Vec<OnceLock<Mat>>,
}

impl Clone for HModule {
    fn clone(&self) -> Self {
        HModule {
            hopf: self.hopf.clone(),
            label: self.label.clone(),
            dim: self.dim,
            gen_actions: self.gen_actions.clone(),
            basis_actions: self.basis_actions.to_vec(),
        }
    }
}

impl std::fmt::Debug for HModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HModule({}, dim {} over {})", self.label, self.dim, self.hopf.label())
    }
}

fn random_combination(field: &CycField, basis: &[Mat], rng: &mut ChaCha8Rng) -> Option<Mat> {
    let first = basis.first()?;
    let mut acc = Mat::zeros(field, first.rows(), first.cols());
    for b in basis {
        let c = field.from_int(rng.gen_range(-3..=3));
        acc = acc.add(&b.scale(&c)).ok()?;
    }
    Some(acc)
}

/// First invertible matrix among `basis`, then among `trials` random
/// combinations with coefficients in `-3..=3`.
pub fn find_invertible(field: &CycField, basis: &[Mat], trials: usize, seed: u64) -> Option<Mat> {
    if let Some(m) = basis.iter().find(|m| m.is_square() && m.rank() == m.rows()) {
        return Some(m.clone());
    }
    if basis.len() < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .filter_map(|_| random_combination(field, basis, &mut rng))
        .find(|m| m.rank() == m.rows())
}

pub const DEFAULT_TRIALS: usize = 64;
pub const DEFAULT_SEED: u64 = 0x5eed;

impl HModule {
    /// A module from the action of each generator of `hopf`, in the order of
    /// `hopf.generators()`.
    pub fn from_generator_actions(
        hopf: Arc<HopfAlgebra>,
        label: impl Into<String>,
        gen_actions: Vec<Mat>,
    ) -> Result<HModule, ModuleError> {
        if gen_actions.len() != hopf.generators().len() {
            return Err(ModuleError::Shape(format!(
                "{} actions for {} generators",
                gen_actions.len(),
                hopf.generators().len()
            )));
        }
        let dim = gen_actions.first().map_or(0, Mat::rows);
        if gen_actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(ModuleError::Shape("actions must be square of equal size".into()));
        }
        let d = hopf.dim();
        Ok(HModule {
            hopf,
            label: label.into(),
            dim,
            gen_actions,
            basis_actions: (0..d).map(|_| OnceLock::new()).collect(),
        })
    }

    /// A module from the action of every basis element.
    pub fn from_basis_actions(
        hopf: Arc<HopfAlgebra>,
        label: impl Into<String>,
        actions: Vec<Mat>,
    ) -> Result<HModule, ModuleError> {
        if actions.len() != hopf.dim() {
            return Err(ModuleError::Shape(format!("{} actions for dimension {}", actions.len(), hopf.dim())));
        }
        let dim = actions.first().map_or(0, Mat::rows);
        if actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(ModuleError::Shape("actions must be square of equal size".into()));
        }
        let gen_actions = hopf
            .generators()
            .iter()
            .map(|g| combine(&hopf, dim, &actions, &g.element))
            .collect();
        let basis_actions = actions
            .into_iter()
            .map(|m| {
                let cell = OnceLock::new();
                let _ = cell.set(m);
                cell
            })
            .collect();
        Ok(HModule {
            hopf,
            label: label.into(),
            dim,
            gen_actions,
            basis_actions,
        })
    }

    pub fn trivial(hopf: Arc<HopfAlgebra>) -> HModule {
        let f = hopf.field().clone();
        let gens = hopf
            .generators()
            .iter()
            .map(|g| Mat::diagonal(&f, vec![hopf.counit_of(&g.element)]))
            .collect();
        HModule::from_generator_actions(hopf, "trivial", gens).expect("1x1 actions")
    }

    pub fn regular(hopf: Arc<HopfAlgebra>) -> HModule {
        let gens = (0..hopf.generators().len()).map(|k| hopf.generator_left(k).clone()).collect();
        HModule::from_generator_actions(hopf, "regular", gens).expect("left multiplication")
    }

    /// `h ▷ a = h_(1) a S(h_(2))` on the underlying space of H.
    pub fn adjoint(hopf: Arc<HopfAlgebra>) -> HModule {
        let gens = (0..hopf.generators().len()).map(|k| hopf.generator_adjoint(k).clone()).collect();
        HModule::from_generator_actions(hopf, "adjoint", gens).expect("adjoint action")
    }

    /// A representation of `G` on the group algebra `hopf` (built from the
    /// same presentation), given the images of some generating elements.
    pub fn from_group_generators(
        hopf: Arc<HopfAlgebra>,
        group: &GroupPresentation,
        label: impl Into<String>,
        images: &[(usize, Mat)],
    ) -> Result<HModule, ModuleError> {
        let f = hopf.field().clone();
        let dim = images.first().map_or(1, |(_, m)| m.rows());
        let mut reps: Vec<Option<Mat>> = vec![None; group.order()];
        reps[group.identity] = Some(Mat::identity(&f, dim));
        let mut queue = VecDeque::from([group.identity]);
        while let Some(a) = queue.pop_front() {
            for (g, m) in images {
                let ag = group.mul(a, *g);
                let prod = reps[a].as_ref().unwrap().mul(m)?;
                match &reps[ag] {
                    Some(existing) if *existing != prod => return Err(ModuleError::ModuleLaw(a, *g)),
                    Some(_) => {}
                    None => {
                        reps[ag] = Some(prod);
                        queue.push_back(ag);
                    }
                }
            }
        }
        let actions = reps
            .into_iter()
            .map(|m| m.ok_or_else(|| ModuleError::Shape("images do not generate the group".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let module = HModule::from_basis_actions(hopf, label, actions)?;
        module.verify()?;
        Ok(module)
    }

    /// The one-dimensional module through a character given on generators.
    pub fn character(hopf: Arc<HopfAlgebra>, label: impl Into<String>, values: Vec<CycNum>) -> Result<HModule, ModuleError> {
        let f = hopf.field().clone();
        let gens = values.into_iter().map(|v| Mat::diagonal(&f, vec![v])).collect();
        let m = HModule::from_generator_actions(hopf, label, gens)?;
        m.verify()?;
        Ok(m)
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &CycField {
        self.hopf.field()
    }

    pub fn generator_actions(&self) -> &[Mat] {
        &self.gen_actions
    }

    /// `ρ(a_i)`.
    pub fn basis_action(&self, i: usize) -> &Mat {
        self.basis_actions[i].get_or_init(|| {
            let mut acc = Mat::identity(self.field(), self.dim);
            for &k in self.hopf.basis_word(i) {
                acc = acc.mul(&self.gen_actions[k]).expect("square actions");
            }
            acc
        })
    }

    /// `ρ(h)` for an arbitrary element.
    pub fn action_of(&self, h: &SparseVec) -> Mat {
        let mut acc = Mat::zeros(self.field(), self.dim, self.dim);
        for (i, c) in h.iter() {
            acc = acc.add(&self.basis_action(*i).scale(c)).expect("same shape");
        }
        acc
    }

    /// Checks `ρ(1) = I` and `ρ(a_i)ρ(a_j) = ρ(a_i a_j)` over the basis.
    pub fn verify(&self) -> Result<(), ModuleError> {
        if !self.action_of(self.hopf.unit()).is_identity() {
            return Err(ModuleError::ModuleLaw(usize::MAX, usize::MAX));
        }
        let d = self.hopf.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.basis_action(i).mul(self.basis_action(j))?;
                if lhs != self.action_of(&self.hopf.mul_basis(i, j)) {
                    return Err(ModuleError::ModuleLaw(i, j));
                }
            }
        }
        Ok(())
    }

    /// `ρ*(h) = ρ(S(h))^T`.
    pub fn dual(&self) -> HModule {
        let gens = self
            .hopf
            .generators()
            .iter()
            .map(|g| self.action_of(&self.hopf.antipode_of(&g.element)).transpose())
            .collect();
        HModule::from_generator_actions(self.hopf.clone(), format!("{}*", self.label), gens).expect("dual actions")
    }

    /// The action `ρ ∘ S²`, i.e. the double dual in canonical coordinates.
    pub fn double_dual(&self) -> HModule {
        let s2 = self.hopf.s_squared();
        let gens = self
            .hopf
            .generators()
            .iter()
            .map(|g| self.action_of(&s2.mul_vec(&g.element)))
            .collect();
        HModule::from_generator_actions(self.hopf.clone(), format!("{}**", self.label), gens).expect("twisted actions")
    }

    /// `V^{⊗n}`, with the action of `h` given by `Δ^{(n)}(h)` and Kronecker
    /// products.
    pub fn tensor_power(&self, n: usize) -> Result<HModule, ModuleError> {
        assert!(n >= 1);
        if n == 1 {
            return Ok(self.clone());
        }
        let big = self.dim.checked_pow(n as u32).ok_or(ModuleError::TooLarge)?;
        let d = self.hopf.dim();
        let gens = self
            .hopf
            .generators()
            .iter()
            .map(|g| {
                let delta = self.hopf.iterated_comult(&g.element, n)?;
                let mut acc = Mat::zeros(self.field(), big, big);
                for (idx, c) in delta.iter() {
                    let mut legs = vec![0; n];
                    let mut rest = *idx;
                    for leg in legs.iter_mut().rev() {
                        *leg = rest % d;
                        rest /= d;
                    }
                    let mut term = self.basis_action(legs[0]).clone();
                    for &l in &legs[1..] {
                        if term.is_zero() {
                            break;
                        }
                        term = term.kron(self.basis_action(l));
                    }
                    if !term.is_zero() {
                        acc = acc.add(&term.scale(c))?;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>, ModuleError>>()?;
        HModule::from_generator_actions(self.hopf.clone(), format!("{}^{n}", self.label), gens)
    }

    /// `V ⊗ W` with `h ↦ Σ ρ_V(h_(1)) ⊗ ρ_W(h_(2))`.
    pub fn tensor(&self, other: &HModule) -> Result<HModule, ModuleError> {
        if !Arc::ptr_eq(&self.hopf, &other.hopf) {
            return Err(ModuleError::ParentMismatch);
        }
        let big = self.dim * other.dim;
        let gens = self
            .hopf
            .generators()
            .iter()
            .map(|g| {
                let delta = self.hopf.comult(&g.element);
                let d = self.hopf.dim();
                let mut acc = Mat::zeros(self.field(), big, big);
                for (idx, c) in delta.iter() {
                    let term = self.basis_action(idx / d).kron(other.basis_action(idx % d));
                    acc = acc.add(&term.scale(c))?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>, ModuleError>>()?;
        HModule::from_generator_actions(self.hopf.clone(), format!("{}⊗{}", self.label, other.label), gens)
    }

    /// Basis of `{v : ρ(h)v = ε(h)v}` in reduced echelon form.
    pub fn invariants(&self) -> Vec<SparseVec> {
        let rows = self.hopf.generators().iter().zip(&self.gen_actions).flat_map(|(g, m)| {
            let eps = self.hopf.counit_of(&g.element);
            m.sub_scalar_identity(&eps).expect("square").row_vecs().to_vec()
        });
        kernel_of_rows(self.field(), self.dim, rows.collect::<Vec<_>>())
    }

    /// Basis of `Hom_H(V, W)`: matrices `f` (`dim W × dim V`) with
    /// `f ρ_V(h) = ρ_W(h) f`.
    pub fn hom_space(&self, w: &HModule) -> Result<Vec<Mat>, ModuleError> {
        if !Arc::ptr_eq(&self.hopf, &w.hopf) {
            return Err(ModuleError::ParentMismatch);
        }
        let (dv, dw) = (self.dim, w.dim);
        let f = self.field();
        let mut rows = Vec::new();
        for (a, b) in self.gen_actions.iter().zip(&w.gen_actions) {
            // vec(f A) = (I ⊗ Aᵀ) vec f and vec(B f) = (B ⊗ I) vec f, row-major
            let lhs = Mat::identity(f, dw).kron(&a.transpose());
            let rhs = b.kron(&Mat::identity(f, dv));
            rows.extend(lhs.sub(&rhs)?.row_vecs().iter().cloned());
        }
        let kernel = kernel_of_rows(f, dv * dw, rows);
        Ok(kernel.iter().map(|v| unvec(f, v, dw, dv)).collect())
    }

    /// An invertible `φ ∈ Hom_H(V, V**)`, searched as in [`find_invertible`].
    pub fn find_pivotal(&self) -> Result<Option<PivotalModule>, ModuleError> {
        let space = self.hom_space(&self.double_dual())?;
        match find_invertible(self.field(), &space, DEFAULT_TRIALS, DEFAULT_SEED) {
            Some(phi) => Ok(Some(PivotalModule::new(self.clone(), phi)?)),
            None => Ok(None),
        }
    }

    pub fn is_absolutely_simple(&self) -> Result<bool, ModuleError> {
        Ok(self.hom_space(self)?.len() == 1)
    }

    /// An invertible intertwiner `V → V*`, if one is found.
    pub fn find_self_duality(&self) -> Result<Option<Mat>, ModuleError> {
        let space = self.hom_space(&self.dual())?;
        Ok(find_invertible(self.field(), &space, DEFAULT_TRIALS, DEFAULT_SEED))
    }
}

fn combine(hopf: &HopfAlgebra, dim: usize, actions: &[Mat], h: &SparseVec) -> Mat {
    let mut acc = Mat::zeros(hopf.field(), dim, dim);
    for (i, c) in h.iter() {
        acc = acc.add(&actions[*i].scale(c)).expect("same shape");
    }
    acc
}

fn unvec(f: &CycField, v: &SparseVec, rows: usize, cols: usize) -> Mat {
    Mat::from_triplets(f, rows, cols, v.iter().map(|(i, c)| (i / cols, i % cols, c.clone()))).expect("in range")
}

/// Outcome of one `ν_{n,r}` evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorReport {
    pub value: CycNum,
    pub n: i64,
    pub r: i64,
    pub invariant_dim: usize,
    pub e_matrix_order: Option<u64>,
    pub method: String,
}

/// A module with an isomorphism `φ: V → V**`, i.e. `φ ρ(h) = ρ(S²h) φ`.
#[derive(Clone, Debug)]
pub struct PivotalModule {
    module: HModule,
    phi: Mat,
    phi_inv: Mat,
}

/// The rotation operator on invariants of a tensor power, in the reduced
/// echelon basis of the invariants.
pub struct RotationOperator {
    pub basis: Vec<SparseVec>,
    pub matrix: Mat,
}

impl PivotalModule {
    pub fn new(module: HModule, phi: Mat) -> Result<PivotalModule, ModuleError> {
        let phi_inv = phi.inverse()?;
        let twisted = module.double_dual();
        for (k, (a, b)) in module.gen_actions.iter().zip(&twisted.gen_actions).enumerate() {
            if phi.mul(a)? != b.mul(&phi)? {
                return Err(ModuleError::NotPivotal(k));
            }
        }
        Ok(PivotalModule { module, phi, phi_inv })
    }

    /// `(V, φ)` with `φ = P^{-T} P` for an isomorphism `P: V → V*`.
    pub fn from_self_duality(module: HModule, p: &Mat) -> Result<PivotalModule, ModuleError> {
        let phi = p.transpose().inverse()?.mul(p)?;
        PivotalModule::new(module, phi)
    }

    /// The regular module with `φ = S²`.
    pub fn regular(hopf: Arc<HopfAlgebra>) -> PivotalModule {
        let phi = hopf.s_squared().clone();
        PivotalModule::new(HModule::regular(hopf), phi).expect("S^2 intertwines the regular action")
    }

    pub fn module(&self) -> &HModule {
        &self.module
    }

    pub fn phi(&self) -> &Mat {
        &self.phi
    }

    /// `(V, cφ)`.
    pub fn scaled(&self, c: &CycNum) -> Result<PivotalModule, ModuleError> {
        PivotalModule::new(self.module.clone(), self.phi.scale(c))
    }

    /// `(V*, φ^{-T})`.
    pub fn dual(&self) -> PivotalModule {
        PivotalModule::new(self.module.dual(), self.phi_inv.transpose()).expect("dual pivotal structure")
    }

    /// Checks the intertwining law on every basis element, not only on
    /// generators.
    pub fn check_on_basis(&self) -> bool {
        let h = self.module.hopf();
        let s2 = h.s_squared();
        (0..h.dim()).all(|i| {
            let a = self.module.basis_action(i);
            let b = self.module.action_of(&s2.column(i));
            self.phi.mul(a).ok() == b.mul(&self.phi).ok()
        })
    }

    /// `tr φ`.
    pub fn rdim(&self) -> CycNum {
        self.phi.trace()
    }

    /// `tr φ^{-1}`.
    pub fn ldim(&self) -> CycNum {
        self.phi_inv.trace()
    }

    /// The map `t1 ⊗ … ⊗ tn ↦ t2 ⊗ … ⊗ tn ⊗ φ^{-1}(t1)` on invariants of
    /// `V^{⊗n}`.
    pub fn rotation(&self, n: usize) -> Result<RotationOperator, ModuleError> {
        assert!(n >= 1);
        let power = self.module.tensor_power(n)?;
        let basis = power.invariants();
        let matrix = rotation_matrix(self.module.field(), self.module.dim(), n, &basis, &self.phi_inv)?;
        Ok(RotationOperator { basis, matrix })
    }

    pub fn nu(&self, n: i64, r: i64) -> Result<IndicatorReport, ModuleError> {
        Ok(self.nu_sweep(n, &[r])?.pop().unwrap())
    }

    /// `ν_{n,r}` for several `r`, sharing the invariant solve.
    pub fn nu_sweep(&self, n: i64, rs: &[i64]) -> Result<Vec<IndicatorReport>, ModuleError> {
        if n < 0 {
            let neg: Vec<i64> = rs.iter().map(|r| -r).collect();
            let mut out = self.dual().nu_sweep(-n, &neg)?;
            for (rep, r) in out.iter_mut().zip(rs) {
                rep.n = n;
                rep.r = *r;
                rep.method = "dual".into();
            }
            return Ok(out);
        }
        if n == 0 {
            return rs
                .iter()
                .map(|&r| {
                    let value = if r >= 0 {
                        self.ldim().pow(r)
                    } else {
                        self.rdim().pow(-r)
                    }
                    .map_err(HopfError::from)?;
                    Ok(IndicatorReport {
                        value,
                        n,
                        r,
                        invariant_dim: 1,
                        e_matrix_order: None,
                        method: "dimension".into(),
                    })
                })
                .collect();
        }
        let rot = self.rotation(n as usize)?;
        let order = rot.matrix.multiplicative_order(order_limit(&self.phi, n));
        rs.iter()
            .map(|&r| {
                Ok(IndicatorReport {
                    value: rot.matrix.pow(r)?.trace(),
                    n,
                    r,
                    invariant_dim: rot.basis.len(),
                    e_matrix_order: order,
                    method: "tensor".into(),
                })
            })
            .collect()
    }

    /// Searches for a pivotal isomorphism `f: self → other`: an invertible
    /// module map with `φ_W f = f φ_V`.
    pub fn find_isomorphism(&self, other: &PivotalModule) -> Result<Option<Mat>, ModuleError> {
        let (v, w) = (&self.module, &other.module);
        let (dv, dw) = (v.dim, w.dim);
        if dv != dw {
            return Ok(None);
        }
        let f = v.field();
        let mut rows = Vec::new();
        let pairs = v
            .gen_actions
            .iter()
            .zip(&w.gen_actions)
            .chain(std::iter::once((&self.phi, &other.phi)));
        for (a, b) in pairs {
            let lhs = Mat::identity(f, dw).kron(&a.transpose());
            let rhs = b.kron(&Mat::identity(f, dv));
            rows.extend(lhs.sub(&rhs)?.row_vecs().iter().cloned());
        }
        let space: Vec<Mat> = kernel_of_rows(f, dv * dw, rows)
            .iter()
            .map(|x| unvec(f, x, dw, dv))
            .collect();
        Ok(find_invertible(f, &space, DEFAULT_TRIALS, DEFAULT_SEED))
    }
}

/// A bound for the order search of E: `n` times the order of φ modulo
/// scalars is enough whenever φ has finite order, capped for safety.
fn order_limit(phi: &Mat, n: i64) -> u64 {
    let base = phi.multiplicative_order(64).unwrap_or(64);
    (n as u64).saturating_mul(base).clamp(1, 4096)
}

/// Matrix of the rotation on the span of `basis` (reduced echelon vectors
/// in `V^{⊗n}`); `twist` acts on the leg moved to the end.
pub(crate) fn rotation_matrix(
    field: &CycField,
    dv: usize,
    n: usize,
    basis: &[SparseVec],
    twist: &Mat,
) -> Result<Mat, ModuleError> {
    let tail = dv.pow(n as u32 - 1);
    let twist_cols = twist.columns();
    let pivots: Vec<usize> = basis.iter().map(|b| b.leading().expect("nonzero").0).collect();
    let pivot_pos: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(j, p)| (*p, j)).collect();
    let k = basis.len();
    let mut cols = Vec::with_capacity(k);
    for b in basis {
        let mut image = Vec::new();
        for (idx, c) in b.iter() {
            let (first, rest) = (idx / tail, idx % tail);
            for (t, x) in twist_cols[first].iter() {
                image.push((rest * dv + t, c * x));
            }
        }
        let image = SparseVec::from_entries(image);
        let coords: Vec<(usize, CycNum)> = image
            .iter()
            .filter_map(|(i, c)| pivot_pos.get(i).map(|j| (*j, c.clone())))
            .collect();
        let mut residual = image.clone();
        for (j, c) in &coords {
            residual = residual.axpy(&-c, &basis[*j]);
        }
        if !residual.is_zero() {
            return Err(ModuleError::InvarianceViolated);
        }
        let mut coords = coords;
        coords.sort_by_key(|(j, _)| *j);
        cols.push(SparseVec::from_sorted(coords));
    }
    Ok(Mat::from_columns(field, k, &cols))
}

/// `μ_n(V) = ν_{n,1}(V, φ) · tr φ` for an absolutely simple `V ≅ V**`.
pub fn mu_n(module: &HModule, n: i64) -> Result<CycNum, ModuleError> {
    let end = module.hom_space(module)?.len();
    if end != 1 {
        return Err(ModuleError::NotAbsolutelySimple(end));
    }
    let piv = module.find_pivotal()?.ok_or(ModuleError::NoPivotalIso)?;
    Ok(&piv.nu(n, 1)?.value * &piv.rdim())
}

/// Trace of the map `h + I ↦ S(h) + I` on `H/I`, `I` the annihilator of V.
pub fn jedwab_mu(module: &HModule) -> Result<CycNum, ModuleError> {
    let h = module.hopf();
    let f = h.field();
    let dv = module.dim();
    // columns: vec(ρ(a_i))
    let cols: Vec<SparseVec> = (0..h.dim())
        .map(|i| {
            let m = module.basis_action(i);
            SparseVec::from_sorted(m.triplets().into_iter().map(|(r, c, v)| (r * dv + c, v)).collect())
        })
        .collect();
    let rho = Mat::from_columns(f, dv * dv, &cols);
    let ideal = rho.kernel_basis();
    let pivots: BTreeMap<usize, usize> = ideal
        .iter()
        .enumerate()
        .map(|(j, v)| (v.leading().expect("nonzero").0, j))
        .collect();
    let reduce = |v: &SparseVec| {
        let mut r = v.clone();
        for (p, j) in &pivots {
            if let Some(c) = r.get(*p).cloned() {
                r = r.axpy(&-c, &ideal[*j]);
            }
        }
        r
    };
    for v in &ideal {
        if !reduce(&h.antipode_of(v)).is_zero() {
            return Err(ModuleError::AnnihilatorNotStable);
        }
    }
    let mut trace = f.zero();
    for i in (0..h.dim()).filter(|i| !pivots.contains_key(i)) {
        let image = reduce(h.antipode_basis(i));
        if let Some(c) = image.get(i) {
            trace = &trace + c;
        }
    }
    Ok(trace)
}
