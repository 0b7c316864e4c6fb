//! Dehn twists about the Humphries curves as gates on `H_G^{⊗g}`.
//!
//! The basis of the genus-`g` state space is `|a₁,…,a_g⟩`, `a_i ∈ G`, in the
//! lexicographic order of `G^g`. The Humphries twists act by
//!
//! * `T₁ = L₁`, `T₀ = L₂` with `L|a⟩ = θ_a|a⟩`,
//! * `T_{2i+1} = M_{i,i+1}` with `M|a⟩|b⟩ = θ_{a−b}|a⟩|b⟩`,
//! * `T_{2i} = O_i` with `O|a⟩ = Σ_b θ_a⁻¹ S_{a,b} θ_b⁻¹ |b⟩`,
//!
//! all up to the global factor `p₋/D` on `T₀, T₁, T_{2i+1}`, which is left
//! out unless [`GateOptions::include_anchor`] is set.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::dense::{check_dense_bound, DenseOperator, DEFAULT_DENSE_BOUND};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::model::AbelianAnyonModel;
use crate::phase::RationalPhase;

/// Tolerance used when comparing dense products projectively.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Rounding grid for hashing phase-canonical matrices.
pub const CANONICAL_GRID: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GateKind {
    L,
    M,
    O,
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateKind::L => "L",
            GateKind::M => "M",
            GateKind::O => "O",
        };
        f.write_str(s)
    }
}

/// A gate kind placed on 1-based qudit(s) of a genus-`g` register. `M` acts on
/// `(qudit, qudit + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PlacedGate {
    pub kind: GateKind,
    pub qudit: usize,
    pub genus: usize,
}

impl PlacedGate {
    pub fn new(kind: GateKind, qudit: usize, genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus(genus));
        }
        let last = match kind {
            GateKind::M => qudit + 1,
            _ => qudit,
        };
        if qudit == 0 || last > genus {
            return Err(Error::InvalidArgument(format!("{kind} on qudit {qudit} does not fit genus {genus}")));
        }
        Ok(PlacedGate { kind, qudit, genus })
    }

    /// 1-based qudits the gate touches.
    pub fn qudits(&self) -> Vec<usize> {
        match self.kind {
            GateKind::M => vec![self.qudit, self.qudit + 1],
            _ => vec![self.qudit],
        }
    }

    /// Exact form of the gate on the full register.
    pub fn exact(&self, model: &AbelianAnyonModel) -> Result<ExactOperator> {
        model.require_modular()?;
        let spec = model.group().power(self.genus)?;
        let dim = spec.order() as usize;
        let i = self.qudit - 1;
        match self.kind {
            GateKind::L => Ok(ExactOperator::diagonal(
                (0..dim).map(|idx| model.theta(&spec.element_at(idx).block(i))).collect(),
            )),
            GateKind::M => Ok(ExactOperator::diagonal(
                (0..dim)
                    .map(|idx| {
                        let a = spec.element_at(idx);
                        model.theta(&(&a.block(i) - &a.block(i + 1)))
                    })
                    .collect(),
            )),
            GateKind::O => {
                let local = model.elements();
                let mut entries = Vec::with_capacity(dim * local.len());
                for col in 0..dim {
                    let a = spec.element_at(col);
                    let ai = a.block(i);
                    for b in &local {
                        let mut target = a.clone();
                        target.set_block(i, b);
                        let phase = -model.theta(&ai) + model.bilinear(&ai, b) - model.theta(b);
                        entries.push((target.index(), col, phase));
                    }
                }
                Ok(ExactOperator { dim, scale_pow: 1, entries })
            }
        }
    }

    pub fn dense(&self, model: &AbelianAnyonModel, opts: &GateOptions) -> Result<DenseOperator> {
        let dim = model.group().power(self.genus)?.order();
        check_dense_bound(dim, opts.dense_bound)?;
        let mut m = self.exact(model)?.to_dense(model.order());
        if opts.include_anchor && self.kind != GateKind::O {
            m = m.scale(model.anchor_phase()?);
        }
        Ok(m)
    }
}

impl fmt::Display for PlacedGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GateKind::M => write!(f, "M[{},{}]", self.qudit, self.qudit + 1),
            k => write!(f, "{k}[{}]", self.qudit),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GateOptions {
    /// Multiply `T₀, T₁, T_{2i+1}` by `p₋/D`.
    pub include_anchor: bool,
    pub dense_bound: u64,
}

impl Default for GateOptions {
    fn default() -> Self {
        GateOptions { include_anchor: false, dense_bound: DEFAULT_DENSE_BOUND }
    }
}

/// A sparse matrix whose nonzero entries are `exp(2πi·phase) · |G|^{−scale_pow/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactOperator {
    pub dim: usize,
    pub scale_pow: u32,
    /// `(row, col, phase)`.
    pub entries: Vec<(usize, usize, RationalPhase)>,
}

impl ExactOperator {
    pub fn diagonal(phases: Vec<RationalPhase>) -> Self {
        let dim = phases.len();
        ExactOperator { dim, scale_pow: 0, entries: phases.into_iter().enumerate().map(|(i, p)| (i, i, p)).collect() }
    }

    pub fn to_dense(&self, group_order: usize) -> DenseOperator {
        let scale = (group_order as f64).powf(-(self.scale_pow as f64) / 2.0);
        let mut m = DenseOperator::zeros(self.dim);
        for &(r, c, p) in &self.entries {
            m.set(r, c, p.to_complex() * scale);
        }
        m
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|&(r, c, _)| r == c)
    }

    /// Diagonal phases in row order; `None` unless the operator is a full diagonal.
    pub fn diagonal_phases(&self) -> Option<Vec<RationalPhase>> {
        if !self.is_diagonal() || self.entries.len() != self.dim {
            return None;
        }
        let mut out = vec![RationalPhase::ZERO; self.dim];
        for &(r, _, p) in &self.entries {
            out[r] = p;
        }
        Some(out)
    }
}

/// `L = diag(θ_a)` on a single qudit.
pub fn gate_l(model: &AbelianAnyonModel) -> Result<ExactOperator> {
    PlacedGate::new(GateKind::L, 1, 1)?.exact(model)
}

/// `M = diag(θ_{a−b})` on two qudits.
pub fn gate_m(model: &AbelianAnyonModel) -> Result<ExactOperator> {
    PlacedGate::new(GateKind::M, 1, 2)?.exact(model)
}

/// `O[b,a] = θ_a⁻¹ S_{a,b} θ_b⁻¹` on a single qudit.
pub fn gate_o(model: &AbelianAnyonModel) -> Result<ExactOperator> {
    PlacedGate::new(GateKind::O, 1, 1)?.exact(model)
}

/// The transform `|a⟩ ↦ Σ_b exp(2πi b(a,b))/√|G| |b⟩` sitting between the two
/// `θ⁻¹` layers of `O`.
pub fn bare_transform(model: &AbelianAnyonModel) -> Result<ExactOperator> {
    model.require_modular()?;
    let all = model.elements();
    let mut entries = Vec::with_capacity(all.len() * all.len());
    for (c, a) in all.iter().enumerate() {
        for (r, b) in all.iter().enumerate() {
            entries.push((r, c, model.bilinear(a, b)));
        }
    }
    Ok(ExactOperator { dim: all.len(), scale_pow: 1, entries })
}

/// `diag(θ_a⁻¹)`.
pub fn theta_inverse(model: &AbelianAnyonModel) -> ExactOperator {
    ExactOperator::diagonal(model.elements().iter().map(|a| -model.theta(a)).collect())
}

/// Number of Humphries curves usable at genus `g`: `{1, 2}` for the torus and
/// `{0, …, 2g}` otherwise.
pub fn humphries_indices(genus: usize) -> Vec<usize> {
    if genus == 1 {
        vec![1, 2]
    } else {
        (0..=2 * genus).collect()
    }
}

/// The gate realizing the positive Dehn twist `T_k` at genus `g`.
pub fn humphries_gate(genus: usize, k: usize) -> Result<PlacedGate> {
    if genus == 0 {
        return Err(Error::InvalidGenus(genus));
    }
    let bad = |reason: &str| Error::InvalidHumphriesIndex { genus, index: k, reason: reason.to_string() };
    if k > 2 * genus {
        return Err(bad("index exceeds 2g"));
    }
    match k {
        0 if genus == 1 => Err(bad("the torus carries only the twists T1 and T2; T0 needs genus >= 2")),
        0 => PlacedGate::new(GateKind::L, 2, genus),
        1 => PlacedGate::new(GateKind::L, 1, genus),
        k if k % 2 == 0 => PlacedGate::new(GateKind::O, k / 2, genus),
        k => PlacedGate::new(GateKind::M, (k - 1) / 2, genus),
    }
}

/// Whether the Humphries curves `γ_i` and `γ_j` meet (once). The chain
/// `γ₁,…,γ_{2g}` meets consecutively and `γ₀` meets only `γ₄`.
pub fn humphries_curves_meet(i: usize, j: usize) -> bool {
    let (i, j) = (i.min(j), i.max(j));
    if i == 0 {
        j == 4
    } else {
        j - i == 1
    }
}

/// A word in positive Humphries twists; the rightmost letter acts first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MCGWord {
    pub genus: usize,
    pub letters: Vec<usize>,
}

impl MCGWord {
    pub fn new(genus: usize, letters: Vec<usize>) -> Result<Self> {
        for &k in &letters {
            humphries_gate(genus, k)?;
        }
        Ok(MCGWord { genus, letters })
    }

    pub fn gates(&self) -> Vec<PlacedGate> {
        self.letters.iter().map(|&k| humphries_gate(self.genus, k).expect("validated")).collect()
    }
}

/// Generator images for every Humphries index at `genus`, keyed by index.
pub fn generator_images(
    model: &AbelianAnyonModel,
    genus: usize,
    opts: &GateOptions,
) -> Result<Vec<(usize, DenseOperator)>> {
    humphries_indices(genus).into_iter().map(|k| Ok((k, humphries_gate(genus, k)?.dense(model, opts)?))).collect()
}

pub fn word_to_matrix(word: &MCGWord, model: &AbelianAnyonModel, opts: &GateOptions) -> Result<DenseOperator> {
    model.require_modular()?;
    let dim = model.group().power(word.genus)?.order();
    check_dense_bound(dim, opts.dense_bound)?;
    let mut cache: HashMap<usize, DenseOperator> = HashMap::new();
    let mut acc = DenseOperator::identity(dim as usize);
    for &k in &word.letters {
        if let std::collections::hash_map::Entry::Vacant(slot) = cache.entry(k) {
            slot.insert(humphries_gate(word.genus, k)?.dense(model, opts)?);
        }
        acc = acc.matmul(&cache[&k]);
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub holds: bool,
    pub residual: f64,
}

/// `ρ(w1) = λ·ρ(w2)` for some unit `λ`, within `tol`.
pub fn check_relation_projective(
    w1: &MCGWord,
    w2: &MCGWord,
    model: &AbelianAnyonModel,
    tol: f64,
    opts: &GateOptions,
) -> Result<RelationCheck> {
    if w1.genus != w2.genus {
        return Err(Error::InvalidArgument(format!("genus mismatch: {} vs {}", w1.genus, w2.genus)));
    }
    let a = word_to_matrix(w1, model, opts)?;
    let b = word_to_matrix(w2, model, opts)?;
    let residual = a.projective_residual(&b)?;
    Ok(RelationCheck { holds: residual < tol, residual })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Commute,
    Braid,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResult {
    pub kind: RelationKind,
    pub curves: (usize, usize),
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub holds: bool,
    pub residual: f64,
}

/// The commutation relations for disjoint Humphries curves and the braid
/// relations for curves meeting once, checked projectively.
pub fn relation_suite(
    model: &AbelianAnyonModel,
    genus: usize,
    tol: f64,
    opts: &GateOptions,
) -> Result<Vec<RelationResult>> {
    let idx = humphries_indices(genus);
    let mut out = Vec::new();
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            let (kind, lhs, rhs) = if humphries_curves_meet(i, j) {
                (RelationKind::Braid, vec![i, j, i], vec![j, i, j])
            } else {
                (RelationKind::Commute, vec![i, j], vec![j, i])
            };
            let check = check_relation_projective(
                &MCGWord::new(genus, lhs.clone())?,
                &MCGWord::new(genus, rhs.clone())?,
                model,
                tol,
                opts,
            )?;
            out.push(RelationResult { kind, curves: (i, j), lhs, rhs, holds: check.holds, residual: check.residual });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum ImageOrder {
    Finite(usize),
    BoundExceeded(usize),
}

/// Order of the projective image of the Humphries generators, by breadth-first
/// closure over phase-canonical matrices.
pub fn projective_image_order(
    model: &AbelianAnyonModel,
    genus: usize,
    bound: usize,
    opts: &GateOptions,
) -> Result<ImageOrder> {
    model.require_modular()?;
    let spec: GroupSpec = model.group().power(genus)?;
    let dim = spec.order();
    check_dense_bound(dim, opts.dense_bound)?;
    let gens: Vec<DenseOperator> = generator_images(model, genus, opts)?.into_iter().map(|(_, m)| m).collect();
    Ok(closure_order(&gens, dim as usize, bound))
}

/// Breadth-first closure of `⟨gens⟩` in `PU(dim)`.
pub fn closure_order(gens: &[DenseOperator], dim: usize, bound: usize) -> ImageOrder {
    let eps = 1e-6;
    let id = DenseOperator::identity(dim);
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.phase_canonical(eps).grid_key(CANONICAL_GRID));
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let next = m.matmul(g).phase_canonical(eps);
            if seen.insert(next.grid_key(CANONICAL_GRID)) {
                if seen.len() > bound {
                    return ImageOrder::BoundExceeded(bound);
                }
                queue.push_back(next);
            }
        }
    }
    ImageOrder::Finite(seen.len())
}

/// Projective order of a single unitary, or `None` past `max`.
pub fn projective_order(u: &DenseOperator, max: usize) -> Option<usize> {
    let id = DenseOperator::identity(u.dim());
    let mut acc = u.clone();
    for k in 1..=max {
        if acc.projective_residual(&id).ok()? < 1e-9 {
            return Some(k);
        }
        acc = acc.matmul(u);
    }
    None
}

/// Exact dump of a Humphries image, entries `exp(2πi·phase)·|G|^{−k/2}`.
#[derive(Clone, Debug, Serialize)]
pub struct ExactDump {
    pub gate: String,
    pub humphries_index: usize,
    pub genus: usize,
    pub group_order: usize,
    pub dim: usize,
    pub scale: String,
    pub entries: Vec<ExactEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactEntry {
    pub row: usize,
    pub col: usize,
    pub phase: RationalPhase,
}

impl ExactDump {
    pub fn new(k: usize, gate: &PlacedGate, exact: &ExactOperator, group_order: usize) -> Self {
        ExactDump {
            gate: gate.to_string(),
            humphries_index: k,
            genus: gate.genus,
            group_order,
            dim: exact.dim,
            scale: format!("|G|^(-{}/2)", exact.scale_pow),
            entries: exact.entries.iter().map(|&(row, col, phase)| ExactEntry { row, col, phase }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BUILTIN_MODELS;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn builtins() -> Vec<AbelianAnyonModel> {
        BUILTIN_MODELS.iter().map(|n| AbelianAnyonModel::builtin(n).unwrap()).collect()
    }

    #[test]
    fn gate_l_examples() {
        let semion = AbelianAnyonModel::builtin("semion").unwrap();
        let l = gate_l(&semion).unwrap().to_dense(2);
        assert_eq!(l, DenseOperator::from_diagonal(&[c(1., 0.), c(0., 1.)]));
        let trivial = AbelianAnyonModel::builtin("trivial").unwrap();
        assert_eq!(gate_l(&trivial).unwrap().to_dense(1), DenseOperator::identity(1));
        let toric = AbelianAnyonModel::builtin("toric").unwrap();
        let l = gate_l(&toric).unwrap().to_dense(4);
        assert_eq!(l, DenseOperator::from_diagonal(&[c(1., 0.), c(1., 0.), c(1., 0.), c(-1., 0.)]));
    }

    #[test]
    fn gate_m_examples() {
        let semion = AbelianAnyonModel::builtin("semion").unwrap();
        let m = gate_m(&semion).unwrap().to_dense(2);
        assert_eq!(m, DenseOperator::from_diagonal(&[c(1., 0.), c(0., 1.), c(0., 1.), c(1., 0.)]));
        for model in builtins() {
            let m = gate_m(&model).unwrap();
            let spec = model.group().power(2).unwrap();
            for a in model.elements() {
                let idx = spec.join_blocks(&[a.clone(), a.clone()]).unwrap().index();
                assert_eq!(m.diagonal_phases().unwrap()[idx], RationalPhase::ZERO);
            }
        }
        let toric = AbelianAnyonModel::builtin("toric").unwrap();
        let spec = toric.group().power(2).unwrap();
        let idx = spec.element(&[1, 0, 0, 1]).unwrap().index();
        assert_eq!(gate_m(&toric).unwrap().to_dense(4).get(idx, idx), c(-1., 0.));
    }

    #[test]
    fn gate_o_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let semion = AbelianAnyonModel::builtin("semion").unwrap();
        let o = gate_o(&semion).unwrap().to_dense(2);
        // O[b,a] = θ_a⁻¹ S_{a,b} θ_b⁻¹ with θ = (1, i), S = [[1,1],[1,-1]]/√2.
        let expected = DenseOperator::from_rows(&[vec![c(h, 0.), c(0., -h)], vec![c(0., -h), c(h, 0.)]]);
        assert!(o.max_abs_diff(&expected) < 1e-15);
        assert!(o.is_unitary(1e-12));
        let trivial = AbelianAnyonModel::builtin("trivial").unwrap();
        assert_eq!(gate_o(&trivial).unwrap().to_dense(1), DenseOperator::identity(1));
        for model in builtins() {
            let o = gate_o(&model).unwrap().to_dense(model.order());
            let s = 1.0 / (model.order() as f64).sqrt();
            for b in model.elements() {
                let want = (-model.theta(&b)).to_complex() * s;
                assert!((o.get(b.index(), 0) - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn all_gates_unitary() {
        for model in builtins() {
            for g in 1..=3 {
                for (k, m) in generator_images(&model, g, &GateOptions::default()).unwrap() {
                    assert!(m.unitarity_residual() < 1e-10, "{} g={g} k={k}", model.name());
                }
            }
        }
    }

    #[test]
    fn non_modular_models_refused() {
        let deg = AbelianAnyonModel::cyclic(4, 2).unwrap();
        assert!(matches!(gate_l(&deg), Err(Error::NonModular(_))));
        assert!(matches!(gate_o(&deg), Err(Error::NonModular(_))));
    }

    #[test]
    fn humphries_assignment() {
        assert_eq!(humphries_gate(2, 3).unwrap(), PlacedGate { kind: GateKind::M, qudit: 1, genus: 2 });
        assert_eq!(humphries_gate(3, 4).unwrap(), PlacedGate { kind: GateKind::O, qudit: 2, genus: 3 });
        assert_eq!(humphries_gate(2, 0).unwrap(), PlacedGate { kind: GateKind::L, qudit: 2, genus: 2 });
        assert_eq!(humphries_gate(1, 1).unwrap().kind, GateKind::L);
        assert_eq!(humphries_gate(1, 2).unwrap().kind, GateKind::O);
        assert_eq!(humphries_gate(3, 5).unwrap(), PlacedGate { kind: GateKind::M, qudit: 2, genus: 3 });
        assert_eq!(humphries_gate(3, 6).unwrap(), PlacedGate { kind: GateKind::O, qudit: 3, genus: 3 });
        assert!(matches!(humphries_gate(1, 0), Err(Error::InvalidHumphriesIndex { .. })));
        assert!(matches!(humphries_gate(1, 3), Err(Error::InvalidHumphriesIndex { .. })));
        assert!(matches!(humphries_gate(2, 5), Err(Error::InvalidHumphriesIndex { .. })));
        assert!(humphries_gate(0, 1).is_err());
    }

    #[test]
    fn word_examples() {
        let semion = AbelianAnyonModel::builtin("semion").unwrap();
        let opts = GateOptions::default();
        let id = word_to_matrix(&MCGWord::new(1, vec![]).unwrap(), &semion, &opts).unwrap();
        assert_eq!(id, DenseOperator::identity(2));
        for n in 0..9 {
            let w = MCGWord::new(1, vec![1; n]).unwrap();
            let m = word_to_matrix(&w, &semion, &opts).unwrap();
            let want = DenseOperator::from_diagonal(&[c(1., 0.), Complex64::new(0., 1.).powi(n as i32)]);
            assert!(m.max_abs_diff(&want) < 1e-12);
        }
        let o = gate_o(&semion).unwrap().to_dense(2);
        let oo = word_to_matrix(&MCGWord::new(1, vec![2, 2]).unwrap(), &semion, &opts).unwrap();
        assert!(oo.max_abs_diff(&o.matmul(&o)) < 1e-15);
        assert!(oo.is_unitary(1e-12));
        // rightmost letter first: [1,2] = L·O
        let lo = word_to_matrix(&MCGWord::new(1, vec![1, 2]).unwrap(), &semion, &opts).unwrap();
        assert!(lo.max_abs_diff(&gate_l(&semion).unwrap().to_dense(2).matmul(&o)) < 1e-15);
    }

    #[test]
    fn dense_bound_enforced() {
        let z4 = AbelianAnyonModel::builtin("z4").unwrap();
        let opts = GateOptions { dense_bound: 16, ..Default::default() };
        let w = MCGWord::new(3, vec![1]).unwrap();
        assert!(matches!(word_to_matrix(&w, &z4, &opts), Err(Error::DenseBoundExceeded { .. })));
    }

    #[test]
    fn relation_examples() {
        let semion = AbelianAnyonModel::builtin("semion").unwrap();
        let opts = GateOptions::default();
        let check = |g, a: Vec<usize>, b: Vec<usize>| {
            check_relation_projective(&MCGWord::new(g, a).unwrap(), &MCGWord::new(g, b).unwrap(), &semion, 1e-9, &opts)
                .unwrap()
        };
        assert!(check(2, vec![1, 3], vec![3, 1]).holds);
        assert!(check(2, vec![2, 3, 2], vec![3, 2, 3]).holds);
        assert!(!check(1, vec![1, 2], vec![2, 1]).holds);
    }

    #[test]
    fn anchor_flag_only_changes_global_phase() {
        let z3 = AbelianAnyonModel::builtin("z3").unwrap();
        let with = GateOptions { include_anchor: true, ..Default::default() };
        let without = GateOptions::default();
        for k in humphries_indices(2) {
            let g = humphries_gate(2, k).unwrap();
            let a = g.dense(&z3, &with).unwrap();
            let b = g.dense(&z3, &without).unwrap();
            assert!(a.projective_residual(&b).unwrap() < 1e-12);
            if g.kind != GateKind::O {
                assert!(a.max_abs_diff(&b) > 0.1);
            }
        }
    }

    #[test]
    fn m_phase_is_theta_of_difference() {
        for model in builtins() {
            let g = PlacedGate::new(GateKind::M, 2, 3).unwrap();
            let exact = g.exact(&model).unwrap();
            let phases = exact.diagonal_phases().unwrap();
            let spec = model.group().power(3).unwrap();
            for (idx, p) in phases.iter().enumerate() {
                let a = spec.element_at(idx);
                assert_eq!(*p, model.theta(&(&a.block(1) - &a.block(2))));
            }
        }
    }

    #[test]
    fn image_order_trivial() {
        let trivial = AbelianAnyonModel::builtin("trivial").unwrap();
        for g in 1..=3 {
            assert_eq!(projective_image_order(&trivial, g, 10, &GateOptions::default()).unwrap(), ImageOrder::Finite(1));
        }
    }

    #[test]
    fn image_order_bound_reported() {
        let z3 = AbelianAnyonModel::builtin("z3").unwrap();
        assert_eq!(projective_image_order(&z3, 1, 3, &GateOptions::default()).unwrap(), ImageOrder::BoundExceeded(3));
    }
}
