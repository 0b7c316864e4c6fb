//! Fibonacci torus data, the one-qubit Clifford group, and the check that no
//! basis makes both modular matrices of the Fibonacci torus Clifford.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::dense::DenseOperator;
use crate::error::{Error, Result};
use crate::mcg::CANONICAL_GRID;
use crate::phase::RationalPhase;

const CLIFFORD_ORDER: usize = 24;
const CANONICAL_EPS: f64 = 1e-6;

/// Minimum projective distance between `S'` and any Clifford class that
/// counts as "no match".
pub const MIN_DISTANCE_MARGIN: f64 = 0.1;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

#[derive(Clone, Debug)]
pub struct FibTorusData {
    pub phi: f64,
    /// Exact phases of the diagonal of `T`, in turns.
    pub t_phases: [RationalPhase; 2],
    pub t: DenseOperator,
    pub s: DenseOperator,
    pub quantum_dims: [f64; 2],
    /// `R^{ττ}_1`, `R^{ττ}_τ`.
    pub r: [Complex64; 2],
    pub f: DenseOperator,
}

impl Default for FibTorusData {
    fn default() -> Self {
        Self::new()
    }
}

impl FibTorusData {
    pub fn new() -> Self {
        let phi = golden_ratio();
        let t_phases = [RationalPhase::ZERO, RationalPhase::new(2, 5)];
        let t = DenseOperator::from_diagonal(&t_phases.map(|p| p.to_complex()));
        let n = 1.0 / (2.0 + phi).sqrt();
        let s = DenseOperator::from_real_rows(&[&[n, n * phi], &[n * phi, -n]]);
        let (a, b) = (1.0 / phi, 1.0 / phi.sqrt());
        let f = DenseOperator::from_real_rows(&[&[a, b], &[b, -a]]);
        let r = [RationalPhase::new(-2, 5).to_complex(), RationalPhase::new(3, 10).to_complex()];
        FibTorusData { phi, t_phases, t, s, quantum_dims: [1.0, phi], r, f }
    }

    /// Order of `T`, read off the exact phases.
    pub fn t_order(&self) -> i64 {
        self.t_phases.iter().map(|p| p.order()).fold(1, num_integer::lcm)
    }

    /// `max |T⁵ − Id|` computed in floating point.
    pub fn t5_residual(&self) -> f64 {
        let mut m = DenseOperator::identity(2);
        for _ in 0..5 {
            m = m.matmul(&self.t);
        }
        m.max_abs_diff(&DenseOperator::identity(2))
    }
}

/// `A = λ·B` for some unit `λ`.
pub fn projectively_equal(a: &DenseOperator, b: &DenseOperator, tol: f64) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    Ok(a.projective_residual(b)? < tol)
}

/// Smallest `k ≥ 1` with `u^k` projectively trivial.
pub fn projective_order(u: &DenseOperator, max: u32, tol: f64) -> Option<u32> {
    let id = DenseOperator::identity(u.dim());
    let mut m = u.clone();
    for k in 1..=max {
        if m.projective_residual(&id).ok()? < tol {
            return Some(k);
        }
        m = m.matmul(u);
    }
    None
}

/// A permutation of `{1,2,3,4}`; `images[i]` is the image of `i+1`, minus one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        Perm4(other.0.map(|i| self.0[i as usize]))
    }

    pub fn order(&self) -> u32 {
        let mut p = *self;
        let mut k = 1;
        while p != Perm4::IDENTITY {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn all() -> Vec<Perm4> {
        (0..256u32)
            .map(|n| Perm4(std::array::from_fn(|i| ((n >> (2 * i)) & 3) as u8)))
            .filter(|p| (0..4).all(|i| (0..i).all(|j| p.0[i] != p.0[j])))
            .collect()
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 4];
        let mut any = false;
        for start in 0..4 {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                write!(f, "{}", i + 1)?;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "(1)")?;
        }
        Ok(())
    }
}

/// Cycle notation such as `(1)`, `(12)(34)` or `(1 2 3)`.
impl FromStr for Perm4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad permutation `{s}`"));
        let mut images = [0u8, 1, 2, 3];
        let mut used = [false; 4];
        let body: String = s.chars().filter(|ch| !ch.is_whitespace() && *ch != ',').collect();
        for cycle in body.split(')').filter(|t| !t.is_empty()) {
            let digits = cycle.strip_prefix('(').ok_or_else(bad)?;
            let pts: Vec<u8> = digits
                .chars()
                .map(|ch| ch.to_digit(10).filter(|d| (1..=4).contains(d)).map(|d| d as u8 - 1).ok_or_else(bad))
                .collect::<Result<_>>()?;
            if pts.is_empty() {
                return Err(bad());
            }
            for (k, &p) in pts.iter().enumerate() {
                if used[p as usize] {
                    return Err(bad());
                }
                used[p as usize] = true;
                images[p as usize] = pts[(k + 1) % pts.len()];
            }
        }
        Ok(Perm4(images))
    }
}

impl Serialize for Perm4 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn pauli_xyz() -> [DenseOperator; 3] {
    [
        DenseOperator::from_real_rows(&[&[0., 1.], &[1., 0.]]),
        DenseOperator::from_rows(&[vec![c(0., 0.), c(0., -1.)], vec![c(0., 1.), c(0., 0.)]]),
        DenseOperator::from_real_rows(&[&[1., 0.], &[0., -1.]]),
    ]
}

/// The signed permutation `R` with `U σ_a U† = Σ_b R[b][a] σ_b`, or `None` if
/// `U` does not normalize the Pauli group.
pub fn pauli_action(u: &DenseOperator, tol: f64) -> Option<[[i8; 3]; 3]> {
    let p = pauli_xyz();
    let mut r = [[0i8; 3]; 3];
    for a in 0..3 {
        let img = p[a].conjugate_by(u);
        let mut hits = 0;
        for b in 0..3 {
            let coeff = p[b].inner(&img) / 2.0;
            if (coeff - 1.0).norm() < tol {
                r[b][a] = 1;
                hits += 1;
            } else if (coeff + 1.0).norm() < tol {
                r[b][a] = -1;
                hits += 1;
            } else if coeff.norm() > tol {
                return None;
            }
        }
        if hits != 1 {
            return None;
        }
    }
    Some(r)
}

/// The four body diagonals of the cube `[−1,1]³`, each up to sign.
const DIAGONALS: [[i8; 3]; 4] = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [-1, 1, 1]];

/// Permutation of [`DIAGONALS`] induced by a signed permutation matrix.
fn diagonal_action(r: &[[i8; 3]; 3]) -> Perm4 {
    let mut images = [0u8; 4];
    for (k, d) in DIAGONALS.iter().enumerate() {
        let e: [i8; 3] = std::array::from_fn(|b| (0..3).map(|a| r[b][a] * d[a]).sum());
        let neg = e.map(|v| -v);
        images[k] = DIAGONALS.iter().position(|f| *f == e || *f == neg).expect("cube symmetry") as u8;
    }
    Perm4(images)
}

/// Assignment of the labels 1..4 to the cube diagonals; `labels[k]` is the
/// label (minus one) of `DIAGONALS[k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagonalLabeling {
    pub labels: [u8; 4],
}

impl DiagonalLabeling {
    /// The permutation of labels induced by a Clifford unitary.
    pub fn permutation(&self, u: &DenseOperator, tol: f64) -> Option<Perm4> {
        let d = diagonal_action(&pauli_action(u, tol)?);
        let mut images = [0u8; 4];
        for k in 0..4 {
            images[self.labels[k] as usize] = self.labels[d.0[k] as usize];
        }
        Some(Perm4(images))
    }

    /// Every labeling under which `H ↦ (12)` and `Q ↦ (1234)`.
    pub fn matching_generators(tol: f64) -> Vec<DiagonalLabeling> {
        let (h, q) = (hadamard(), phase_gate());
        let (ph, pq) = (Perm4::from_str("(12)").unwrap(), Perm4::from_str("(1234)").unwrap());
        Perm4::all()
            .into_iter()
            .map(|p| DiagonalLabeling { labels: p.0 })
            .filter(|l| l.permutation(&h, tol) == Some(ph) && l.permutation(&q, tol) == Some(pq))
            .collect()
    }
}

pub fn hadamard() -> DenseOperator {
    DenseOperator::from_real_rows(&[&[1., 1.], &[1., -1.]]).scale(c(FRAC_1_SQRT_2, 0.0))
}

pub fn phase_gate() -> DenseOperator {
    DenseOperator::from_diagonal(&[c(1., 0.), c(0., 1.)])
}

/// How the off-diagonal entries of an order-2 class look, tested in the order
/// listed (all three properties survive a global phase).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OffDiagonalShape {
    EqualOffDiagonal,
    ZeroSumOffDiagonal,
    ZeroEntry,
    Generic,
}

pub fn off_diagonal_shape(u: &DenseOperator, tol: f64) -> OffDiagonalShape {
    let (b, c) = (u.get(0, 1), u.get(1, 0));
    if (b - c).norm() < tol {
        OffDiagonalShape::EqualOffDiagonal
    } else if (b + c).norm() < tol {
        OffDiagonalShape::ZeroSumOffDiagonal
    } else if u.data().iter().any(|v| v.norm() < tol) {
        OffDiagonalShape::ZeroEntry
    } else {
        OffDiagonalShape::Generic
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordClass {
    /// Phase-canonical representative.
    #[serde(skip)]
    pub matrix: DenseOperator,
    /// Shortest word in `H` and `Q` reaching the class, in written order.
    pub word: String,
    pub order: u32,
    pub permutation: Perm4,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordClassTable {
    pub labeling: [u8; 4],
    pub classes: Vec<CliffordClass>,
}

impl CliffordClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn find(&self, u: &DenseOperator, tol: f64) -> Option<usize> {
        self.classes.iter().position(|k| k.matrix.projective_residual(u).map(|r| r < tol).unwrap_or(false))
    }

    /// Number of classes of each projective order.
    pub fn order_profile(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for k in &self.classes {
            *out.entry(k.order).or_insert(0) += 1;
        }
        out
    }

    pub fn involutions(&self) -> impl Iterator<Item = &CliffordClass> {
        self.classes.iter().filter(|k| k.order == 2)
    }
}

/// Breadth-first closure of `⟨H, Q⟩` modulo global phase.
pub fn enumerate_clifford_1q() -> Result<CliffordClassTable> {
    let tol = 1e-9;
    let gens = [("H", hadamard()), ("Q", phase_gate())];
    let key = |m: &DenseOperator| m.phase_canonical(CANONICAL_EPS).grid_key(CANONICAL_GRID);
    let id = DenseOperator::identity(2);
    let mut seen = HashSet::from([key(&id)]);
    let mut found = vec![(id.clone(), String::new())];
    let mut queue = VecDeque::from([(id, String::new())]);
    while let Some((m, word)) = queue.pop_front() {
        for (name, g) in &gens {
            let next = m.matmul(g);
            if seen.insert(key(&next)) {
                if seen.len() > CLIFFORD_ORDER {
                    return Err(Error::Internal(format!("Clifford closure exceeded {CLIFFORD_ORDER} classes")));
                }
                let w = format!("{word}{name}");
                found.push((next.clone(), w.clone()));
                queue.push_back((next, w));
            }
        }
    }
    let labeling = match DiagonalLabeling::matching_generators(tol).as_slice() {
        [l] => *l,
        other => return Err(Error::Internal(format!("{} diagonal labelings fit the generators", other.len()))),
    };
    let classes = found
        .into_iter()
        .map(|(m, word)| {
            let permutation = labeling.permutation(&m, tol).ok_or_else(|| Error::Internal(format!("{word} is not Clifford")))?;
            let order = projective_order(&m, 24, tol).ok_or_else(|| Error::Internal(format!("{word} has no finite order")))?;
            Ok(CliffordClass {
                matrix: m.phase_canonical(CANONICAL_EPS),
                word: if word.is_empty() { "I".into() } else { word },
                order,
                permutation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CliffordClassTable { labeling: labeling.labels, classes })
}

/// Printed label, entries, and whether the `1/√2` scale applies.
type TableRow = (&'static str, [(f64, f64); 4], bool);

/// Reference table of class representatives with their `S₄` labels,
/// entries as `(re, im)` before the optional `1/√2`.
const REFERENCE_ROWS: [TableRow; 24] = [
    ("(1)", [(1., 0.), (0., 0.), (0., 0.), (1., 0.)], false),
    ("(132)", [(1., 0.), (0., 1.), (-1., 0.), (0., 1.)], true),
    ("(12)", [(1., 0.), (1., 0.), (1., 0.), (-1., 0.)], true),
    ("(34)", [(1., 0.), (-1., 0.), (-1., 0.), (-1., 0.)], true),
    ("(1234)", [(1., 0.), (0., 0.), (0., 0.), (0., 1.)], false),
    ("(12)(34)", [(0., 0.), (1., 0.), (-1., 0.), (0., 0.)], false),
    ("(13)(24)", [(1., 0.), (0., 0.), (0., 0.), (-1., 0.)], false),
    ("(24)", [(0., 0.), (1., 0.), (0., 1.), (0., 0.)], false),
    ("(1432)", [(1., 0.), (0., 0.), (0., 0.), (0., -1.)], false),
    ("(14)(23)", [(0., 0.), (1., 0.), (1., 0.), (0., 0.)], false),
    ("(134)", [(1., 0.), (1., 0.), (0., 1.), (0., -1.)], true),
    ("(14)", [(1., 0.), (0., 1.), (0., -1.), (-1., 0.)], true),
    ("(1423)", [(1., 0.), (1., 0.), (-1., 0.), (1., 0.)], true),
    ("(123)", [(1., 0.), (-1., 0.), (0., -1.), (0., -1.)], true),
    ("(243)", [(1., 0.), (1., 0.), (0., -1.), (0., 1.)], true),
    ("(1342)", [(1., 0.), (0., -1.), (0., -1.), (1., 0.)], true),
    ("(234)", [(1., 0.), (0., 1.), (1., 0.), (0., -1.)], true),
    ("(124)", [(1., 0.), (0., -1.), (-1., 0.), (0., -1.)], true),
    ("(1324)", [(1., 0.), (-1., 0.), (1., 0.), (1., 0.)], true),
    ("(24)", [(0., 0.), (1., 0.), (0., -1.), (0., 0.)], false),
    ("(143)", [(1., 0.), (0., -1.), (1., 0.), (0., 1.)], true),
    ("(23)", [(1., 0.), (0., -1.), (0., 1.), (-1., 0.)], true),
    ("(1243)", [(1., 0.), (0., 1.), (0., 1.), (1., 0.)], true),
    ("(142)", [(1., 0.), (-1., 0.), (0., 1.), (0., 1.)], true),
];

#[derive(Clone, Debug, Serialize)]
pub struct LabelRowCheck {
    pub printed: &'static str,
    pub computed: Perm4,
    pub class_index: usize,
    pub agrees: bool,
    /// The printed label occurs on more than one row.
    pub ambiguous_label: bool,
}

pub fn reference_matrices() -> Vec<(&'static str, DenseOperator)> {
    REFERENCE_ROWS
        .iter()
        .map(|(label, e, halved)| {
            let m = DenseOperator::from_rows(&[vec![c(e[0].0, e[0].1), c(e[1].0, e[1].1)], vec![c(e[2].0, e[2].1), c(e[3].0, e[3].1)]]);
            (*label, if *halved { m.scale(c(FRAC_1_SQRT_2, 0.0)) } else { m })
        })
        .collect()
}

/// Locates every reference representative among the classes and compares
/// its printed label with the induced permutation of cube diagonals.
pub fn check_reference_table(table: &CliffordClassTable) -> Result<Vec<LabelRowCheck>> {
    let rows = reference_matrices();
    let mut out = Vec::with_capacity(rows.len());
    for (printed, m) in &rows {
        let class_index =
            table.find(m, 1e-9).ok_or_else(|| Error::Internal(format!("row {printed} is not a Clifford class")))?;
        let computed = table.classes[class_index].permutation;
        let ambiguous_label = rows.iter().filter(|(l, _)| l == printed).count() > 1;
        out.push(LabelRowCheck { printed, computed, class_index, agrees: Perm4::from_str(printed)? == computed, ambiguous_label });
    }
    Ok(out)
}

/// `S` in the basis where `T` is the identity, as displayed.
pub fn normalized_s_displayed(phi: f64) -> DenseOperator {
    let n = 1.0 / (2.0 + phi).sqrt();
    let w = Complex64::cis(4.0 * PI / 5.0);
    DenseOperator::from_rows(&[vec![c(n, 0.0), w.conj() * phi * n], vec![w * phi * n, c(-n, 0.0)]])
}

/// The diagonal basis change `D = diag(1, e^{4πi/5}) = T`; `D⁻¹ T` is the
/// identity, and `S` becomes `D S D†`.
pub fn normalizing_basis_change(data: &FibTorusData) -> DenseOperator {
    data.t.clone()
}

/// Returns the displayed normalized `S` after checking it against the
/// derived `D S D†`.
pub fn normalized_s(data: &FibTorusData) -> Result<DenseOperator> {
    let d = normalizing_basis_change(data);
    let t_normalized = d.adjoint().matmul(&data.t);
    if t_normalized.max_abs_diff(&DenseOperator::identity(2)) > 1e-12 {
        return Err(Error::TheoremViolated("basis change does not trivialize T".into()));
    }
    let derived = data.s.conjugate_by(&d);
    let displayed = normalized_s_displayed(data.phi);
    let diff = derived.max_abs_diff(&displayed);
    if diff > 1e-12 {
        return Err(Error::TheoremViolated(format!("normalized S differs from the derived D·S·D† by {diff:e}")));
    }
    Ok(displayed)
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeTally {
    pub equal_off_diagonal: usize,
    pub zero_sum_off_diagonal: usize,
    pub zero_entry: usize,
    pub generic: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassDistance {
    pub word: String,
    pub permutation: Perm4,
    pub distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FibVerdict {
    pub t_order: i64,
    pub t5_residual: f64,
    pub clifford_order: usize,
    pub t_order_divides_clifford_order: bool,
    pub s_unitarity_residual: f64,
    pub s_symmetry_residual: f64,
    pub s_squared_projectively_trivial: bool,
    pub normalized_s_vs_derived: f64,
    pub normalized_s_entry_00: [f64; 2],
    pub normalized_s_entry_01: [f64; 2],
    pub normalized_s_order: Option<u32>,
    pub class_count: usize,
    pub order_profile: BTreeMap<u32, usize>,
    pub hq_cubed_is_eighth_root: bool,
    pub involution_tally: ShapeTally,
    pub normalized_s_shape: OffDiagonalShape,
    pub min_distance: f64,
    pub per_class: Vec<ClassDistance>,
    pub match_found: bool,
    pub pauli_group_order: usize,
    pub hermitian_pauli_count: usize,
    pub reference_rows: Vec<LabelRowCheck>,
    pub label_disagreements: usize,
    /// No Clifford class matches the normalized `S`.
    pub holds: bool,
}

fn closure(gens: &[DenseOperator], bound: usize) -> Result<Vec<DenseOperator>> {
    let key = |m: &DenseOperator| m.grid_key(CANONICAL_GRID);
    let id = DenseOperator::identity(gens[0].dim());
    let mut seen = HashSet::from([key(&id)]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let next = m.matmul(g);
            if seen.insert(key(&next)) {
                if seen.len() > bound {
                    return Err(Error::EnumerationTooLarge { order: seen.len() as u64, bound: bound as u64 });
                }
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// Counts `⟨X, Y, Z⟩` exactly (with phases) and its Hermitian elements.
pub fn pauli_group_counts() -> Result<(usize, usize)> {
    let group = closure(&pauli_xyz(), 64)?;
    let hermitian = group.iter().filter(|m| m.max_abs_diff(&m.adjoint()) < 1e-12).count();
    Ok((group.len(), hermitian))
}

pub fn fib_verdict() -> Result<FibVerdict> {
    let tol = 1e-9;
    let data = FibTorusData::new();
    let table = enumerate_clifford_1q()?;
    let id = DenseOperator::identity(2);

    let t_order = data.t_order();
    let s2 = data.s.matmul(&data.s);
    let s_prime = normalized_s(&data)?;
    let derived = data.s.conjugate_by(&normalizing_basis_change(&data));

    let mut tally = ShapeTally { equal_off_diagonal: 0, zero_sum_off_diagonal: 0, zero_entry: 0, generic: 0 };
    for k in table.involutions() {
        match off_diagonal_shape(&k.matrix, tol) {
            OffDiagonalShape::EqualOffDiagonal => tally.equal_off_diagonal += 1,
            OffDiagonalShape::ZeroSumOffDiagonal => tally.zero_sum_off_diagonal += 1,
            OffDiagonalShape::ZeroEntry => tally.zero_entry += 1,
            OffDiagonalShape::Generic => tally.generic += 1,
        }
    }

    let per_class: Vec<ClassDistance> = table
        .classes
        .iter()
        .map(|k| ClassDistance { word: k.word.clone(), permutation: k.permutation, distance: s_prime.projective_distance(&k.matrix) })
        .collect();
    let min_distance = per_class.iter().map(|d| d.distance).fold(f64::INFINITY, f64::min);
    let match_found = table.find(&s_prime, tol).is_some();

    let hq = hadamard().matmul(&phase_gate());
    let hq3 = hq.matmul(&hq).matmul(&hq);
    let (pauli_group_order, hermitian_pauli_count) = pauli_group_counts()?;
    let reference_rows = check_reference_table(&table)?;
    let label_disagreements = reference_rows.iter().filter(|r| !r.agrees).count();

    Ok(FibVerdict {
        t_order,
        t5_residual: data.t5_residual(),
        clifford_order: table.len(),
        t_order_divides_clifford_order: table.len() as i64 % t_order == 0,
        s_unitarity_residual: data.s.unitarity_residual(),
        s_symmetry_residual: data.s.max_abs_diff(&data.s.transpose()),
        s_squared_projectively_trivial: s2.projective_residual(&id)? < 1e-12,
        normalized_s_vs_derived: derived.max_abs_diff(&s_prime),
        normalized_s_entry_00: [s_prime.get(0, 0).re, s_prime.get(0, 0).im],
        normalized_s_entry_01: [s_prime.get(0, 1).re, s_prime.get(0, 1).im],
        normalized_s_order: projective_order(&s_prime, 24, 1e-12),
        class_count: table.len(),
        order_profile: table.order_profile(),
        hq_cubed_is_eighth_root: hq3.max_abs_diff(&id.scale(RationalPhase::new(1, 8).to_complex())) < 1e-12,
        involution_tally: tally,
        normalized_s_shape: off_diagonal_shape(&s_prime, tol),
        min_distance,
        per_class,
        match_found,
        pauli_group_order,
        hermitian_pauli_count,
        reference_rows,
        label_disagreements,
        holds: !match_found && min_distance > MIN_DISTANCE_MARGIN,
    })
}

/// Like [`fib_verdict`], but a projective match is an error.
pub fn check_no_clifford_basis() -> Result<FibVerdict> {
    let v = fib_verdict()?;
    if v.match_found {
        return Err(Error::TheoremViolated("normalized S is projectively a Clifford class".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_data_invariants() {
        let d = FibTorusData::new();
        assert!(d.s.unitarity_residual() < 1e-12);
        assert!(d.s.max_abs_diff(&d.s.transpose()) < 1e-15);
        assert_eq!(d.t_order(), 5);
        assert!(d.t5_residual() < 1e-12);
        assert!(d.f.unitarity_residual() < 1e-12);
        assert!((d.quantum_dims[1] - d.phi).abs() < 1e-15);
        assert!((d.phi * d.phi - d.phi - 1.0).abs() < 1e-12);
        let s2 = d.s.matmul(&d.s);
        assert!(s2.projective_residual(&DenseOperator::identity(2)).unwrap() < 1e-12);
        assert!((d.r[0] - Complex64::cis(-4.0 * PI / 5.0)).norm() < 1e-15);
        assert!((d.r[1] - Complex64::cis(3.0 * PI / 5.0)).norm() < 1e-15);
    }

    #[test]
    fn projective_equality_examples() {
        let h = hadamard();
        let x = &pauli_xyz()[0];
        let z = &pauli_xyz()[2];
        assert!(projectively_equal(&h.scale(Complex64::cis(PI / 7.0)), &h, 1e-12).unwrap());
        assert!(!projectively_equal(x, z, 1e-9).unwrap());
        assert!(projectively_equal(&h, &h.scale(c(-1.0, 0.0)), 1e-12).unwrap());
        assert!(projectively_equal(&h, &DenseOperator::identity(3), 1e-9).is_err());
    }

    #[test]
    fn perm4_round_trip() {
        for p in Perm4::all() {
            assert_eq!(Perm4::from_str(&p.to_string()).unwrap(), p);
        }
        assert_eq!(Perm4::all().len(), 24);
        assert_eq!(Perm4::from_str("(1234)").unwrap().order(), 4);
        assert_eq!(Perm4::from_str("(12)(34)").unwrap().order(), 2);
        assert_eq!(Perm4::from_str("(1)").unwrap(), Perm4::IDENTITY);
        assert!(Perm4::from_str("(12)(23)").is_err());
        assert!(Perm4::from_str("(15)").is_err());
    }

    #[test]
    fn clifford_table() {
        let t = enumerate_clifford_1q().unwrap();
        assert_eq!(t.len(), 24);
        let profile: Vec<(u32, usize)> = t.order_profile().into_iter().collect();
        assert_eq!(profile, vec![(1, 1), (2, 9), (3, 8), (4, 6)]);
        let h = t.find(&hadamard(), 1e-9).unwrap();
        assert_eq!(t.classes[h].permutation.to_string(), "(12)");
        let q = t.find(&phase_gate(), 1e-9).unwrap();
        assert_eq!(t.classes[q].permutation.to_string(), "(1234)");
        assert_eq!(t.classes[t.find(&DenseOperator::identity(2), 1e-9).unwrap()].permutation, Perm4::IDENTITY);

        // Labels form a faithful homomorphism onto S4 with matching orders.
        let perms: HashSet<Perm4> = t.classes.iter().map(|k| k.permutation).collect();
        assert_eq!(perms.len(), 24);
        for a in &t.classes {
            assert_eq!(a.order, a.permutation.order());
            for b in &t.classes {
                let prod = a.matrix.matmul(&b.matrix);
                let k = t.find(&prod, 1e-9).expect("closed under products");
                assert_eq!(t.classes[k].permutation, a.permutation.compose(&b.permutation));
            }
        }
    }

    #[test]
    fn classes_normalize_the_paulis() {
        let t = enumerate_clifford_1q().unwrap();
        for k in &t.classes {
            let r = pauli_action(&k.matrix, 1e-9).unwrap();
            let det: i32 = (0..3).map(|a| (0..3).map(|b| r[b][a] as i32).sum::<i32>().abs()).product();
            assert_eq!(det, 1);
        }
        let tg = DenseOperator::from_diagonal(&[c(1., 0.), Complex64::cis(PI / 4.0)]);
        assert!(pauli_action(&tg, 1e-9).is_none());
    }

    #[test]
    fn reference_rows() {
        let t = enumerate_clifford_1q().unwrap();
        let rows = check_reference_table(&t).unwrap();
        let classes: HashSet<usize> = rows.iter().map(|r| r.class_index).collect();
        assert_eq!(classes.len(), 24);
        let bad: Vec<_> = rows.iter().filter(|r| !r.agrees).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].printed, "(24)");
        assert!(bad[0].ambiguous_label);
        assert_eq!(bad[0].computed.to_string(), "(13)");
        assert!(rows.iter().filter(|r| !r.ambiguous_label).all(|r| r.agrees));
    }

    #[test]
    fn normalized_s_entries() {
        let d = FibTorusData::new();
        let s = normalized_s(&d).unwrap();
        let n = 1.0 / (2.0 + d.phi).sqrt();
        assert!((s.get(0, 0) - c(n, 0.0)).norm() < 1e-12);
        assert!((s.get(0, 1) - Complex64::cis(-4.0 * PI / 5.0) * d.phi * n).norm() < 1e-12);
        let s2 = s.matmul(&s);
        assert!(s2.projective_residual(&DenseOperator::identity(2)).unwrap() < 1e-12);
        assert_eq!(off_diagonal_shape(&s, 1e-9), OffDiagonalShape::Generic);
    }

    #[test]
    fn verdict() {
        let v = check_no_clifford_basis().unwrap();
        assert!(v.holds);
        assert!(!v.t_order_divides_clifford_order);
        assert!(v.min_distance > MIN_DISTANCE_MARGIN);
        assert_eq!(v.involution_tally.equal_off_diagonal, 4);
        assert_eq!(v.involution_tally.zero_sum_off_diagonal, 3);
        assert_eq!(v.involution_tally.zero_entry, 2);
        assert_eq!(v.involution_tally.generic, 0);
        assert_eq!((v.pauli_group_order, v.hermitian_pauli_count), (16, 8));
        assert!(v.hq_cubed_is_eighth_root);
        assert_eq!(v.normalized_s_order, Some(2));
        assert_eq!(v.per_class.len(), 24);
    }
}
