//! Stabilizer simulation of circuits of Humphries-twist gates, with a dense
//! state-vector backend as an independent oracle.
//!
//! A basis state `|a⟩` of `G^g` is the unique joint fixed point of the labels
//! `χ_{e_j}(a)⁻¹ Z_{e_j}`, one per cyclic factor of every qudit. Gates act on
//! those labels by conjugation: `L`, `M` and `O` through closed forms that are
//! exact in `Q/Z`, and any other normalizer gate through its Clifford witness.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::dense::{check_dense_bound, DenseOperator};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::mcg::{humphries_gate, humphries_indices, GateKind, GateOptions, PlacedGate, DEFAULT_TOL};
use crate::model::AbelianAnyonModel;
use crate::pauli::{classify_normalizer, is_clifford, ExactWitness, NormalizerClass, PauliLabel};

/// Largest denominator tried when reading exact phases off a Clifford witness.
const WITNESS_MAX_DEN: i64 = 4096;

#[derive(Clone, Debug)]
pub enum CircuitGate {
    /// Positive Dehn twist `T_index`.
    Twist { index: usize, gate: PlacedGate },
    /// Arbitrary unitary on the whole register; the stabilizer backend accepts
    /// it only if it is a normalizer gate.
    Raw { name: String, matrix: DenseOperator },
}

impl fmt::Display for CircuitGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitGate::Twist { index, gate } => write!(f, "T{index}={gate}"),
            CircuitGate::Raw { name, .. } => write!(f, "{name}"),
        }
    }
}

/// Gates in time order (first gate acts first) on `|init⟩`.
#[derive(Clone, Debug)]
pub struct Circuit {
    model: Arc<AbelianAnyonModel>,
    genus: usize,
    spec: GroupSpec,
    init: GroupElement,
    gates: Vec<CircuitGate>,
}

impl Circuit {
    pub fn new(model: Arc<AbelianAnyonModel>, genus: usize, init: GroupElement) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus(genus));
        }
        model.require_modular()?;
        let spec = model.group().power(genus)?;
        spec.check_same(init.spec())?;
        Ok(Circuit { model, genus, spec, init, gates: Vec::new() })
    }

    /// Starts from `|0…0⟩`.
    pub fn zero_state(model: Arc<AbelianAnyonModel>, genus: usize) -> Result<Self> {
        let init = model.group().power(genus)?.zero();
        Self::new(model, genus, init)
    }

    pub fn push_twist(&mut self, index: usize) -> Result<()> {
        let gate = humphries_gate(self.genus, index)?;
        self.gates.push(CircuitGate::Twist { index, gate });
        Ok(())
    }

    pub fn push_raw(&mut self, name: impl Into<String>, matrix: DenseOperator) -> Result<()> {
        let dim = self.spec.order() as usize;
        if matrix.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: matrix.dim() });
        }
        self.gates.push(CircuitGate::Raw { name: name.into(), matrix });
        Ok(())
    }

    pub fn model(&self) -> &AbelianAnyonModel {
        &self.model
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn init(&self) -> &GroupElement {
        &self.init
    }

    pub fn gates(&self) -> &[CircuitGate] {
        &self.gates
    }

    /// Number of Fourier-type twists `T_{2i}`.
    pub fn qft_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, CircuitGate::Twist { gate, .. } if gate.kind == GateKind::O)).count()
    }

    /// Twist indices in time order; `None` if the circuit holds raw gates.
    pub fn twist_indices(&self) -> Option<Vec<usize>> {
        self.gates
            .iter()
            .map(|g| match g {
                CircuitGate::Twist { index, .. } => Some(*index),
                CircuitGate::Raw { .. } => None,
            })
            .collect()
    }
}

/// A uniformly random Humphries word of `len` twists on a random basis state.
pub fn random_circuit<R: Rng>(model: Arc<AbelianAnyonModel>, genus: usize, len: usize, rng: &mut R) -> Result<Circuit> {
    let spec = model.group().power(genus)?;
    let init = spec.element_at(rng.gen_range(0..spec.order() as usize));
    let mut c = Circuit::new(model, genus, init)?;
    let idx = humphries_indices(genus);
    for _ in 0..len {
        c.push_twist(idx[rng.gen_range(0..idx.len())])?;
    }
    Ok(c)
}

/// `L` on 0-based qudit `i`: `(φ,z,x) ↦ (φ + q(x_i) − b(x_i,x_i), z + β(x_i)·e_i, x)`.
pub fn conjugate_l(model: &AbelianAnyonModel, i: usize, p: &PauliLabel) -> PauliLabel {
    let g = p.x.block(i);
    let mut out = p.clone();
    out.phase += model.q(&g) - model.bilinear(&g, &g);
    out.z.set_block(i, &(&p.z.block(i) + &model.beta(&g)));
    out
}

/// `diag(θ⁻¹)` on qudit `i`.
pub fn conjugate_theta_inverse(model: &AbelianAnyonModel, i: usize, p: &PauliLabel) -> PauliLabel {
    let g = p.x.block(i);
    let mut out = p.clone();
    out.phase += model.bilinear(&g, &g) - model.q(&g);
    out.z.set_block(i, &(&p.z.block(i) - &model.beta(&g)));
    out
}

/// `M` on qudits `(i, i+1)`, a quadratic phase over `G⊕G` with bicharacter
/// `b(y_i − y_{i+1}, x_i − x_{i+1})`.
pub fn conjugate_m(model: &AbelianAnyonModel, i: usize, p: &PauliLabel) -> PauliLabel {
    let d = &p.x.block(i) - &p.x.block(i + 1);
    let h = model.beta(&d);
    let mut out = p.clone();
    out.phase += model.q(&d) - model.bilinear(&d, &d);
    out.z.set_block(i, &(&p.z.block(i) + &h));
    out.z.set_block(i + 1, &(&p.z.block(i + 1) - &h));
    out
}

/// The bare transform `|a⟩ ↦ Σ_b exp(2πi b(a,b))/√|G| |b⟩` on qudit `i`:
/// `X_g ↦ Z_{β(g)}` and `Z_h ↦ X_{−β⁻¹(h)}`.
pub fn conjugate_transform(model: &AbelianAnyonModel, i: usize, p: &PauliLabel) -> PauliLabel {
    let xi = p.x.block(i);
    let k = model.beta_inv(&p.z.block(i)).expect("modular model");
    let mut out = p.clone();
    out.phase += model.bilinear(&k, &xi);
    out.z.set_block(i, &model.beta(&xi));
    out.x.set_block(i, &-&k);
    out
}

/// `O = diag(θ⁻¹)·F·diag(θ⁻¹)` on qudit `i`.
pub fn conjugate_o(model: &AbelianAnyonModel, i: usize, p: &PauliLabel) -> PauliLabel {
    let p = conjugate_theta_inverse(model, i, p);
    let p = conjugate_transform(model, i, &p);
    conjugate_theta_inverse(model, i, &p)
}

pub fn conjugate_placed(model: &AbelianAnyonModel, gate: &PlacedGate, p: &PauliLabel) -> PauliLabel {
    let i = gate.qudit - 1;
    match gate.kind {
        GateKind::L => conjugate_l(model, i, p),
        GateKind::M => conjugate_m(model, i, p),
        GateKind::O => conjugate_o(model, i, p),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerState {
    spec: GroupSpec,
    generators: Vec<PauliLabel>,
}

impl StabilizerState {
    /// Stabilizer of `|a⟩`: `χ_{e_j}(a)⁻¹·Z_{e_j}` for every factor `j`.
    pub fn basis(a: &GroupElement) -> Self {
        let spec = a.spec().clone();
        let generators = (0..spec.num_factors())
            .map(|j| {
                let e = spec.basis(j);
                PauliLabel { phase: -e.pair(a).expect("same spec"), z: e, x: spec.zero() }
            })
            .collect();
        StabilizerState { spec, generators }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[PauliLabel] {
        &self.generators
    }

    pub fn apply_twist(&mut self, model: &AbelianAnyonModel, gate: &PlacedGate) {
        for p in &mut self.generators {
            *p = conjugate_placed(model, gate, p);
        }
    }

    pub fn apply_witness(&mut self, w: &ExactWitness) -> Result<()> {
        for p in &mut self.generators {
            *p = w.conjugate(p)?;
        }
        Ok(())
    }

    /// Pairwise commutation of the generators.
    pub fn generators_commute(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Every element of the generated group, by breadth-first closure.
    pub fn group(&self, bound: u64) -> Result<Vec<PauliLabel>> {
        let id = PauliLabel::identity(&self.spec);
        let mut seen: HashSet<PauliLabel> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let next = p.mul(g)?;
                if seen.insert(next.clone()) {
                    if seen.len() as u64 > bound {
                        return Err(Error::EnumerationTooLarge { order: seen.len() as u64, bound });
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }

    /// Born-rule distribution of a terminal computational-basis measurement of
    /// every qudit.
    pub fn measure_all(&self, bound: u64) -> Result<OutcomeDistribution> {
        check_dense_bound(self.spec.order(), bound)?;
        let group = self.group(bound)?;
        let n = self.spec.order() as usize;
        if group.len() != n {
            return Err(Error::Internal(format!("stabilizer group has {} elements, expected {n}", group.len())));
        }
        if group.iter().any(|p| p.is_identity_up_to_phase() && !p.phase.is_zero()) {
            return Err(Error::Internal("stabilizer group contains a nontrivial multiple of the identity".into()));
        }
        let diagonal: Vec<&PauliLabel> = group.iter().filter(|p| p.x.is_zero()).collect();
        let mut probs = Vec::with_capacity(n);
        for idx in 0..n {
            let y = self.spec.element_at(idx);
            let amp: Complex64 = diagonal.iter().map(|p| (p.phase + p.z.pair(&y).expect("same spec")).to_complex()).sum();
            let amp = amp / n as f64;
            if amp.im.abs() > 1e-9 {
                return Err(Error::Internal(format!("probability of {y} has imaginary part {}", amp.im)));
            }
            if amp.re < -1e-9 {
                return Err(Error::Internal(format!("negative probability {} for {y}", amp.re)));
            }
            probs.push(amp.re.clamp(0.0, 1.0));
        }
        Ok(OutcomeDistribution { spec: self.spec.clone(), probs })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    spec: GroupSpec,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn from_probs(spec: GroupSpec, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != spec.order() as usize {
            return Err(Error::DimensionMismatch { expected: spec.order() as usize, got: probs.len() });
        }
        Ok(OutcomeDistribution { spec, probs })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, x: &GroupElement) -> f64 {
        self.probs[x.index()]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Outcomes with probability above `eps`.
    pub fn support(&self, eps: f64) -> Vec<GroupElement> {
        self.probs.iter().enumerate().filter(|(_, &p)| p > eps).map(|(i, _)| self.spec.element_at(i)).collect()
    }

    pub fn total_variation(&self, other: &OutcomeDistribution) -> Result<f64> {
        self.spec.check_same(&other.spec)?;
        Ok(0.5 * self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).sum::<f64>())
    }
}

impl Serialize for OutcomeDistribution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            outcome: String,
            p: f64,
        }
        let entries: Vec<Entry> = self
            .probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 1e-12)
            .map(|(i, &p)| Entry { outcome: self.spec.element_at(i).to_string(), p })
            .collect();
        entries.serialize(serializer)
    }
}

/// Checks a raw gate is a normalizer gate and returns its exact witness.
fn raw_gate_witness(name: &str, matrix: &DenseOperator, spec: &GroupSpec) -> Result<ExactWitness> {
    let not = || Error::NotNormalizer(name.to_string());
    if classify_normalizer(matrix, spec, DEFAULT_TOL)? == NormalizerClass::Unknown {
        return Err(not());
    }
    let w = is_clifford(matrix, spec, DEFAULT_TOL)?.ok_or_else(not)?;
    w.to_exact(WITNESS_MAX_DEN).ok_or_else(not)
}

/// Runs the circuit on stabilizer labels and returns the final state.
pub fn stabilizer_run(circuit: &Circuit) -> Result<StabilizerState> {
    let mut state = StabilizerState::basis(&circuit.init);
    for g in &circuit.gates {
        match g {
            CircuitGate::Twist { gate, .. } => state.apply_twist(&circuit.model, gate),
            CircuitGate::Raw { name, matrix } => {
                let w = raw_gate_witness(name, matrix, &circuit.spec)?;
                state.apply_witness(&w)?;
            }
        }
    }
    Ok(state)
}

pub fn stabilizer_simulate(circuit: &Circuit, bound: u64) -> Result<OutcomeDistribution> {
    stabilizer_run(circuit)?.measure_all(bound)
}

/// State-vector evolution with the dense gate matrices.
pub fn dense_state(circuit: &Circuit, bound: u64) -> Result<Vec<Complex64>> {
    let n = circuit.spec.order();
    check_dense_bound(n, bound)?;
    let opts = GateOptions { include_anchor: false, dense_bound: bound };
    let mut psi = vec![Complex64::new(0.0, 0.0); n as usize];
    psi[circuit.init.index()] = Complex64::new(1.0, 0.0);
    let mut cache: HashMap<usize, DenseOperator> = HashMap::new();
    for g in &circuit.gates {
        psi = match g {
            CircuitGate::Twist { index, gate } => {
                if !cache.contains_key(index) {
                    cache.insert(*index, gate.dense(&circuit.model, &opts)?);
                }
                cache[index].apply(&psi)
            }
            CircuitGate::Raw { matrix, .. } => matrix.apply(&psi),
        };
    }
    Ok(psi)
}

pub fn dense_simulate(circuit: &Circuit, bound: u64) -> Result<OutcomeDistribution> {
    let psi = dense_state(circuit, bound)?;
    OutcomeDistribution::from_probs(circuit.spec.clone(), psi.iter().map(|a| a.norm_sqr()).collect())
}

/// Total-variation distance between the two backends.
pub fn compare(circuit: &Circuit, bound: u64) -> Result<f64> {
    let stab = stabilizer_simulate(circuit, bound)?;
    let dense = dense_simulate(circuit, bound)?;
    stab.total_variation(&dense)
}

/// Parses the line-oriented circuit format:
///
/// ```text
/// # comment
/// genus 2
/// init 0,1          # one coordinate tuple per qudit: `(1,0),(0,1)` for multi-factor groups
/// twist 3
/// twist 2
/// measure
/// ```
///
/// `genus` must come first; `init` defaults to `|0…0⟩`; `measure` is optional
/// and must be last.
pub fn parse_circuit(text: &str, model: Arc<AbelianAnyonModel>) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut measured = false;
    let mut seen_gate = false;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if measured {
            return Err(err("nothing may follow `measure`".into()));
        }
        let (directive, rest) = match line.split_once(char::is_whitespace) {
            Some((d, r)) => (d, r.trim()),
            None => (line, ""),
        };
        match directive {
            "genus" => {
                if circuit.is_some() {
                    return Err(err("duplicate `genus`".into()));
                }
                let g: usize = rest.parse().map_err(|_| err(format!("bad genus `{rest}`")))?;
                circuit = Some(Circuit::zero_state(model.clone(), g).map_err(|e| err(e.to_string()))?);
            }
            "init" => {
                let c = circuit.as_mut().ok_or_else(|| err("`init` before `genus`".into()))?;
                if seen_gate {
                    return Err(err("`init` after a gate".into()));
                }
                let a = parse_init(rest, c.spec()).map_err(err)?;
                c.init = a;
            }
            "twist" => {
                let c = circuit.as_mut().ok_or_else(|| err("`twist` before `genus`".into()))?;
                let k: usize = rest.parse().map_err(|_| err(format!("bad twist index `{rest}`")))?;
                c.push_twist(k).map_err(|e| err(e.to_string()))?;
                seen_gate = true;
            }
            "measure" => {
                if !rest.is_empty() {
                    return Err(err("`measure` takes no arguments".into()));
                }
                circuit.as_ref().ok_or_else(|| err("`measure` before `genus`".into()))?;
                measured = true;
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    circuit.ok_or(Error::Parse { line: 0, message: "missing `genus` directive".into() })
}

fn parse_init(rest: &str, spec: &GroupSpec) -> std::result::Result<GroupElement, String> {
    let s = spec.block_len();
    let g = spec.num_blocks();
    let compact: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coords: Vec<i64> = Vec::new();
    if compact.contains('(') {
        let tuples: Vec<&str> =
            compact.split(')').map(|t| t.trim_start_matches(',')).filter(|t| !t.is_empty()).collect();
        if tuples.len() != g {
            return Err(format!("expected {g} qudit tuple(s), found {}", tuples.len()));
        }
        for t in tuples {
            let t = t.strip_prefix('(').ok_or_else(|| format!("malformed tuple `{t}`"))?;
            let vals: Vec<i64> = t
                .split(',')
                .filter(|v| !v.is_empty())
                .map(|v| v.parse().map_err(|_| format!("bad coordinate `{v}`")))
                .collect::<std::result::Result<_, _>>()?;
            if vals.len() != s {
                return Err(format!("each qudit needs {s} coordinate(s), got {}", vals.len()));
            }
            coords.extend(vals);
        }
    } else if !compact.is_empty() {
        coords = compact
            .split(',')
            .map(|v| v.parse().map_err(|_| format!("bad coordinate `{v}`")))
            .collect::<std::result::Result<_, _>>()?;
    }
    if coords.len() != s * g {
        return Err(format!("expected {} coordinate(s) for {g} qudit(s), got {}", s * g, coords.len()));
    }
    for (c, &m) in coords.iter().zip(spec.factors()) {
        if *c < 0 || *c >= m as i64 {
            return Err(format!("coordinate {c} out of range 0..{m}"));
        }
    }
    spec.element(&coords).map_err(|e| e.to_string())
}
