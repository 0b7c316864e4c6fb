//! Abelian anyon models built from a finite abelian group and a pure quadratic
//! form `q: G → Q/Z`.
//!
//! Everything the gates need is derived from `q` alone: the topological spins
//! `θ_a = exp(2πi q(a))`, the bilinear form `b(x,y) = q(x+y) − q(x) − q(y)`, the
//! S-matrix `S_{x,y} = exp(2πi b(x,y)) / √|G|` and the Gauss-sum anchor phase
//! `p₋/D = Σ_a θ_a⁻¹ / √|G|`.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::dense::DenseOperator;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec, DEFAULT_ENUMERATION_BOUND};
use crate::phase::RationalPhase;

/// Names accepted by [`AbelianAnyonModel::builtin`].
pub const BUILTIN_MODELS: [&str; 4] = ["semion", "z3", "z4", "toric"];

/// A full value table of `q`, indexed by lexicographic element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    spec: GroupSpec,
    values: Vec<RationalPhase>,
}

impl QuadraticForm {
    /// Builds the table from `(element, value)` pairs. Every element of the
    /// group must appear; later duplicates overwrite earlier ones.
    pub fn from_table<I>(spec: &GroupSpec, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, RationalPhase)>,
    {
        spec.check_enumerable(DEFAULT_ENUMERATION_BOUND)?;
        let mut values: Vec<Option<RationalPhase>> = vec![None; spec.order() as usize];
        for (x, v) in entries {
            spec.check_same(x.spec())?;
            values[x.index()] = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingEntry(spec.element_at(i).to_string())))
            .collect::<Result<_>>()?;
        Ok(QuadraticForm { spec: spec.clone(), values })
    }

    pub fn from_fn(spec: &GroupSpec, f: impl Fn(&GroupElement) -> RationalPhase) -> Result<Self> {
        let values = spec.enumerate(DEFAULT_ENUMERATION_BOUND)?.iter().map(f).collect();
        Ok(QuadraticForm { spec: spec.clone(), values })
    }

    /// `q(x) = p·x² / (2N)` on `Z/N`, with `x` taken in `0..N`.
    pub fn cyclic(n: u32, p: i64) -> Result<Self> {
        let spec = GroupSpec::cyclic(n)?;
        Self::from_fn(&spec, |x| {
            let x = x.coords()[0] as i64;
            RationalPhase::new(p * x * x, 2 * n as i64)
        })
    }

    pub fn zero(spec: &GroupSpec) -> Result<Self> {
        Self::from_fn(spec, |_| RationalPhase::ZERO)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn value(&self, x: &GroupElement) -> RationalPhase {
        self.values[x.index()]
    }

    pub fn values(&self) -> &[RationalPhase] {
        &self.values
    }

    /// Polarization `q(x+y) − q(x) − q(y)`.
    pub fn polar(&self, x: &GroupElement, y: &GroupElement) -> RationalPhase {
        self.value(&(x + y)) - self.value(x) - self.value(y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `q(0) != 0`.
    NonzeroAtIdentity { value: String },
    /// `q(−x) != q(x)`.
    NotEven { x: String, q_x: String, q_neg_x: String },
    /// `b(x, y+z) != b(x,y) + b(x,z)`.
    NotBilinear { x: String, y: String, z: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonzeroAtIdentity { value } => write!(f, "q(0) = {value} != 0"),
            Violation::NotEven { x, q_x, q_neg_x } => write!(f, "q(-{x}) = {q_neg_x} != q({x}) = {q_x}"),
            Violation::NotBilinear { x, y, z } => write!(f, "b({x}, {y}+{z}) != b({x},{y}) + b({x},{z})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let shown: Vec<String> = self.violations.iter().take(8).map(|v| v.to_string()).collect();
        write!(f, "{} violation(s): {}", self.violations.len(), shown.join("; "))?;
        if self.violations.len() > 8 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

/// Checks `q(0) = 0`, `q(−x) = q(x)` and bilinearity of the polarization,
/// exhaustively, listing every failure.
pub fn validate_quadratic(q: &QuadraticForm) -> ValidationReport {
    let all = q.spec.enumerate(DEFAULT_ENUMERATION_BOUND).expect("table was enumerable");
    let mut violations = Vec::new();
    let zero = q.spec.zero();
    if !q.value(&zero).is_zero() {
        violations.push(Violation::NonzeroAtIdentity { value: q.value(&zero).to_string() });
    }
    for x in &all {
        let neg = -x;
        if q.value(&neg) != q.value(x) {
            violations.push(Violation::NotEven {
                x: x.to_string(),
                q_x: q.value(x).to_string(),
                q_neg_x: q.value(&neg).to_string(),
            });
        }
    }
    for x in &all {
        for y in &all {
            let bxy = q.polar(x, y);
            for z in &all {
                if q.polar(x, &(y + z)) != bxy + q.polar(x, z) {
                    violations.push(Violation::NotBilinear {
                        x: x.to_string(),
                        y: y.to_string(),
                        z: z.to_string(),
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// A 3-cocycle `f: G×G×G → Q/Z`. Accepted and validated; it does not enter
/// any gate matrix because its contributions cancel in the twist formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleData {
    spec: GroupSpec,
    values: Vec<RationalPhase>,
}

impl CocycleData {
    pub fn trivial(spec: &GroupSpec) -> Result<Self> {
        Self::from_fn(spec, |_, _, _| RationalPhase::ZERO)
    }

    pub fn from_fn(
        spec: &GroupSpec,
        f: impl Fn(&GroupElement, &GroupElement, &GroupElement) -> RationalPhase,
    ) -> Result<Self> {
        let all = spec.enumerate(DEFAULT_ENUMERATION_BOUND)?;
        let n = all.len();
        let mut values = Vec::with_capacity(n * n * n);
        for a in &all {
            for b in &all {
                for c in &all {
                    values.push(f(a, b, c));
                }
            }
        }
        Ok(CocycleData { spec: spec.clone(), values })
    }

    pub fn value(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> RationalPhase {
        let n = self.spec.order() as usize;
        self.values[(a.index() * n + b.index()) * n + c.index()]
    }

    /// `f(b,c,d) − f(a+b,c,d) + f(a,b+c,d) − f(a,b,c+d) + f(a,b,c) = 0` for all
    /// quadruples.
    pub fn validate(&self) -> Result<()> {
        let all = self.spec.enumerate(DEFAULT_ENUMERATION_BOUND)?;
        for a in &all {
            for b in &all {
                for c in &all {
                    for d in &all {
                        let lhs = self.value(b, c, d) - self.value(&(a + b), c, d)
                            + self.value(a, &(b + c), d)
                            - self.value(a, b, &(c + d))
                            + self.value(a, b, c);
                        if !lhs.is_zero() {
                            return Err(Error::InvalidCocycle(format!("at ({a}, {b}, {c}, {d})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `(G, q)` together with the tables derived from it.
#[derive(Clone, Debug)]
pub struct AbelianAnyonModel {
    name: String,
    q: QuadraticForm,
    /// `beta[g]` is the index of the character `h` with `χ_h(y) = exp(2πi b(y,g))`.
    beta: Vec<usize>,
    beta_inv: Option<Vec<usize>>,
    cocycle: Option<CocycleData>,
}

impl AbelianAnyonModel {
    /// Validates `q` and derives the model. Degenerate forms are accepted here
    /// and flagged by [`AbelianAnyonModel::is_modular`].
    pub fn new(name: impl Into<String>, q: QuadraticForm) -> Result<Self> {
        let report = validate_quadratic(&q);
        if !report.is_valid() {
            return Err(Error::InvalidQuadraticForm(report.to_string()));
        }
        let spec = q.spec().clone();
        let all = spec.enumerate(DEFAULT_ENUMERATION_BOUND)?;
        let mut beta = Vec::with_capacity(all.len());
        for g in &all {
            let mut coords = Vec::with_capacity(spec.num_factors());
            for (j, &m) in spec.factors().iter().enumerate() {
                let r = q.polar(&spec.basis(j), g);
                // b(e_j, g) is killed by m_j, so r = k/m_j exactly.
                let scaled = r.numer() * m as i64;
                if scaled % r.denom() != 0 {
                    return Err(Error::Internal(format!("b(e_{j}, {g}) = {r} is not a multiple of 1/{m}")));
                }
                coords.push(scaled / r.denom());
            }
            beta.push(spec.element(&coords)?.index());
        }
        let mut inv = vec![usize::MAX; all.len()];
        for (g, &h) in beta.iter().enumerate() {
            inv[h] = g;
        }
        let beta_inv = inv.iter().all(|&g| g != usize::MAX).then_some(inv);
        Ok(AbelianAnyonModel { name: name.into(), q, beta, beta_inv, cocycle: None })
    }

    pub fn cyclic(n: u32, p: i64) -> Result<Self> {
        Self::new(format!("cyclic(N={n},p={p})"), QuadraticForm::cyclic(n, p)?)
    }

    /// One of [`BUILTIN_MODELS`], or `trivial`.
    pub fn builtin(name: &str) -> Result<Self> {
        let mut model = match name {
            "semion" => Self::cyclic(2, 1)?,
            "z3" => Self::cyclic(3, 2)?,
            "z4" => Self::cyclic(4, 1)?,
            "toric" => {
                let spec = GroupSpec::new(vec![2, 2])?;
                let q = QuadraticForm::from_fn(&spec, |x| {
                    if x.coords() == [1, 1] {
                        RationalPhase::new(1, 2)
                    } else {
                        RationalPhase::ZERO
                    }
                })?;
                Self::new("toric", q)?
            }
            "trivial" => Self::new("trivial", QuadraticForm::zero(&GroupSpec::trivial())?)?,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown builtin model `{other}` (known: {}, trivial)",
                    BUILTIN_MODELS.join(", ")
                )))
            }
        };
        model.name = name.to_string();
        Ok(model)
    }

    /// Orthogonal sum `(G₁ × G₂, q₁ ⊕ q₂)`. The concatenated factor list must
    /// still be in invariant-factor order.
    pub fn product(&self, other: &AbelianAnyonModel) -> Result<Self> {
        let mut factors = self.group().factors().to_vec();
        factors.extend_from_slice(other.group().factors());
        let spec = GroupSpec::new(factors)?;
        let s1 = self.group().num_factors();
        let q = QuadraticForm::from_fn(&spec, |x| {
            let c: Vec<i64> = x.coords().iter().map(|&c| c as i64).collect();
            let x1 = self.group().element(&c[..s1]).expect("factor split");
            let x2 = other.group().element(&c[s1..]).expect("factor split");
            self.q.value(&x1) + other.q.value(&x2)
        })?;
        Self::new(format!("{}⊗{}", self.name, other.name), q)
    }

    pub fn with_cocycle(mut self, f: CocycleData) -> Result<Self> {
        self.group().check_same(&f.spec)?;
        f.validate()?;
        self.cocycle = Some(f);
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &GroupSpec {
        self.q.spec()
    }

    pub fn order(&self) -> usize {
        self.group().order() as usize
    }

    pub fn quadratic_form(&self) -> &QuadraticForm {
        &self.q
    }

    pub fn cocycle(&self) -> Option<&CocycleData> {
        self.cocycle.as_ref()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.group().enumerate(DEFAULT_ENUMERATION_BOUND).expect("model group is enumerable")
    }

    pub fn q(&self, x: &GroupElement) -> RationalPhase {
        self.q.value(x)
    }

    /// Topological spin as an exact phase: `θ_x = exp(2πi q(x))`.
    pub fn theta(&self, x: &GroupElement) -> RationalPhase {
        self.q.value(x)
    }

    pub fn bilinear(&self, x: &GroupElement, y: &GroupElement) -> RationalPhase {
        self.q.polar(x, y)
    }

    /// The character index `h` with `χ_h(y) = exp(2πi b(y, g))`.
    pub fn beta(&self, g: &GroupElement) -> GroupElement {
        self.group().element_at(self.beta[g.index()])
    }

    /// Inverse of [`AbelianAnyonModel::beta`]; `None` when `b` is degenerate.
    pub fn beta_inv(&self, h: &GroupElement) -> Option<GroupElement> {
        self.beta_inv.as_ref().map(|inv| self.group().element_at(inv[h.index()]))
    }

    /// `b(x,·)` vanishes identically only for `x = 0`.
    pub fn is_nondegenerate(&self) -> bool {
        self.beta_inv.is_some()
    }

    pub fn smatrix_entry(&self, x: &GroupElement, y: &GroupElement) -> Complex64 {
        self.bilinear(x, y).to_complex() / (self.order() as f64).sqrt()
    }

    pub fn smatrix(&self) -> DenseOperator {
        let all = self.elements();
        DenseOperator::from_fn(all.len(), |r, c| self.smatrix_entry(&all[r], &all[c]))
    }

    /// `S·S† = 1` within 1e-12.
    pub fn check_modular(&self) -> bool {
        self.smatrix().unitarity_residual() < 1e-12
    }

    pub fn is_modular(&self) -> bool {
        self.is_nondegenerate()
    }

    pub fn require_modular(&self) -> Result<()> {
        if !self.is_modular() {
            return Err(Error::NonModular(self.name.clone()));
        }
        Ok(())
    }

    /// Gauss sum without the modulus check.
    pub fn gauss_sum(&self) -> Complex64 {
        let sum: Complex64 = self.elements().iter().map(|a| (-self.theta(a)).to_complex()).sum();
        sum / (self.order() as f64).sqrt()
    }

    /// `p₋/D = Σ_a θ_a⁻¹ / √|G|`, required to be a unit.
    pub fn anchor_phase(&self) -> Result<Complex64> {
        let z = self.gauss_sum();
        if (z.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::NonModular(format!("{}: |anchor phase| = {}", self.name, z.norm())));
        }
        Ok(z)
    }

    /// Central charge mod 8 read off `p₋/D = exp(−cπi/4)`.
    pub fn central_charge_mod8(&self) -> Result<f64> {
        let z = self.anchor_phase()?;
        Ok((-z.arg() * 4.0 / std::f64::consts::PI).rem_euclid(8.0))
    }
}
