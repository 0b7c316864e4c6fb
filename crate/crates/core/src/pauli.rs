//! Generalized Pauli operators over `G^n`, Clifford membership by conjugation,
//! and classification of normalizer gates.
//!
//! `X_g|y⟩ = |y+g⟩` and `Z_h|y⟩ = χ_h(y)|y⟩`, so a label `(φ, z, x)` stands for
//! `exp(2πiφ)·Z_z·X_x`, which maps `|y⟩` to `exp(2πiφ)·χ_z(y+x)|y+x⟩`.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::dense::{check_dense_bound, DenseOperator, DEFAULT_DENSE_BOUND};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::phase::RationalPhase;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliLabel {
    pub phase: RationalPhase,
    pub z: GroupElement,
    pub x: GroupElement,
}

impl PauliLabel {
    pub fn new(phase: RationalPhase, z: GroupElement, x: GroupElement) -> Result<Self> {
        z.spec().check_same(x.spec())?;
        Ok(PauliLabel { phase, z, x })
    }

    pub fn identity(spec: &GroupSpec) -> Self {
        PauliLabel { phase: RationalPhase::ZERO, z: spec.zero(), x: spec.zero() }
    }

    /// `X_{e_j}`.
    pub fn x_generator(spec: &GroupSpec, j: usize) -> Self {
        PauliLabel { phase: RationalPhase::ZERO, z: spec.zero(), x: spec.basis(j) }
    }

    /// `Z_{e_j}`.
    pub fn z_generator(spec: &GroupSpec, j: usize) -> Self {
        PauliLabel { phase: RationalPhase::ZERO, z: spec.basis(j), x: spec.zero() }
    }

    pub fn spec(&self) -> &GroupSpec {
        self.z.spec()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.z.is_zero() && self.x.is_zero()
    }

    /// `(φ₁,z₁,x₁)·(φ₂,z₂,x₂) = (φ₁+φ₂ − χ_{z₂}(x₁), z₁+z₂, x₁+x₂)`, from
    /// `X_x Z_z = χ_z(x)⁻¹ Z_z X_x`.
    pub fn mul(&self, rhs: &PauliLabel) -> Result<PauliLabel> {
        let cross = rhs.z.pair(&self.x)?;
        Ok(PauliLabel {
            phase: self.phase + rhs.phase - cross,
            z: self.z.checked_add(&rhs.z)?,
            x: self.x.checked_add(&rhs.x)?,
        })
    }

    pub fn pow(&self, k: u64) -> PauliLabel {
        let mut acc = PauliLabel::identity(self.spec());
        for _ in 0..k {
            acc = acc.mul(self).expect("same spec");
        }
        acc
    }

    pub fn with_phase(&self, phase: RationalPhase) -> PauliLabel {
        PauliLabel { phase, ..self.clone() }
    }

    /// Labels commute iff `χ_{z₂}(x₁) = χ_{z₁}(x₂)`.
    pub fn commutes_with(&self, other: &PauliLabel) -> bool {
        other.z.pair(&self.x).ok() == self.z.pair(&other.x).ok()
    }

    pub fn matrix(&self, dense_bound: u64) -> Result<DenseOperator> {
        let spec = self.spec();
        check_dense_bound(spec.order(), dense_bound)?;
        let n = spec.order() as usize;
        let global = self.phase.to_complex();
        let mut m = DenseOperator::zeros(n);
        for col in 0..n {
            let target = &spec.element_at(col) + &self.x;
            let v = global * self.z.pair(&target)?.to_complex();
            m.set(target.index(), col, v);
        }
        Ok(m)
    }
}

impl fmt::Debug for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{})·Z{}·X{}", self.phase, self.z, self.x)
    }
}

impl Serialize for PauliLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("PauliLabel", 3)?;
        st.serialize_field("phase", &self.phase)?;
        st.serialize_field("z", self.z.coords())?;
        st.serialize_field("x", self.x.coords())?;
        st.end()
    }
}

/// A Pauli operator recovered from a dense matrix; the global phase is kept as
/// a complex unit because conjugation can produce phases of any order.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliDecomposition {
    pub phase: Complex64,
    pub z: GroupElement,
    pub x: GroupElement,
}

impl PauliDecomposition {
    pub fn matrix(&self) -> Result<DenseOperator> {
        let bare = PauliLabel::new(RationalPhase::ZERO, self.z.clone(), self.x.clone())?;
        Ok(bare.matrix(u64::MAX)?.scale(self.phase))
    }

    /// Exact label, if the phase is a rational with denominator `<= max_den`.
    pub fn to_label(&self, max_den: i64) -> Option<PauliLabel> {
        let phase = RationalPhase::from_complex(self.phase, max_den, 1e-9)?;
        Some(PauliLabel { phase, z: self.z.clone(), x: self.x.clone() })
    }
}

/// Inverse of [`PauliLabel::matrix`]: `Some` iff `u` is `c·Z_z·X_x` within `tol`.
pub fn decompose_pauli(u: &DenseOperator, spec: &GroupSpec, tol: f64) -> Result<Option<PauliDecomposition>> {
    let n = spec.order() as usize;
    if u.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: u.dim() });
    }
    // Each column must hold exactly one unit-modulus entry.
    let mut rows = Vec::with_capacity(n);
    for col in 0..n {
        let mut hit = None;
        for r in 0..n {
            let v = u.get(r, col).norm();
            if v > tol {
                if hit.is_some() || (v - 1.0).abs() > tol {
                    return Ok(None);
                }
                hit = Some(r);
            }
        }
        match hit {
            Some(r) => rows.push(r),
            None => return Ok(None),
        }
    }
    let x = spec.element_at(rows[0]);
    for (col, &r) in rows.iter().enumerate() {
        if (&spec.element_at(col) + &x).index() != r {
            return Ok(None);
        }
    }
    let entry = |y: &GroupElement| u.get((y + &x).index(), y.index());
    let e0 = entry(&spec.zero());
    let mut zc = Vec::with_capacity(spec.num_factors());
    for (j, &m) in spec.factors().iter().enumerate() {
        let ratio = entry(&spec.basis(j)) / e0;
        let k = (ratio.arg() / std::f64::consts::TAU * m as f64).round() as i64;
        zc.push(k);
    }
    let z = spec.element(&zc)?;
    let phase = e0 / z.pair(&x)?.to_complex();
    for col in 0..n {
        let y = spec.element_at(col);
        let want = phase * z.pair(&(&y + &x))?.to_complex();
        if (entry(&y) - want).norm() > tol {
            return Ok(None);
        }
    }
    Ok(Some(PauliDecomposition { phase, z, x }))
}

fn require_unitary(u: &DenseOperator, tol: f64) -> Result<()> {
    let residual = u.unitarity_residual();
    if residual > tol {
        return Err(Error::NonUnitary { residual });
    }
    Ok(())
}

/// Images `U·P·U†` of the generators `X_{e_j}` and `Z_{e_j}` of the Pauli group.
#[derive(Clone, Debug)]
pub struct CliffordWitness {
    pub spec: GroupSpec,
    pub x_images: Vec<PauliDecomposition>,
    pub z_images: Vec<PauliDecomposition>,
}

impl CliffordWitness {
    /// Largest deviation between the recorded images and a fresh dense
    /// conjugation by `u`.
    pub fn residual(&self, u: &DenseOperator) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for j in 0..self.spec.num_factors() {
            for (gen, img) in [
                (PauliLabel::x_generator(&self.spec, j), &self.x_images[j]),
                (PauliLabel::z_generator(&self.spec, j), &self.z_images[j]),
            ] {
                let conj = gen.matrix(u64::MAX)?.conjugate_by(u);
                worst = worst.max(conj.max_abs_diff(&img.matrix()?));
            }
        }
        Ok(worst)
    }

    /// Exact version with rational phases, for the table-driven simulator.
    pub fn to_exact(&self, max_den: i64) -> Option<ExactWitness> {
        let conv = |v: &Vec<PauliDecomposition>| v.iter().map(|d| d.to_label(max_den)).collect::<Option<Vec<_>>>();
        Some(ExactWitness { x_images: conv(&self.x_images)?, z_images: conv(&self.z_images)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactWitness {
    pub x_images: Vec<PauliLabel>,
    pub z_images: Vec<PauliLabel>,
}

impl ExactWitness {
    /// `U·(φ,z,x)·U† = exp(2πiφ)·Π_j (U Z_{e_j} U†)^{z_j} · Π_j (U X_{e_j} U†)^{x_j}`.
    pub fn conjugate(&self, p: &PauliLabel) -> Result<PauliLabel> {
        let spec = p.spec();
        let mut acc = PauliLabel::identity(spec).with_phase(p.phase);
        for (j, &zj) in p.z.coords().iter().enumerate() {
            acc = acc.mul(&self.z_images[j].pow(zj as u64))?;
        }
        for (j, &xj) in p.x.coords().iter().enumerate() {
            acc = acc.mul(&self.x_images[j].pow(xj as u64))?;
        }
        Ok(acc)
    }
}

/// Projective Clifford membership: `Some(witness)` iff every Pauli generator
/// conjugates to a Pauli operator.
pub fn is_clifford(u: &DenseOperator, spec: &GroupSpec, tol: f64) -> Result<Option<CliffordWitness>> {
    let n = spec.order() as usize;
    if u.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: u.dim() });
    }
    require_unitary(u, tol)?;
    let ud = u.adjoint();
    let mut x_images = Vec::new();
    let mut z_images = Vec::new();
    for j in 0..spec.num_factors() {
        for (gen, out) in [
            (PauliLabel::x_generator(spec, j), &mut x_images),
            (PauliLabel::z_generator(spec, j), &mut z_images),
        ] {
            let conj = u.matmul(&gen.matrix(u64::MAX)?).matmul(&ud);
            match decompose_pauli(&conj, spec, tol)? {
                Some(d) => out.push(d),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(CliffordWitness { spec: spec.clone(), x_images, z_images }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizerClass {
    Automorphism,
    QuadraticPhase,
    Fourier,
    Unknown,
}

impl fmt::Display for NormalizerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NormalizerClass::Automorphism => "automorphism",
            NormalizerClass::QuadraticPhase => "quadratic_phase",
            NormalizerClass::Fourier => "fourier",
            NormalizerClass::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Sorts `u` into one of the three elementary normalizer-gate families
/// (up to a global phase), or `Unknown`.
///
/// * automorphism: a permutation matrix `|g⟩ ↦ |ψ(g)⟩` with `ψ` additive;
/// * quadratic phase: `diag(ζ)` with `ζ(g+h)/(ζ(g)ζ(h))` a bicharacter;
/// * Fourier: `u[x,g] ∝ χ_{h(x)}(g)/√|G|` with `h` an isomorphism `G → Ĝ`.
pub fn classify_normalizer(u: &DenseOperator, spec: &GroupSpec, tol: f64) -> Result<NormalizerClass> {
    let n = spec.order() as usize;
    if u.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: u.dim() });
    }
    require_unitary(u, tol)?;
    let all = spec.enumerate(DEFAULT_DENSE_BOUND.max(n as u64))?;
    if is_automorphism_gate(u, spec, &all, tol) {
        return Ok(NormalizerClass::Automorphism);
    }
    if u.is_diagonal(tol) {
        if is_quadratic_phase(u, spec, &all, tol) {
            return Ok(NormalizerClass::QuadraticPhase);
        }
        return Ok(NormalizerClass::Unknown);
    }
    if is_fourier(u, spec, &all, tol) {
        return Ok(NormalizerClass::Fourier);
    }
    Ok(NormalizerClass::Unknown)
}

fn is_automorphism_gate(u: &DenseOperator, spec: &GroupSpec, all: &[GroupElement], tol: f64) -> bool {
    let n = all.len();
    let mut image = Vec::with_capacity(n);
    let mut phase = None;
    for col in 0..n {
        let hits: Vec<usize> = (0..n).filter(|&r| u.get(r, col).norm() > tol).collect();
        if hits.len() != 1 {
            return false;
        }
        let v = u.get(hits[0], col);
        let ph = *phase.get_or_insert(v);
        if (v - ph).norm() > tol {
            return false;
        }
        image.push(hits[0]);
    }
    // The identity is both a permutation and a (trivial) quadratic phase; the
    // diagonal case is left to the quadratic-phase test unless it permutes.
    if image.iter().enumerate().all(|(i, &r)| i == r) {
        return false;
    }
    all.iter().all(|g| {
        all.iter().all(|h| {
            let lhs = spec.element_at(image[(g + h).index()]);
            let rhs = &spec.element_at(image[g.index()]) + &spec.element_at(image[h.index()]);
            lhs == rhs
        })
    })
}

/// Finds `h` with `f(g) = χ_h(g)` for all `g`, given `f` normalized so `f(0) = 1`.
fn as_character(f: impl Fn(&GroupElement) -> Complex64, spec: &GroupSpec, all: &[GroupElement], tol: f64) -> Option<GroupElement> {
    let mut coords = Vec::with_capacity(spec.num_factors());
    for (j, &m) in spec.factors().iter().enumerate() {
        let v = f(&spec.basis(j));
        coords.push((v.arg() / std::f64::consts::TAU * m as f64).round() as i64);
    }
    let h = spec.element(&coords).ok()?;
    for g in all {
        let want = h.pair(g).ok()?.to_complex();
        if (f(g) - want).norm() > tol {
            return None;
        }
    }
    Some(h)
}

fn is_quadratic_phase(u: &DenseOperator, spec: &GroupSpec, all: &[GroupElement], tol: f64) -> bool {
    let z0 = u.get(0, 0);
    if z0.norm() < tol {
        return false;
    }
    let zeta: Vec<Complex64> = (0..all.len()).map(|i| u.get(i, i) / z0).collect();
    if zeta.iter().any(|v| (v.norm() - 1.0).abs() > tol) {
        return false;
    }
    let b = |g: &GroupElement, h: &GroupElement| zeta[(g + h).index()] / (zeta[g.index()] * zeta[h.index()]);
    // B(·,h) and B(g,·) must each be characters.
    all.iter().all(|h| as_character(|g| b(g, h), spec, all, tol).is_some())
        && all.iter().all(|g| as_character(|h| b(g, h), spec, all, tol).is_some())
}

fn is_fourier(u: &DenseOperator, spec: &GroupSpec, all: &[GroupElement], tol: f64) -> bool {
    let n = all.len();
    let mag = 1.0 / (n as f64).sqrt();
    if u.data().iter().any(|v| (v.norm() - mag).abs() > tol) {
        return false;
    }
    let c = u.get(0, 0);
    let mut h = Vec::with_capacity(n);
    for x in all {
        match as_character(|g| u.get(x.index(), g.index()) / c, spec, all, tol) {
            Some(hx) => h.push(hx),
            None => return false,
        }
    }
    // x ↦ h(x) must be an isomorphism onto the character group.
    let mut seen = vec![false; n];
    for hx in &h {
        if std::mem::replace(&mut seen[hx.index()], true) {
            return false;
        }
    }
    all.iter().all(|x| all.iter().all(|y| h[(x + y).index()] == &h[x.index()] + &h[y.index()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z2() -> GroupSpec {
        GroupSpec::cyclic(2).unwrap()
    }

    #[test]
    fn qubit_paulis() {
        let s = z2();
        let x = PauliLabel::x_generator(&s, 0).matrix(16).unwrap();
        assert_eq!(x, DenseOperator::from_real_rows(&[&[0., 1.], &[1., 0.]]));
        let z = PauliLabel::z_generator(&s, 0).matrix(16).unwrap();
        assert_eq!(z, DenseOperator::from_real_rows(&[&[1., 0.], &[0., -1.]]));
    }

    #[test]
    fn z4_zx() {
        let s = GroupSpec::cyclic(4).unwrap();
        let zx = PauliLabel::new(RationalPhase::ZERO, s.basis(0), s.basis(0)).unwrap();
        let m = zx.matrix(16).unwrap();
        // |y⟩ ↦ i^{y+1} |y+1⟩
        for y in 0..4 {
            let r = (y + 1) % 4;
            assert!((m.get(r, y) - Complex64::new(0.0, 1.0).powi(r as i32)).norm() < 1e-15);
        }
    }

    #[test]
    fn decompose_examples() {
        let s = z2();
        let id = decompose_pauli(&DenseOperator::identity(2), &s, 1e-9).unwrap().unwrap();
        assert!(id.z.is_zero() && id.x.is_zero() && (id.phase - c(1., 0.)).norm() < 1e-12);
        let x = decompose_pauli(&DenseOperator::from_real_rows(&[&[0., 1.], &[1., 0.]]), &s, 1e-9).unwrap().unwrap();
        assert!(x.z.is_zero() && x.x.coords() == [1] && (x.phase - c(1., 0.)).norm() < 1e-12);
        let h = DenseOperator::from_real_rows(&[&[1., 1.], &[1., -1.]]).scale(c(std::f64::consts::FRAC_1_SQRT_2, 0.));
        assert!(decompose_pauli(&h, &s, 1e-9).unwrap().is_none());
        // a permutation that is not a translation
        let swap = DenseOperator::from_real_rows(&[&[1., 0., 0., 0.], &[0., 0., 1., 0.], &[0., 1., 0., 0.], &[0., 0., 0., 1.]]);
        assert!(decompose_pauli(&swap, &GroupSpec::new(vec![2, 2]).unwrap(), 1e-9).unwrap().is_none());
    }

    #[test]
    fn clifford_examples() {
        let s = z2();
        let h = DenseOperator::from_real_rows(&[&[1., 1.], &[1., -1.]]).scale(c(std::f64::consts::FRAC_1_SQRT_2, 0.));
        let w = is_clifford(&h, &s, 1e-9).unwrap().unwrap();
        assert!(w.x_images[0].x.is_zero() && w.x_images[0].z.coords() == [1]);
        assert!(w.z_images[0].z.is_zero() && w.z_images[0].x.coords() == [1]);
        assert!(w.residual(&h).unwrap() < 1e-12);

        let t = DenseOperator::from_diagonal(&[c(1., 0.), Complex64::cis(std::f64::consts::FRAC_PI_4)]);
        assert!(is_clifford(&t, &s, 1e-9).unwrap().is_none());

        let not_unitary = DenseOperator::from_real_rows(&[&[1., 1.], &[0., 1.]]);
        assert!(matches!(is_clifford(&not_unitary, &s, 1e-9), Err(Error::NonUnitary { .. })));
        assert!(matches!(classify_normalizer(&not_unitary, &s, 1e-9), Err(Error::NonUnitary { .. })));
    }

    #[test]
    fn classify_examples() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let neg = DenseOperator::from_fn(4, |r, c| if r == (4 - c) % 4 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
        assert_eq!(classify_normalizer(&neg, &z4, 1e-9).unwrap(), NormalizerClass::Automorphism);

        // x ↦ x+1 is a permutation but not an automorphism
        let shift = PauliLabel::x_generator(&z4, 0).matrix(16).unwrap();
        assert_eq!(classify_normalizer(&shift, &z4, 1e-9).unwrap(), NormalizerClass::Unknown);

        let qft = DenseOperator::from_fn(4, |x, g| Complex64::cis(std::f64::consts::TAU * (x * g) as f64 / 4.0) / 2.0);
        assert_eq!(classify_normalizer(&qft, &z4, 1e-9).unwrap(), NormalizerClass::Fourier);
        assert_eq!(classify_normalizer(&qft.scale(Complex64::cis(0.3)), &z4, 1e-9).unwrap(), NormalizerClass::Fourier);

        let s = DenseOperator::from_diagonal(&[c(1., 0.), c(0., 1.)]);
        assert_eq!(classify_normalizer(&s, &z2(), 1e-9).unwrap(), NormalizerClass::QuadraticPhase);
        let t = DenseOperator::from_diagonal(&[c(1., 0.), Complex64::cis(std::f64::consts::FRAC_PI_4)]);
        assert_eq!(classify_normalizer(&t, &z2(), 1e-9).unwrap(), NormalizerClass::Unknown);
        // on Z/4, diag(i^{x²}) is quadratic but diag(ω^{x³}) with ω = e^{2πi/4} is not
        let quad = DenseOperator::from_fn(4, |r, c| if r == c { Complex64::cis(std::f64::consts::TAU * (r * r) as f64 / 8.0) } else { Complex64::new(0., 0.) });
        assert_eq!(classify_normalizer(&quad, &z4, 1e-9).unwrap(), NormalizerClass::QuadraticPhase);
        let cubic = DenseOperator::from_fn(4, |r, c| if r == c { Complex64::cis(std::f64::consts::TAU * (r * r * r) as f64 / 4.0) } else { Complex64::new(0., 0.) });
        assert_eq!(classify_normalizer(&cubic, &z4, 1e-9).unwrap(), NormalizerClass::Unknown);
    }

    #[test]
    fn commutation_law() {
        let s = GroupSpec::cyclic(3).unwrap();
        let x = PauliLabel::x_generator(&s, 0);
        let z = PauliLabel::z_generator(&s, 0);
        assert!(!x.commutes_with(&z));
        assert!(x.commutes_with(&x.pow(2)));
        assert!(x.pow(3).is_identity_up_to_phase() && x.pow(3).phase.is_zero());
    }

    fn small_specs() -> Vec<GroupSpec> {
        let mut out = Vec::new();
        for base in [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![8]] {
            let g = GroupSpec::new(base).unwrap();
            out.push(g.clone());
            if g.order() <= 4 {
                out.push(g.power(2).unwrap());
            }
        }
        out
    }

    #[test]
    fn multiplication_law_matches_dense_exhaustive() {
        let phases = [RationalPhase::ZERO, RationalPhase::new(1, 3)];
        for spec in small_specs() {
            let all = spec.enumerate(4096).unwrap();
            let labels: Vec<PauliLabel> = all
                .iter()
                .flat_map(|z| all.iter().map(move |x| (z.clone(), x.clone())))
                .enumerate()
                .map(|(i, (z, x))| PauliLabel::new(phases[i % 2], z, x).unwrap())
                .collect();
            let mats: Vec<DenseOperator> = labels.iter().map(|l| l.matrix(4096).unwrap()).collect();
            // All pairs for small groups, a stride otherwise.
            let stride = if labels.len() > 64 { 7 } else { 1 };
            for (a, ma) in labels.iter().zip(&mats).step_by(stride) {
                for (b, mb) in labels.iter().zip(&mats) {
                    let prod = a.mul(b).unwrap().matrix(4096).unwrap();
                    assert!(prod.max_abs_diff(&ma.matmul(mb)) < 1e-12, "{a} * {b}");
                }
            }
        }
    }

    #[test]
    fn decompose_inverts_matrix_exhaustive() {
        for spec in small_specs() {
            let all = spec.enumerate(4096).unwrap();
            for z in &all {
                for x in &all {
                    let l = PauliLabel::new(RationalPhase::new(1, 5), z.clone(), x.clone()).unwrap();
                    let d = decompose_pauli(&l.matrix(4096).unwrap(), &spec, 1e-9).unwrap().unwrap();
                    assert_eq!(&d.z, z);
                    assert_eq!(&d.x, x);
                    assert!((d.phase - l.phase.to_complex()).norm() < 1e-12);
                    assert_eq!(d.to_label(100).unwrap(), l);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn exact_witness_matches_dense(z in 0i64..4, x in 0i64..4, num in 0i64..8) {
            // Conjugation by the Z/4 Fourier transform, checked through the exact witness.
            let s = GroupSpec::cyclic(4).unwrap();
            let qft = DenseOperator::from_fn(4, |r, c| Complex64::cis(std::f64::consts::TAU * (r * c) as f64 / 4.0) / 2.0);
            let w = is_clifford(&qft, &s, 1e-9).unwrap().unwrap().to_exact(64).unwrap();
            let p = PauliLabel::new(RationalPhase::new(num, 8), s.element(&[z]).unwrap(), s.element(&[x]).unwrap()).unwrap();
            let exact = w.conjugate(&p).unwrap().matrix(16).unwrap();
            let dense = p.matrix(16).unwrap().conjugate_by(&qft);
            prop_assert!(exact.max_abs_diff(&dense) < 1e-12);
        }
    }
}
