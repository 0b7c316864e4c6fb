//! Finite abelian groups `Z/m₁ × … × Z/m_s` in invariant-factor form, their
//! elements, and the standard characters.
//!
//! A [`GroupSpec`] may also describe a power `G^n`. In that case the factor
//! list is `n` copies of the base factors laid out block by block, and the
//! block layout is kept so that qudit `i` always owns coordinates
//! `i·s .. (i+1)·s`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::phase::RationalPhase;

/// Default cap on the number of elements any exhaustive routine will list.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Arc<[u32]>,
    /// Factors per block (the `s` of the base group).
    block_len: usize,
    blocks: usize,
}

impl GroupSpec {
    /// Validates `m₁ | m₂ | … | m_s`, all `m_i >= 1`.
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&m| m == 0) {
            return Err(Error::InvalidGroup(format!("factor {bad} must be >= 1")));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "factors must divide each other in order, but {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        let block_len = factors.len();
        Ok(GroupSpec { factors: factors.into(), block_len, blocks: 1 })
    }

    pub fn cyclic(m: u32) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn trivial() -> Self {
        GroupSpec { factors: Arc::from(Vec::new()), block_len: 0, blocks: 1 }
    }

    /// `G^n`, keeping the block layout (no invariant-factor renormalization).
    pub fn power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("power must be >= 1".into()));
        }
        let base = self.base();
        let mut factors = Vec::with_capacity(base.factors.len() * n);
        for _ in 0..n {
            factors.extend_from_slice(&base.factors);
        }
        Ok(GroupSpec { factors: factors.into(), block_len: base.block_len, blocks: n })
    }

    /// The single-block group `G` of which this spec is a power.
    pub fn base(&self) -> GroupSpec {
        if self.blocks <= 1 {
            return self.clone();
        }
        GroupSpec { factors: self.factors[..self.block_len].into(), block_len: self.block_len, blocks: 1 }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// Number of qudit blocks `n`.
    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&m| m as u64).product()
    }

    /// Least common multiple of the factors.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &m| acc.lcm(&(m as u64)))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { spec: self.clone(), coords: vec![0; self.factors.len()] }
    }

    /// Element from coordinates, reduced into `0 <= c_i < m_i`.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), got: coords.len() });
        }
        let coords = coords
            .iter()
            .zip(self.factors.iter())
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u32)
            .collect();
        Ok(GroupElement { spec: self.clone(), coords })
    }

    /// The generator `e_j` of the `j`-th cyclic factor.
    pub fn basis(&self, j: usize) -> GroupElement {
        let mut e = self.zero();
        e.coords[j] = 1 % self.factors[j];
        e
    }

    /// Position of `x` in the lexicographic enumeration.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        debug_assert!(x.spec == *self);
        x.coords
            .iter()
            .zip(self.factors.iter())
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0u32; self.factors.len()];
        for (c, &m) in coords.iter_mut().zip(self.factors.iter()).rev() {
            *c = (index % m as usize) as u32;
            index /= m as usize;
        }
        GroupElement { spec: self.clone(), coords }
    }

    pub fn check_enumerable(&self, bound: u64) -> Result<()> {
        let order = self.order();
        if order > bound {
            return Err(Error::EnumerationTooLarge { order, bound });
        }
        Ok(())
    }

    /// All elements in lexicographic order of coordinates.
    pub fn enumerate(&self, bound: u64) -> Result<Vec<GroupElement>> {
        self.check_enumerable(bound)?;
        Ok((0..self.order() as usize).map(|i| self.element_at(i)).collect())
    }

    /// Concatenates one element of the base group per block.
    pub fn join_blocks(&self, blocks: &[GroupElement]) -> Result<GroupElement> {
        if blocks.len() != self.num_blocks() {
            return Err(Error::DimensionMismatch { expected: self.num_blocks(), got: blocks.len() });
        }
        let base = self.base();
        let mut coords = Vec::with_capacity(self.factors.len());
        for b in blocks {
            base.check_same(&b.spec)?;
            coords.extend_from_slice(&b.coords);
        }
        Ok(GroupElement { spec: self.clone(), coords })
    }

    pub(crate) fn check_same(&self, other: &GroupSpec) -> Result<()> {
        if self != other {
            return Err(Error::SpecMismatch { left: self.to_string(), right: other.to_string() });
        }
        Ok(())
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return match self.blocks {
                1 => write!(f, "1"),
                n => write!(f, "1^{n}"),
            };
        }
        let base: Vec<String> =
            self.factors[..self.block_len].iter().map(|m| format!("Z/{m}")).collect();
        let base = base.join("×");
        match self.blocks {
            1 => write!(f, "{base}"),
            n => write!(f, "({base})^{n}"),
        }
    }
}

/// An element of a [`GroupSpec`] as a reduced coordinate vector.
///
/// Operator impls (`+`, `-`) panic on mismatched specs; use the `checked_*`
/// methods when the operands come from different sources.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    spec: GroupSpec,
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn index(&self) -> usize {
        self.spec.index_of(self)
    }

    pub fn checked_add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.spec.check_same(&other.spec)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.spec.factors.iter())
            .map(|((&a, &b), &m)| ((a as u64 + b as u64) % m as u64) as u32)
            .collect();
        Ok(GroupElement { spec: self.spec.clone(), coords })
    }

    pub fn checked_sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, k: i64) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(self.spec.factors.iter())
            .map(|(&c, &m)| (c as i64 * k).rem_euclid(m as i64) as u32)
            .collect();
        GroupElement { spec: self.spec.clone(), coords }
    }

    /// `Σ_i h_i·x_i / m_i mod 1`, the standard pairing `χ_self(x)`.
    pub fn pair(&self, x: &GroupElement) -> Result<RationalPhase> {
        self.spec.check_same(&x.spec)?;
        let mut acc = RationalPhase::ZERO;
        for ((&h, &c), &m) in self.coords.iter().zip(&x.coords).zip(self.spec.factors.iter()) {
            if h != 0 && c != 0 {
                acc += RationalPhase::new(h as i64 * c as i64, m as i64);
            }
        }
        Ok(acc)
    }

    /// Qudit block `i` (0-based) as an element of the base group.
    pub fn block(&self, i: usize) -> GroupElement {
        let s = self.spec.block_len;
        GroupElement { spec: self.spec.base(), coords: self.coords[i * s..(i + 1) * s].to_vec() }
    }

    pub fn set_block(&mut self, i: usize, value: &GroupElement) {
        let s = self.spec.block_len;
        debug_assert_eq!(value.coords.len(), s);
        self.coords[i * s..(i + 1) * s].copy_from_slice(&value.coords);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.spec.block_len;
        if s == 0 {
            return write!(f, "()");
        }
        let blocks: Vec<String> = self
            .coords
            .chunks(s)
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        write!(f, "{}", blocks.join(""))
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;

    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.checked_add(rhs).expect("adding elements of different groups")
    }
}

impl Add for GroupElement {
    type Output = GroupElement;

    fn add(self, rhs: GroupElement) -> GroupElement {
        &self + &rhs
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;

    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.checked_sub(rhs).expect("subtracting elements of different groups")
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;

    fn sub(self, rhs: GroupElement) -> GroupElement {
        &self - &rhs
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;

    fn neg(self) -> GroupElement {
        self.scale(-1)
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;

    fn neg(self) -> GroupElement {
        self.scale(-1)
    }
}

/// A character `χ_h` of `G^n`, indexed by an element `h` of the same group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterIndex(pub GroupElement);

impl CharacterIndex {
    pub fn eval(&self, x: &GroupElement) -> Result<RationalPhase> {
        self.0.pair(x)
    }

    /// `χ_h · χ_k = χ_{h+k}`.
    pub fn product(&self, other: &CharacterIndex) -> Result<CharacterIndex> {
        Ok(CharacterIndex(self.0.checked_add(&other.0)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn els(spec: &GroupSpec) -> Vec<GroupElement> {
        spec.enumerate(DEFAULT_ENUMERATION_BOUND).unwrap()
    }

    #[test]
    fn add_examples() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let one = z2.element(&[1]).unwrap();
        assert!((&one + &one).is_zero());

        let g = GroupSpec::new(vec![2, 4]).unwrap();
        let a = g.element(&[1, 3]).unwrap();
        let b = g.element(&[1, 2]).unwrap();
        assert_eq!((&a + &b).coords(), &[0, 1]);

        let t = GroupSpec::trivial();
        assert_eq!((&t.zero() + &t.zero()).coords(), &[] as &[u32]);
    }

    #[test]
    fn mismatched_specs_are_rejected() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let z4 = GroupSpec::cyclic(4).unwrap();
        let r = z2.zero().checked_add(&z4.zero());
        assert!(matches!(r, Err(Error::SpecMismatch { .. })));
        assert!(z2.zero().pair(&z4.zero()).is_err());
    }

    #[test]
    fn invariant_factor_form_enforced() {
        assert!(GroupSpec::new(vec![4, 2]).is_err());
        assert!(GroupSpec::new(vec![0]).is_err());
        assert!(GroupSpec::new(vec![1, 1]).is_ok());
        assert!(GroupSpec::new(vec![2, 6, 12]).is_ok());
        assert_eq!(GroupSpec::new(vec![1, 1]).unwrap().order(), 1);
    }

    #[test]
    fn character_examples() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let h = CharacterIndex(z2.element(&[1]).unwrap());
        assert_eq!(h.eval(&z2.element(&[1]).unwrap()).unwrap(), RationalPhase::new(1, 2));
        let z4 = GroupSpec::cyclic(4).unwrap();
        let h = CharacterIndex(z4.element(&[1]).unwrap());
        assert_eq!(h.eval(&z4.element(&[3]).unwrap()).unwrap(), RationalPhase::new(3, 4));
        let g = GroupSpec::new(vec![2, 4]).unwrap();
        let zero = CharacterIndex(g.zero());
        for x in els(&g) {
            assert!(zero.eval(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn enumerate_examples() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let e: Vec<Vec<u32>> = els(&z2).iter().map(|x| x.coords().to_vec()).collect();
        assert_eq!(e, vec![vec![0], vec![1]]);
        let v = GroupSpec::new(vec![2, 2]).unwrap();
        let e: Vec<Vec<u32>> = els(&v).iter().map(|x| x.coords().to_vec()).collect();
        assert_eq!(e, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let t = GroupSpec::trivial();
        assert_eq!(els(&t).len(), 1);
        assert!(els(&t)[0].coords().is_empty());
        let big = GroupSpec::cyclic(5000).unwrap();
        assert!(matches!(big.enumerate(4096), Err(Error::EnumerationTooLarge { .. })));
    }

    #[test]
    fn index_round_trip() {
        let g = GroupSpec::new(vec![2, 4]).unwrap().power(2).unwrap();
        for (i, x) in els(&g).iter().enumerate() {
            assert_eq!(g.index_of(x), i);
        }
    }

    #[test]
    fn power_keeps_blocks() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let p = z2.power(3).unwrap();
        assert_eq!(p.factors(), &[2, 2, 2]);
        assert_eq!(p.num_blocks(), 3);
        assert_eq!(p.block_len(), 1);

        let g = GroupSpec::new(vec![2, 4]).unwrap();
        let p = g.power(2).unwrap();
        assert_eq!(p.factors(), &[2, 4, 2, 4]);
        assert_eq!(p.num_blocks(), 2);
        assert_eq!(p.base(), g);
        assert_eq!(g.power(1).unwrap(), g);

        let x = p.element(&[1, 2, 0, 3]).unwrap();
        assert_eq!(x.block(1).coords(), &[0, 3]);
        assert_eq!(p.join_blocks(&[x.block(0), x.block(1)]).unwrap(), x);
    }

    #[test]
    fn group_axioms_exhaustive() {
        for factors in [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![8], vec![4, 4], vec![2, 2, 2]] {
            let g = GroupSpec::new(factors).unwrap();
            let all = els(&g);
            for x in &all {
                assert!((x + &-x).is_zero());
                for y in &all {
                    for z in &all {
                        assert_eq!(&(x + y) + z, x + &(y + z));
                    }
                }
            }
        }
    }

    #[test]
    fn characters_are_homomorphisms_exhaustive() {
        for factors in [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![8], vec![2, 2, 2], vec![4, 4]] {
            let g = GroupSpec::new(factors).unwrap();
            let all = els(&g);
            for h in &all {
                let chi = CharacterIndex(h.clone());
                for x in &all {
                    for y in &all {
                        assert_eq!(chi.eval(&(x + y)).unwrap(), chi.eval(x).unwrap() + chi.eval(y).unwrap());
                    }
                }
                for k in &all {
                    let prod = chi.product(&CharacterIndex(k.clone())).unwrap();
                    for x in &all {
                        assert_eq!(prod.eval(x).unwrap(), chi.eval(x).unwrap() + k.pair(x).unwrap());
                    }
                }
            }
        }
    }
}
