//! Exact phases in Q/Z.
//!
//! A [`RationalPhase`] `r = n/d` stands for the unit complex number
//! `exp(2πi·r)`. All topological spins, bicharacter values and Pauli phases in
//! this crate are carried in this form so that the algebraic identities the
//! gates rely on can be checked with `==` rather than a tolerance.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of Q/Z in canonical form: `0 <= num < den`, `gcd(num, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalPhase {
    num: i64,
    den: i64,
}

impl RationalPhase {
    pub const ZERO: RationalPhase = RationalPhase { num: 0, den: 1 };

    /// Builds `num/den mod 1`. Panics if `den == 0`; use [`RationalPhase::try_new`]
    /// for untrusted input.
    pub fn new(num: i64, den: i64) -> Self {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num == 0 {
            den = 1;
        }
        Ok(RationalPhase { num, den })
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `exp(2πi·self)`.
    pub fn to_complex(&self) -> Complex64 {
        // Quarter turns are returned exactly; everything else goes through cis.
        match (self.num, self.den) {
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => Complex64::cis(std::f64::consts::TAU * self.as_f64()),
        }
    }

    /// Multiplicative order of `exp(2πi·self)`, i.e. the reduced denominator.
    pub fn order(&self) -> i64 {
        self.den
    }

    /// Recovers an exact phase from a complex unit, searching denominators up
    /// to `max_den`. Returns `None` if the argument is not within `tol` (in
    /// turns) of any such rational.
    pub fn from_complex(z: Complex64, max_den: i64, tol: f64) -> Option<Self> {
        if z.norm() < 1e-12 {
            return None;
        }
        let turns = (z.arg() / std::f64::consts::TAU).rem_euclid(1.0);
        for den in 1..=max_den {
            let num = (turns * den as f64).round();
            if (turns - num / den as f64).abs() < tol {
                return Some(RationalPhase::new(num as i64, den));
            }
        }
        None
    }
}

impl fmt::Debug for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for RationalPhase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::InvalidRational(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(Error::InvalidRational(format!("{s} (zero denominator)")));
                }
                RationalPhase::try_new(n, d)
            }
            None => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(RationalPhase::new(n, 1))
            }
        }
    }
}

impl Serialize for RationalPhase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalPhase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(n) => Ok(RationalPhase::new(n, 1)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Add for RationalPhase {
    type Output = RationalPhase;

    fn add(self, rhs: RationalPhase) -> RationalPhase {
        let l = self.den.lcm(&rhs.den);
        RationalPhase::new(self.num * (l / self.den) + rhs.num * (l / rhs.den), l)
    }
}

impl AddAssign for RationalPhase {
    fn add_assign(&mut self, rhs: RationalPhase) {
        *self = *self + rhs;
    }
}

impl Neg for RationalPhase {
    type Output = RationalPhase;

    fn neg(self) -> RationalPhase {
        RationalPhase::new(-self.num, self.den)
    }
}

impl Sub for RationalPhase {
    type Output = RationalPhase;

    fn sub(self, rhs: RationalPhase) -> RationalPhase {
        self + (-rhs)
    }
}

impl SubAssign for RationalPhase {
    fn sub_assign(&mut self, rhs: RationalPhase) {
        *self = *self - rhs;
    }
}

/// Integer multiple, `k·r mod 1`.
impl Mul<i64> for RationalPhase {
    type Output = RationalPhase;

    fn mul(self, k: i64) -> RationalPhase {
        RationalPhase::new((self.num * k).rem_euclid(self.den), self.den)
    }
}

impl std::iter::Sum for RationalPhase {
    fn sum<I: Iterator<Item = RationalPhase>>(iter: I) -> Self {
        iter.fold(RationalPhase::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        assert_eq!(RationalPhase::new(6, 8), RationalPhase::new(3, 4));
        assert_eq!(RationalPhase::new(-1, 4), RationalPhase::new(3, 4));
        assert_eq!(RationalPhase::new(5, 4), RationalPhase::new(1, 4));
        assert_eq!(RationalPhase::new(1, -2), RationalPhase::new(1, 2));
        assert_eq!(RationalPhase::new(4, 2), RationalPhase::ZERO);
        assert_eq!(RationalPhase::new(4, 2).denom(), 1);
    }

    #[test]
    fn parse() {
        assert_eq!("1/4".parse::<RationalPhase>().unwrap(), RationalPhase::new(1, 4));
        assert_eq!(" -2 / 3 ".parse::<RationalPhase>().unwrap(), RationalPhase::new(1, 3));
        assert_eq!("0".parse::<RationalPhase>().unwrap(), RationalPhase::ZERO);
        assert!(matches!("1/0".parse::<RationalPhase>(), Err(Error::InvalidRational(_))));
        assert!("x/2".parse::<RationalPhase>().is_err());
    }

    #[test]
    fn quarter_turns_exact() {
        assert_eq!(RationalPhase::new(1, 4).to_complex(), Complex64::new(0.0, 1.0));
        assert_eq!(RationalPhase::new(1, 2).to_complex(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn from_complex_recovers() {
        let r = RationalPhase::new(5, 12);
        assert_eq!(RationalPhase::from_complex(r.to_complex(), 100, 1e-9), Some(r));
        assert_eq!(RationalPhase::from_complex(Complex64::cis(1.0), 50, 1e-12), None);
    }

    proptest! {
        #[test]
        fn unit_modulus_and_exact_addition(a in -1000i64..1000, b in 1i64..60, c in -1000i64..1000, d in 1i64..60) {
            let x = RationalPhase::new(a, b);
            let y = RationalPhase::new(c, d);
            prop_assert!((x.to_complex().norm() - 1.0).abs() < 1e-15);
            let sum = x + y;
            prop_assert_eq!(sum, RationalPhase::new(a * d + c * b, b * d));
            prop_assert!((sum.to_complex() - x.to_complex() * y.to_complex()).norm() < 1e-12);
            prop_assert_eq!(x + (-x), RationalPhase::ZERO);
            prop_assert!(x.numer() >= 0 && x.numer() < x.denom());
        }
    }
}
