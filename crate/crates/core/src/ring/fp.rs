use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Field;
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p. Only constructible for primes below 2^16 so that
/// products of residues fit comfortably in a `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 16 {
            return Err(Error::NotOddPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    /// Same as [`PrimeField::new`] but additionally rejects p = 2.
    pub fn odd(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let f = Self::new(p)?;
        Ok(f)
    }

    pub fn modulus(&self) -> u64 {
        self.p as u64
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp::from_i64(*self, v)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| Fp { value: v, p: self.p })
    }
}

/// A residue modulo p, always stored reduced into `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value as u64
    }

    pub fn modulus(&self) -> u64 {
        self.p as u64
    }

    /// The residue as a signed integer in `(-p/2, p/2]`.
    pub fn centered(&self) -> i64 {
        let v = self.value as i64;
        let p = self.p as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    #[inline]
    fn check(&self, other: &Fp) {
        assert_eq!(self.p, other.p, "mixing residues of different moduli");
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let s = self.value + rhs.value;
        Fp {
            value: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.p - rhs.value
        };
        Fp { value: v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp {
            value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 { 0 } else { self.p - self.value },
            p: self.p,
        }
    }
}

impl Field for Fp {
    type Desc = PrimeField;

    fn desc(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn zero(desc: PrimeField) -> Fp {
        Fp { value: 0, p: desc.p }
    }

    fn one(desc: PrimeField) -> Fp {
        Fp { value: 1, p: desc.p }
    }

    fn from_i64(desc: PrimeField, n: i64) -> Fp {
        Fp {
            value: n.rem_euclid(desc.p as i64) as u32,
            p: desc.p,
        }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inv(&self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        Some(Field::pow(self, self.p as u64 - 2))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_primes_and_two() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert_eq!(PrimeField::odd(2), Err(Error::CharacteristicTwo));
        assert!(PrimeField::odd(7).is_ok());
    }

    #[test]
    fn residues_are_reduced() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.elem(-1).value(), 4);
        assert_eq!(f.elem(17).value(), 2);
        assert_eq!(f.elem(3).centered(), -2);
    }

    #[test]
    fn two_to_the_p_is_two() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            assert_eq!(f.elem(2).pow(p), f.elem(2));
        }
    }

    proptest! {
        #[test]
        fn field_axioms(p in prop::sample::select(vec![3u64, 5, 7, 13]), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
            let f = PrimeField::new(p).unwrap();
            let (a, b, c) = (f.elem(a), f.elem(b), f.elem(c));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + (-a), Fp::zero(f));
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), Fp::one(f));
            }
        }
    }
}
