use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{Field, Rational};
use crate::error::{Error, Result};

/// The number field Q(√d) for a squarefree integer d ≠ 0, 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticField {
    d: i64,
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadraticField {
    /// Non-squarefree radicands are rejected rather than normalized.
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        Ok(QuadraticField { d })
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn elem(&self, a: Rational, b: Rational) -> Quadratic {
        Quadratic { a, b, d: self.d }
    }

    pub fn int(&self, a: i64, b: i64) -> Quadratic {
        self.elem(Rational::int(a), Rational::int(b))
    }

    /// √d itself.
    pub fn sqrt_d(&self) -> Quadratic {
        self.int(0, 1)
    }

    /// The nontrivial automorphism √d ↦ −√d.
    pub fn conjugate(&self, x: &Quadratic) -> Quadratic {
        Quadratic {
            a: x.a.clone(),
            b: -x.b.clone(),
            d: self.d,
        }
    }
}

/// a + b·√d with exact rational a, b.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quadratic {
    a: Rational,
    b: Rational,
    d: i64,
}

impl Quadratic {
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> QuadraticField {
        QuadraticField { d: self.d }
    }

    /// Field norm a² − d·b².
    pub fn norm(&self) -> Rational {
        self.a.clone() * self.a.clone() - Rational::int(self.d) * self.b.clone() * self.b.clone()
    }

    /// Exact square root inside Q(√d), if one exists.
    pub fn sqrt(&self) -> Option<Quadratic> {
        let f = self.field();
        if self.b.is_zero() {
            if let Some(r) = self.a.sqrt() {
                return Some(f.elem(r, Rational::int(0)));
            }
            // a = (v√d)² = v²·d
            let v2 = Rational(self.a.0.clone() / BigRational::from_integer(BigInt::from(self.d)));
            return v2.sqrt().map(|v| f.elem(Rational::int(0), v));
        }
        // (u + v√d)² = u² + d v² + 2uv√d; u² solves t² − a t + d b²/4 = 0.
        let disc = self.norm().sqrt()?;
        let two = Rational::int(2);
        for cand in [
            (self.a.clone() + disc.clone()) * two.inv().unwrap(),
            (self.a.clone() - disc.clone()) * two.inv().unwrap(),
        ] {
            if let Some(u) = cand.sqrt() {
                if u.is_zero() {
                    continue;
                }
                let v = self.b.clone() * (two.clone() * u.clone()).inv().unwrap();
                let root = f.elem(u, v);
                if root.clone() * root.clone() == *self {
                    return Some(root);
                }
            }
        }
        None
    }
}

impl Add for Quadratic {
    type Output = Quadratic;
    fn add(self, rhs: Quadratic) -> Quadratic {
        assert_eq!(self.d, rhs.d, "mixing quadratic fields");
        Quadratic {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            d: self.d,
        }
    }
}

impl Sub for Quadratic {
    type Output = Quadratic;
    fn sub(self, rhs: Quadratic) -> Quadratic {
        self + (-rhs)
    }
}

impl Mul for Quadratic {
    type Output = Quadratic;
    fn mul(self, rhs: Quadratic) -> Quadratic {
        assert_eq!(self.d, rhs.d, "mixing quadratic fields");
        let d = Rational::int(self.d);
        Quadratic {
            a: self.a.clone() * rhs.a.clone() + d * self.b.clone() * rhs.b.clone(),
            b: self.a * rhs.b + self.b * rhs.a,
            d: self.d,
        }
    }
}

impl Neg for Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Field for Quadratic {
    type Desc = QuadraticField;

    fn desc(&self) -> QuadraticField {
        QuadraticField { d: self.d }
    }

    fn zero(desc: QuadraticField) -> Self {
        desc.int(0, 0)
    }

    fn one(desc: QuadraticField) -> Self {
        desc.int(1, 0)
    }

    fn from_i64(desc: QuadraticField, n: i64) -> Self {
        desc.int(n, 0)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(Quadratic {
            a: self.a.clone() * n.clone(),
            b: -(self.b.clone() * n),
            d: self.d,
        })
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({})", self.b, self.d),
            (false, false) => write!(f, "({} + {}*sqrt({}))", self.a, self.b, self.d),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// Sign of a + b√d with √d > 0, using only rational comparisons.
fn sign_at(a: &Rational, b: &Rational, d: i64) -> Sign {
    let sa = a.0.signum();
    let sb = b.0.signum();
    let zero = BigRational::zero();
    if sa >= zero && sb >= zero {
        return if a.is_zero() && b.is_zero() { Sign::Zero } else { Sign::Positive };
    }
    if sa <= zero && sb <= zero {
        return Sign::Negative;
    }
    // Opposite signs: compare a² with d·b².
    let a2 = a.0.clone() * a.0.clone();
    let db2 = BigRational::from_integer(BigInt::from(d)) * b.0.clone() * b.0.clone();
    if sa > zero {
        Sign::of(a2.cmp(&db2))
    } else {
        Sign::of(db2.cmp(&a2))
    }
}

/// Signs of `x` under the two real embeddings √d ↦ +√d and √d ↦ −√d.
pub fn real_embedding_signs(x: &Quadratic) -> Result<(Sign, Sign)> {
    if x.d < 0 {
        return Err(Error::Unsupported(format!(
            "Q(sqrt({})) has no real embeddings",
            x.d
        )));
    }
    let neg_b = -x.b.clone();
    Ok((sign_at(&x.a, &x.b, x.d), sign_at(&x.a, &neg_b, x.d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k2() -> QuadraticField {
        QuadraticField::new(2).unwrap()
    }

    #[test]
    fn rejects_non_squarefree() {
        assert_eq!(QuadraticField::new(8), Err(Error::NotSquarefree(8)));
        assert_eq!(QuadraticField::new(4), Err(Error::NotSquarefree(4)));
        assert!(QuadraticField::new(-1).is_ok());
    }

    #[test]
    fn sqrt_d_squared_is_d() {
        let k = k2();
        assert_eq!(k.sqrt_d() * k.sqrt_d(), k.int(2, 0));
    }

    #[test]
    fn embedding_signs() {
        let k = k2();
        use Sign::*;
        assert_eq!(real_embedding_signs(&k.int(1, 0)).unwrap(), (Positive, Positive));
        assert_eq!(real_embedding_signs(&k.int(0, 1)).unwrap(), (Positive, Negative));
        assert_eq!(real_embedding_signs(&k.int(1, -1)).unwrap(), (Negative, Positive));
        assert_eq!(real_embedding_signs(&k.int(0, 0)).unwrap(), (Zero, Zero));
        assert_eq!(real_embedding_signs(&k.int(-1, 0)).unwrap(), (Negative, Negative));
        // 3 − 2√2 = (√2 − 1)² > 0 at both embeddings.
        assert_eq!(real_embedding_signs(&k.int(3, -2)).unwrap(), (Positive, Positive));
        let gauss = QuadraticField::new(-1).unwrap();
        assert!(real_embedding_signs(&gauss.int(1, 1)).is_err());
    }

    #[test]
    fn square_roots() {
        let k = k2();
        assert_eq!(k.int(2, 0).sqrt(), Some(k.int(0, 1)));
        let s = k.int(3, 2).sqrt().unwrap(); // (1 + √2)²
        assert_eq!(s.clone() * s, k.int(3, 2));
        assert_eq!(k.int(-1, 0).sqrt(), None);
        assert_eq!(k.int(3, 0).sqrt(), None);
    }

    proptest! {
        #[test]
        fn field_axioms(a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20) {
            let k = k2();
            let x = k.int(a, b);
            let y = k.int(c, e);
            let z = k.int(b, c);
            prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            if !x.is_zero() {
                prop_assert!((x.clone() * x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn embedding_sign_is_multiplicative(a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20) {
            let k = k2();
            let x = k.int(a, b);
            let y = k.int(c, e);
            let (s1, t1) = real_embedding_signs(&x).unwrap();
            let (s2, t2) = real_embedding_signs(&y).unwrap();
            let (s, t) = real_embedding_signs(&(x * y)).unwrap();
            let mul = |u: Sign, v: Sign| match (u, v) {
                (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
                (u, v) if u == v => Sign::Positive,
                _ => Sign::Negative,
            };
            prop_assert_eq!(s, mul(s1, s2));
            prop_assert_eq!(t, mul(t1, t2));
        }
    }
}
