//! Sparse commutative polynomials in graded-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::{EvalField, Field};
use crate::error::{Error, Result};

/// An exponent vector. Ordered graded-lexicographically: total degree
/// first, then lexicographically with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_slice(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Descriptor of a polynomial ring F[z_1, ..., z_m] (m may be zero).
pub struct PolyRing<F: Field> {
    pub nvars: usize,
    pub field: F::Desc,
}

impl<F: Field> Clone for PolyRing<F> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<F: Field> Copy for PolyRing<F> {}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.field == other.field
    }
}

impl<F: Field> Eq for PolyRing<F> {}

impl<F: Field> std::hash::Hash for PolyRing<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.field.hash(state);
    }
}

impl<F: Field> fmt::Debug for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyRing({:?}, {} vars)", self.field, self.nvars)
    }
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F::Desc, nvars: usize) -> Self {
        PolyRing { nvars, field }
    }

    pub fn zero(&self) -> MultiPoly<F> {
        MultiPoly {
            ring: *self,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> MultiPoly<F> {
        self.constant(F::one(self.field))
    }

    pub fn constant(&self, c: F) -> MultiPoly<F> {
        self.term(c, Monomial::one(self.nvars))
    }

    pub fn int(&self, n: i64) -> MultiPoly<F> {
        self.constant(F::from_i64(self.field, n))
    }

    pub fn var(&self, i: usize) -> MultiPoly<F> {
        assert!(i < self.nvars, "variable index out of range");
        self.term(F::one(self.field), Monomial::var(self.nvars, i, 1))
    }

    pub fn term(&self, c: F, m: Monomial) -> MultiPoly<F> {
        assert_eq!(m.nvars(), self.nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { ring: *self, terms }
    }

    pub fn scalar(&self, n: i64) -> F {
        F::from_i64(self.field, n)
    }
}

/// A sparse polynomial; no zero coefficients are ever stored, so two
/// polynomials are equal iff their term tables are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly<F: Field> {
    ring: PolyRing<F>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn ring(&self) -> PolyRing<F> {
        self.ring
    }

    pub fn from_terms(ring: PolyRing<F>, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut out = ring.zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant coefficient (zero if absent).
    pub fn constant_term(&self) -> F {
        self.terms
            .get(&Monomial::one(self.ring.nvars))
            .cloned()
            .unwrap_or_else(|| F::zero(self.ring.field))
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| F::zero(self.ring.field))
    }

    /// A unit of a polynomial ring over a field is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.ring, other.ring, "polynomials over different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check(other);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_constant() && self.terms.len() == 1 {
            return other.scale(&self.constant_term());
        }
        if other.is_constant() && other.terms.len() == 1 {
            return self.scale(&other.constant_term());
        }
        let mut out = self.ring.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact division; errors when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor);
        let (lm, lc) = divisor.leading_term().ok_or(Error::ZeroInput)?;
        let lc_inv = lc.inv().ok_or(Error::InexactDivision)?;
        if divisor.terms.len() == 1 && lm.is_one() {
            return Ok(self.scale(&lc_inv));
        }
        let mut rem = self.clone();
        let mut quot = self.ring.zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(Error::InexactDivision);
            }
            let qm = lm.div_into(m);
            let qc = c.clone() * lc_inv.clone();
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc.clone() * qc.clone()));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Substitute `images[i]` for the i-th variable. The images may live in
    /// a ring with a different number of variables.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> MultiPoly<F> {
        assert_eq!(images.len(), self.ring.nvars, "one image per variable");
        let target = images
            .first()
            .map(|p| p.ring)
            .unwrap_or(self.ring);
        let mut cache: Vec<Vec<MultiPoly<F>>> = images.iter().map(|p| vec![p.ring.one(), p.clone()]).collect();
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[v];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul(&images[v]);
                    powers.push(next);
                }
                t = t.mul(&powers[e as usize]);
            }
            out.add_assign(&t);
        }
        out
    }

    /// Evaluate at a point of an evaluation field extending F.
    pub fn evaluate<E: EvalField<Base = F>>(&self, field: &E, point: &[E::El]) -> E::El {
        assert_eq!(point.len(), self.ring.nvars);
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.embed(c);
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = field.mul(&t, &point[v]);
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Evaluate using precomputed power tables `powers[v][e] = point_v^e`.
    pub fn evaluate_with_powers<E: EvalField<Base = F>>(&self, field: &E, powers: &[Vec<E::El>]) -> E::El {
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.embed(c);
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = field.mul(&t, &powers[v][e as usize]);
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Evaluate at a point of the base field.
    pub fn eval_base(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.nvars);
        let mut acc = F::zero(self.ring.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                t = t * point[v].pow(e as u64);
            }
            acc = acc + t;
        }
        acc
    }

    /// Map every coefficient through `f` (which must send zero to zero).
    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        MultiPoly::from_terms(self.ring, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Write `self` with variable names `names[i]`; terms in descending order.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mut s = c.to_string();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    s.push_str(&format!("*{}^{}", names[v], e));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.ring.nvars).map(|i| format!("z{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.display_with(&refs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Fp, PrimeField};
    use proptest::prelude::*;

    fn ring() -> PolyRing<Fp> {
        PolyRing::new(PrimeField::new(3).unwrap(), 2)
    }

    fn poly_strategy() -> impl Strategy<Value = MultiPoly<Fp>> {
        prop::collection::vec((0u32..3, 0u32..3, 0i64..3), 0..5).prop_map(|ts| {
            let r = ring();
            MultiPoly::from_terms(
                r,
                ts.into_iter()
                    .map(|(a, b, c)| (Monomial::from_slice(&[a, b]), r.scalar(c))),
            )
        })
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_slice(&[1, 0]);
        let b = Monomial::from_slice(&[0, 1]);
        let c = Monomial::from_slice(&[0, 2]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::from_slice(&[2, 0]) > Monomial::from_slice(&[1, 1]));
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let r = ring();
        let z1 = r.var(0);
        let s = z1.add(&z1).add(&z1);
        assert!(s.is_zero());
        assert_eq!(s, r.zero());
    }

    #[test]
    fn units() {
        let r = ring();
        assert!(r.int(2).is_unit());
        assert!(!r.var(0).is_unit());
        assert!(!r.zero().is_unit());
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let f = r.var(0).add(&r.var(1));
        let g = r.var(0).sub(&r.int(1));
        let h = f.mul(&g);
        assert_eq!(h.exact_div(&g).unwrap(), f);
        assert_eq!(h.add(&r.one()).exact_div(&g), Err(Error::InexactDivision));
    }

    #[test]
    fn substitution() {
        let r = ring();
        // z1 z2 with z1 -> 2 z1, z2 -> z2 + 1
        let f = r.var(0).mul(&r.var(1));
        let g = f.substitute(&[r.var(0).scale(&r.scalar(2)), r.var(1).add(&r.one())]);
        assert_eq!(g, r.var(0).mul(&r.var(1)).add(&r.var(0)).scale(&r.scalar(2)));
    }

    #[test]
    fn display() {
        let r = ring();
        let f = r.var(0).mul(&r.var(1)).add(&r.int(2));
        assert_eq!(f.to_string(), "1*z1^1*z2^1 + 2");
    }

    proptest! {
        #[test]
        fn commutative_ring_laws(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn leading_terms_multiply(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let ab = a.mul(&b);
            let (ma, ca) = a.leading_term().unwrap();
            let (mb, cb) = b.leading_term().unwrap();
            let (m, c) = ab.leading_term().unwrap();
            prop_assert_eq!(m.clone(), ma.mul(mb));
            prop_assert_eq!(*c, *ca * *cb);
        }
    }
}
