//! Evaluation domains for the grid determinant.
//!
//! F_p is too small to hold an interpolation grid, so prime-field
//! polynomials are evaluated in an extension F_{p^k}. Extensions are built
//! from a hardcoded primitive polynomial and use Zech logarithms, so both
//! multiplication and addition are table lookups.

use std::fmt::Debug;

use super::{Field, Fp, PrimeField, Quadratic, Rational};
use crate::error::{Error, Result};

/// Largest extension field the grid strategy will build (3^8).
pub const MAX_GRID_FIELD_SIZE: usize = 6561;

/// Field arithmetic through a field object, used by grid evaluation.
pub trait EvalField: Sync + Send {
    type El: Clone + PartialEq + Debug + Send + Sync;
    type Base: Field;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
    fn is_zero(&self, a: &Self::El) -> bool;
    /// `count` pairwise distinct elements.
    fn points(&self, count: usize) -> Vec<Self::El>;
    fn embed(&self, x: &Self::Base) -> Self::El;
    /// Inverse of `embed`, `None` when `x` lies outside the base field.
    fn restrict(&self, x: &Self::El) -> Option<Self::Base>;
    fn size_hint(&self) -> Option<usize>;
}

/// A base field that knows how to provide an evaluation grid of a given size.
pub trait GridEval: Field {
    type Grid: EvalField<Base = Self>;

    fn grid_field(desc: Self::Desc, points_needed: usize) -> Result<Self::Grid>;
}

/// Primitive polynomials over F_p, coefficients low to high, monic.
const PRIMITIVE_POLYS: &[(u32, &[u32])] = &[
    (3, &[1, 1]),
    (3, &[2, 1, 1]),
    (3, &[1, 0, 2, 1]),
    (3, &[2, 0, 0, 1, 1]),
    (3, &[1, 0, 0, 0, 2, 1]),
    (3, &[2, 0, 0, 0, 0, 1, 1]),
    (3, &[1, 0, 0, 0, 0, 1, 2, 1]),
    (3, &[2, 0, 0, 0, 0, 1, 0, 0, 1]),
    (5, &[2, 1]),
    (5, &[2, 1, 1]),
    (5, &[2, 0, 1, 1]),
    (5, &[2, 0, 2, 1, 1]),
    (5, &[2, 0, 0, 0, 3, 1]),
    (7, &[2, 1]),
    (7, &[3, 1, 1]),
    (7, &[2, 1, 1, 1]),
    (7, &[3, 0, 1, 1, 1]),
    (11, &[3, 1]),
    (11, &[2, 4, 1]),
    (11, &[3, 0, 1, 1]),
    (13, &[2, 1]),
    (13, &[2, 1, 1]),
    (13, &[2, 0, 1, 1]),
];

fn primitive_poly(p: u32, k: u32) -> Option<Vec<u32>> {
    if let Some((_, c)) = PRIMITIVE_POLYS
        .iter()
        .find(|(q, c)| *q == p && c.len() == k as usize + 1)
    {
        return Some(c.to_vec());
    }
    if k == 1 {
        // x − g for a primitive root g.
        let f = PrimeField::new(p as u64).ok()?;
        let g = (2..p).find(|&g| multiplicative_order(f.elem(g as i64)) == p as u64 - 1)?;
        return Some(vec![p - g, 1]);
    }
    None
}

fn multiplicative_order(x: Fp) -> u64 {
    let one = Fp::one(x.desc());
    let mut y = x;
    let mut k = 1;
    while y != one {
        y = y * x;
        k += 1;
    }
    k
}

/// Element of an [`ExtField`], stored as a discrete logarithm.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ExtElem(u32);

impl ExtElem {
    const ZERO: ExtElem = ExtElem(u32::MAX);
}

/// F_{p^k} = F_p[t]/(m(t)) with m primitive, in Zech-logarithm form.
#[derive(Clone, Debug)]
pub struct ExtField {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[i]` is t^i encoded as base-p digits (low digit = constant term).
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[i] = log(1 + t^i)`, `u32::MAX` when that sum vanishes.
    zech: Vec<u32>,
}

impl ExtField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let p = field.modulus() as u32;
        let modulus = primitive_poly(p, k).ok_or(Error::NoExtensionField { p: p as u64, k })?;
        let q = (p as u64).pow(k);
        if q as usize > MAX_GRID_FIELD_SIZE && k > 1 {
            return Err(Error::NoExtensionField { p: p as u64, k });
        }
        let q = q as u32;
        let order = q - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        for i in 0..order {
            let enc = encode(&cur, p);
            assert_eq!(log[enc as usize], u32::MAX, "modulus is not primitive");
            exp[i as usize] = enc;
            log[enc as usize] = i;
            cur = times_t(&cur, &modulus, p);
        }
        let mut zech = vec![u32::MAX; order as usize];
        for i in 0..order {
            let enc = exp[i as usize];
            let low = enc % p;
            let bumped = enc - low + (low + 1) % p;
            zech[i as usize] = log[bumped as usize];
        }
        Ok(ExtField {
            p,
            k,
            order,
            modulus,
            exp,
            log,
            zech,
        })
    }

    /// Smallest extension with at least `points` elements.
    pub fn with_at_least(p: u64, points: usize) -> Result<Self> {
        let mut k = 1u32;
        let mut q = p as usize;
        while q < points {
            k += 1;
            q *= p as usize;
            if q > MAX_GRID_FIELD_SIZE {
                let mut max = p as usize;
                while max * (p as usize) <= MAX_GRID_FIELD_SIZE {
                    max *= p as usize;
                }
                return Err(Error::GridTooSmall {
                    p,
                    needed: points,
                    available: max,
                });
            }
        }
        ExtField::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.order as usize + 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The element whose base-p digits are `enc`.
    pub fn from_encoding(&self, enc: u32) -> ExtElem {
        if enc == 0 {
            ExtElem::ZERO
        } else {
            ExtElem(self.log[enc as usize])
        }
    }

    pub fn encoding(&self, x: ExtElem) -> u32 {
        if x == ExtElem::ZERO {
            0
        } else {
            self.exp[x.0 as usize]
        }
    }

    pub fn generator(&self) -> ExtElem {
        ExtElem(1 % self.order)
    }

    #[inline]
    fn add_logs(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.order as u64) as u32
    }
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn times_t(cur: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = cur.len();
    let top = cur[k - 1];
    let mut next = vec![0u32; k];
    for i in (1..k).rev() {
        next[i] = cur[i - 1];
    }
    // t^k = −(m_0 + m_1 t + ... + m_{k−1} t^{k−1})
    for (i, slot) in next.iter_mut().enumerate() {
        let sub = (top as u64 * modulus[i] as u64 % p as u64) as u32;
        *slot = (*slot + p - sub) % p;
    }
    next
}

impl EvalField for ExtField {
    type El = ExtElem;
    type Base = Fp;

    fn zero(&self) -> ExtElem {
        ExtElem::ZERO
    }

    fn one(&self) -> ExtElem {
        ExtElem(0)
    }

    #[inline]
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        if *a == ExtElem::ZERO {
            return *b;
        }
        if *b == ExtElem::ZERO {
            return *a;
        }
        let (lo, hi) = if a.0 <= b.0 { (a.0, b.0) } else { (b.0, a.0) };
        let z = self.zech[(hi - lo) as usize];
        if z == u32::MAX {
            ExtElem::ZERO
        } else {
            ExtElem(self.add_logs(lo, z))
        }
    }

    #[inline]
    fn neg(&self, a: &ExtElem) -> ExtElem {
        if *a == ExtElem::ZERO {
            return *a;
        }
        // −1 = g^{(q−1)/2} for odd q.
        ExtElem(self.add_logs(a.0, self.order / 2))
    }

    #[inline]
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        if *a == ExtElem::ZERO || *b == ExtElem::ZERO {
            return ExtElem::ZERO;
        }
        ExtElem(self.add_logs(a.0, b.0))
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if *a == ExtElem::ZERO {
            return None;
        }
        Some(ExtElem((self.order - a.0) % self.order))
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        *a == ExtElem::ZERO
    }

    fn points(&self, count: usize) -> Vec<ExtElem> {
        assert!(count <= self.size(), "grid larger than the field");
        (0..count as u32).map(|e| self.from_encoding(e)).collect()
    }

    fn embed(&self, x: &Fp) -> ExtElem {
        assert_eq!(x.modulus(), self.p as u64, "characteristic mismatch");
        self.from_encoding(x.value() as u32)
    }

    fn restrict(&self, x: &ExtElem) -> Option<Fp> {
        let enc = self.encoding(*x);
        if enc < self.p {
            Some(PrimeField::new(self.p as u64).ok()?.elem(enc as i64))
        } else {
            None
        }
    }

    fn size_hint(&self) -> Option<usize> {
        Some(self.size())
    }
}

impl GridEval for Fp {
    type Grid = ExtField;

    fn grid_field(desc: PrimeField, points_needed: usize) -> Result<ExtField> {
        ExtField::with_at_least(desc.modulus(), points_needed.max(2))
    }
}

/// Characteristic-zero fields evaluate in themselves at 0, 1, 2, ...
#[derive(Clone, Debug)]
pub struct SelfGrid<F: Field> {
    desc: F::Desc,
}

impl<F: Field> EvalField for SelfGrid<F> {
    type El = F;
    type Base = F;

    fn zero(&self) -> F {
        F::zero(self.desc)
    }
    fn one(&self) -> F {
        F::one(self.desc)
    }
    fn add(&self, a: &F, b: &F) -> F {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &F, b: &F) -> F {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &F, b: &F) -> F {
        a.clone() * b.clone()
    }
    fn neg(&self, a: &F) -> F {
        -a.clone()
    }
    fn inv(&self, a: &F) -> Option<F> {
        a.inv()
    }
    fn is_zero(&self, a: &F) -> bool {
        a.is_zero()
    }
    fn points(&self, count: usize) -> Vec<F> {
        (0..count as i64).map(|i| F::from_i64(self.desc, i)).collect()
    }
    fn embed(&self, x: &F) -> F {
        x.clone()
    }
    fn restrict(&self, x: &F) -> Option<F> {
        Some(x.clone())
    }
    fn size_hint(&self) -> Option<usize> {
        None
    }
}

impl GridEval for Rational {
    type Grid = SelfGrid<Rational>;

    fn grid_field(desc: super::RationalField, _points_needed: usize) -> Result<Self::Grid> {
        Ok(SelfGrid { desc })
    }
}

impl GridEval for Quadratic {
    type Grid = SelfGrid<Quadratic>;

    fn grid_field(desc: super::QuadraticField, _points_needed: usize) -> Result<Self::Grid> {
        Ok(SelfGrid { desc })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force irreducibility: no monic factor of degree ≤ k/2.
    fn is_irreducible(m: &[u32], p: u32) -> bool {
        let k = m.len() - 1;
        for deg in 1..=k / 2 {
            let count = (p as usize).pow(deg as u32);
            for idx in 0..count {
                let mut g = vec![0u32; deg + 1];
                let mut t = idx;
                for c in g.iter_mut().take(deg) {
                    *c = (t % p as usize) as u32;
                    t /= p as usize;
                }
                g[deg] = 1;
                if divides(&g, m, p) {
                    return false;
                }
            }
        }
        true
    }

    fn divides(g: &[u32], f: &[u32], p: u32) -> bool {
        let mut r: Vec<i64> = f.iter().map(|&c| c as i64).collect();
        let dg = g.len() - 1;
        while r.len() > dg {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dg;
            for (i, &c) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] - lead * c as i64).rem_euclid(p as i64);
            }
            r.pop();
        }
        r.iter().all(|&c| c == 0)
    }

    #[test]
    fn hardcoded_polynomials_are_irreducible_and_primitive() {
        for (p, m) in PRIMITIVE_POLYS {
            assert!(is_irreducible(m, *p), "{m:?} reducible mod {p}");
            // Construction asserts that t generates the multiplicative group.
            let k = m.len() as u32 - 1;
            let f = ExtField::new(*p as u64, k).unwrap();
            assert_eq!(f.size(), (*p as usize).pow(k));
        }
    }

    #[test]
    fn arithmetic_matches_polynomial_model() {
        let f = ExtField::new(3, 4).unwrap();
        let n = f.size() as u32;
        // Addition is digitwise mod 3 on encodings.
        for a in (0..n).step_by(7) {
            for b in (0..n).step_by(11) {
                let s = f.add(&f.from_encoding(a), &f.from_encoding(b));
                let mut expect = 0;
                let (mut x, mut y, mut w) = (a, b, 1);
                for _ in 0..4 {
                    expect += ((x % 3 + y % 3) % 3) * w;
                    x /= 3;
                    y /= 3;
                    w *= 3;
                }
                assert_eq!(f.encoding(s), expect);
            }
        }
        let g = f.generator();
        let mut x = f.one();
        for _ in 0..f.size() - 1 {
            x = f.mul(&x, &g);
        }
        assert_eq!(x, f.one());
        for e in 1..n {
            let a = f.from_encoding(e);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        }
    }

    #[test]
    fn embedding_round_trips() {
        let f = ExtField::new(5, 2).unwrap();
        let base = PrimeField::new(5).unwrap();
        for c in base.elements() {
            assert_eq!(f.restrict(&f.embed(&c)), Some(c));
        }
        assert_eq!(f.restrict(&f.generator()), None);
    }

    #[test]
    fn grid_size_limits() {
        assert_eq!(ExtField::with_at_least(3, 700).unwrap().size(), 729);
        assert!(matches!(
            ExtField::with_at_least(3, 7000),
            Err(Error::GridTooSmall { available: 6561, .. })
        ));
        assert!(ExtField::with_at_least(17, 20).is_err());
        assert_eq!(ExtField::with_at_least(17, 10).unwrap().size(), 17);
    }
}
