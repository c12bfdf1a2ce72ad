//! The Weyl algebra A_n(F_p) = F_p⟨x_1,…,x_2n⟩ / ([x_i,x_j] − δ_{i,j+n} + δ_{i+n,j})
//! in PBW normal form.
//!
//! Generators are indexed from 1 as in the usual presentation; internally
//! exponent vectors are 0-based. The only non-commuting pairs are
//! (x_l, x_{l+n}), with x_{l+n} x_l = x_l x_{l+n} + 1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::{Field, Fp, Monomial, MultiPoly, PolyRing, PrimeField};

/// Characteristic and rank of a Weyl algebra. p is an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WeylContext {
    field: PrimeField,
    n: usize,
}

impl WeylContext {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        let field = PrimeField::odd(p)?;
        if n == 0 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        Ok(WeylContext { field, n })
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        2 * self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// F_p[z_1, …, z_2n], the center with z_i = x_i^p.
    pub fn center_ring(&self) -> PolyRing<Fp> {
        PolyRing::new(self.field, 2 * self.n)
    }

    /// ε_i = 1 iff i ≤ n (1-based).
    pub fn epsilon(&self, i: usize) -> u64 {
        u64::from(i <= self.n)
    }

    /// ω_i = 1 iff i > n (1-based).
    pub fn omega(&self, i: usize) -> u64 {
        u64::from(i > self.n)
    }

    /// [x_i, x_j] = δ_{i,j+n} − δ_{i+n,j} as an integer (1-based).
    pub fn bracket(&self, i: usize, j: usize) -> i64 {
        i64::from(i == j + self.n) - i64::from(i + self.n == j)
    }
}

/// An element of A_n(F_p) in PBW normal form: a combination of ordered
/// monomials x_1^{e_1}···x_2n^{e_2n} with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    ctx: WeylContext,
    terms: BTreeMap<Monomial, Fp>,
}

fn binomial_mod(mut a: u64, mut k: u64, p: u64) -> u64 {
    // Lucas' theorem
    let mut acc = 1u64;
    while a > 0 || k > 0 {
        let (ad, kd) = (a % p, k % p);
        if kd > ad {
            return 0;
        }
        let mut c = 1u64;
        for t in 0..kd {
            c = c * ((ad - t) % p) % p;
        }
        let mut d = 1u64;
        for t in 1..=kd {
            d = d * (t % p) % p;
        }
        // d is invertible since kd < p
        c = c * pow_mod(d, p - 2, p) % p;
        acc = acc * c % p;
        a /= p;
        k /= p;
    }
    acc
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// x_{l+n}^a x_l^b = Σ_k C(a,k)·b(b−1)…(b−k+1) · x_l^{b−k} x_{l+n}^{a−k}.
fn swap_powers(a: u32, b: u32, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    let mut falling = 1u64;
    for k in 0..=a.min(b) {
        if k > 0 {
            falling = falling * ((b as u64 - (k as u64 - 1)) % p) % p;
        }
        if falling == 0 {
            break;
        }
        let c = binomial_mod(a as u64, k as u64, p) * falling % p;
        if c != 0 {
            out.push((k, c));
        }
    }
    out
}

impl WeylElement {
    pub fn zero(ctx: WeylContext) -> Self {
        WeylElement {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ctx: WeylContext, c: Fp) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(Monomial::one(ctx.num_generators()), c);
        out
    }

    pub fn one(ctx: WeylContext) -> Self {
        Self::scalar(ctx, Fp::one(ctx.field))
    }

    pub fn int(ctx: WeylContext, n: i64) -> Self {
        Self::scalar(ctx, ctx.field.elem(n))
    }

    /// The generator x_i, 1-based.
    pub fn generator(ctx: WeylContext, i: usize) -> Result<Self> {
        if i == 0 || i > ctx.num_generators() {
            return Err(Error::Precondition(format!(
                "generator x{i} out of range 1..={}",
                ctx.num_generators()
            )));
        }
        Ok(Self::monomial(ctx, Monomial::var(ctx.num_generators(), i - 1, 1), Fp::one(ctx.field)))
    }

    pub fn monomial(ctx: WeylContext, m: Monomial, c: Fp) -> Self {
        assert_eq!(m.nvars(), ctx.num_generators());
        let mut out = Self::zero(ctx);
        out.add_term(m, c);
        out
    }

    pub fn context(&self) -> WeylContext {
        self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Fp)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Fp {
        self.terms.get(m).copied().unwrap_or(Fp::zero(self.ctx.field))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Fp)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u64> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    fn add_term(&mut self, m: Monomial, c: Fp) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let v = *o.get() + c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!(
                "A_{}(F_{}) vs A_{}(F_{})",
                self.ctx.n,
                self.ctx.p(),
                other.ctx.n,
                other.ctx.p()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        WeylElement {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -*c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fp) -> Self {
        let mut out = Self::zero(self.ctx);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), *a * c);
        }
        out
    }

    /// PBW normal form of the product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let ctx = self.ctx;
        let n = ctx.n;
        let p = ctx.p();
        let mut memo: HashMap<(u32, u32), Vec<(u32, u64)>> = HashMap::new();
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (e, ce) in &self.terms {
            for (f, cf) in &other.terms {
                // Each pair (l, l+n) contributes independently.
                let mut partial: Vec<(SmallVec<[u32; 4]>, u64)> =
                    vec![(SmallVec::from_elem(0, 2 * n), (ce.value() * cf.value()) % p)];
                for l in 0..n {
                    let (a, b) = (e.0[l + n], f.0[l]);
                    let swaps = memo.entry((a, b)).or_insert_with(|| swap_powers(a, b, p));
                    let mut next = Vec::with_capacity(partial.len() * swaps.len());
                    for (exps, c) in &partial {
                        for &(k, s) in swaps.iter() {
                            let mut ex = exps.clone();
                            ex[l] = e.0[l] + b - k;
                            ex[l + n] = a - k + f.0[l + n];
                            next.push((ex, c * s % p));
                        }
                    }
                    partial = next;
                }
                for (ex, c) in partial {
                    let slot = acc.entry(Monomial(ex)).or_insert(0);
                    *slot = (*slot + c) % p;
                }
            }
        }
        let mut out = Self::zero(ctx);
        for (m, c) in acc {
            if c != 0 {
                out.terms.insert(m, ctx.field.elem(c as i64));
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    pub fn power(&self, mut m: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx);
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.multiply(&base).expect("same context");
            }
            m >>= 1;
            if m > 0 {
                base = base.multiply(&base).expect("same context");
            }
        }
        acc
    }

    /// Central iff it commutes with every generator.
    pub fn is_central(&self) -> bool {
        (1..=self.ctx.num_generators()).all(|i| {
            let x = Self::generator(self.ctx, i).expect("in range");
            self.commutator(&x).expect("same context").is_zero()
        })
    }

    /// Coordinates over the center in the basis {x^r : 0 ≤ r_i < p}:
    /// x^{pq + r} ↦ z^q at slot r.
    pub fn central_coordinates(&self) -> BTreeMap<Vec<u32>, MultiPoly<Fp>> {
        let p = self.ctx.p() as u32;
        let ring = self.ctx.center_ring();
        let mut out: BTreeMap<Vec<u32>, MultiPoly<Fp>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let r: Vec<u32> = m.0.iter().map(|e| e % p).collect();
            let q: Vec<u32> = m.0.iter().map(|e| e / p).collect();
            out.entry(r)
                .or_insert_with(|| ring.zero())
                .add_term(Monomial::from_slice(&q), *c);
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Inverse of [`WeylElement::central_coordinates`].
    pub fn from_central_coordinates(ctx: WeylContext, coords: &BTreeMap<Vec<u32>, MultiPoly<Fp>>) -> Self {
        let p = ctx.p() as u32;
        let mut out = Self::zero(ctx);
        for (r, poly) in coords {
            for (q, c) in poly.terms() {
                let e: SmallVec<[u32; 4]> = r.iter().zip(q.exps()).map(|(r, q)| p * q + r).collect();
                out.add_term(Monomial(e), *c);
            }
        }
        out
    }

    /// Canonical text: terms in descending graded-lex order, each printed as
    /// `c*x1^a1*...*x2n^a2n` with zero exponents omitted.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut s = c.to_string();
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        s.push_str(&format!("*x{}^{}", i + 1, e));
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }

    /// A random nonzero element with up to `max_terms` terms of degree ≤ `max_degree`.
    pub fn random<R: Rng + ?Sized>(ctx: WeylContext, rng: &mut R, max_degree: u32, max_terms: usize) -> Self {
        let mut out = Self::zero(ctx);
        let terms = rng.gen_range(1..=max_terms.max(1));
        for _ in 0..terms {
            let mut budget = rng.gen_range(0..=max_degree);
            let mut e: SmallVec<[u32; 4]> = SmallVec::from_elem(0, ctx.num_generators());
            for _ in 0..ctx.num_generators() {
                let slot = rng.gen_range(0..ctx.num_generators());
                let take = rng.gen_range(0..=budget);
                e[slot] += take;
                budget -= take;
            }
            let c = ctx.field.elem(rng.gen_range(1..ctx.p() as i64));
            out.add_term(Monomial(e), c);
        }
        if out.is_zero() {
            return Self::random(ctx, rng, max_degree, max_terms);
        }
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

/// Checks LT(fg) = LT(f)·LT(g) in graded-lex order: the associated graded
/// ring is commutative, so the leading monomials add and the leading
/// coefficients multiply. Any failure is an arithmetic bug.
pub fn leading_term_certificate(f: &WeylElement, g: &WeylElement) -> Result<bool> {
    let (mf, cf) = f.leading_term().ok_or(Error::ZeroInput)?;
    let (mg, cg) = g.leading_term().ok_or(Error::ZeroInput)?;
    let fg = f.multiply(g)?;
    Ok(match fg.leading_term() {
        Some((m, c)) => *m == mf.mul(mg) && *c == *cf * *cg,
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, n: usize) -> WeylContext {
        WeylContext::new(p, n).unwrap()
    }

    fn x(c: WeylContext, i: usize) -> WeylElement {
        WeylElement::generator(c, i).unwrap()
    }

    /// Independent oracle: expand into words of the free algebra and bubble
    /// sort each word with x_j x_i → x_i x_j − [x_i, x_j] for i < j.
    fn naive_product(c: WeylContext, factors: &[&WeylElement]) -> WeylElement {
        let p = c.p() as i64;
        let mut words: Vec<(Vec<usize>, i64)> = vec![(vec![], 1)];
        for f in factors {
            let mut next = Vec::new();
            for (w, a) in &words {
                for (m, coeff) in f.terms() {
                    let mut w2 = w.clone();
                    for (i, &e) in m.exps().iter().enumerate() {
                        w2.extend(std::iter::repeat(i + 1).take(e as usize));
                    }
                    next.push((w2, a * coeff.value() as i64 % p));
                }
            }
            words = next;
        }
        let mut out = WeylElement::zero(c);
        while let Some((w, a)) = words.pop() {
            if a % p == 0 {
                continue;
            }
            match (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
                None => {
                    let mut e = vec![0u32; c.num_generators()];
                    for g in w {
                        e[g - 1] += 1;
                    }
                    out = out
                        .add(&WeylElement::monomial(c, Monomial::from_slice(&e), c.field().elem(a)))
                        .unwrap();
                }
                Some(k) => {
                    let (j, i) = (w[k], w[k + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(k, k + 1);
                    words.push((swapped, a));
                    // x_j x_i = x_i x_j + [x_j, x_i]
                    let br = c.bracket(j, i);
                    if br != 0 {
                        let mut shorter = w[..k].to_vec();
                        shorter.extend_from_slice(&w[k + 2..]);
                        words.push((shorter, a * br));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn rejects_characteristic_two() {
        assert_eq!(WeylContext::new(2, 1), Err(Error::CharacteristicTwo));
        assert!(WeylContext::new(9, 1).is_err());
        assert!(WeylContext::new(3, 0).is_err());
    }

    #[test]
    fn basic_products() {
        let c = ctx(3, 1);
        let (x1, x2) = (x(c, 1), x(c, 2));
        // x2 x1 = x1 x2 + 1
        let expect = x1.multiply(&x2).unwrap().add(&WeylElement::one(c)).unwrap();
        assert_eq!(x2.multiply(&x1).unwrap(), expect);
        assert_eq!(x1.multiply(&x1).unwrap(), x1.power(2));
        assert_eq!(x1.multiply(&x1).unwrap().to_canonical_string(), "1*x1^2");
        // x2² x1 = x1 x2² + 2 x2
        let lhs = x2.power(2).multiply(&x1).unwrap();
        assert_eq!(lhs.to_canonical_string(), "1*x1^1*x2^2 + 2*x2^1");
        assert_eq!(lhs, naive_product(c, &[&x2, &x2, &x1]));
    }

    #[test]
    fn commutators() {
        let c = ctx(3, 1);
        assert!(x(c, 1).commutator(&x(c, 1)).unwrap().is_zero());
        assert_eq!(x(c, 1).commutator(&x(c, 2)).unwrap(), WeylElement::int(c, -1));
        let c2 = ctx(3, 2);
        assert!(x(c2, 1).commutator(&x(c2, 4)).unwrap().is_zero());
        assert_eq!(x(c2, 2).commutator(&x(c2, 4)).unwrap(), WeylElement::int(c2, -1));
        assert_eq!(x(c2, 4).commutator(&x(c2, 2)).unwrap(), WeylElement::int(c2, 1));
    }

    #[test]
    fn context_mismatch() {
        let a = x(ctx(3, 1), 1);
        let b = x(ctx(5, 1), 1);
        assert!(matches!(a.multiply(&b), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn powers() {
        let c = ctx(3, 1);
        assert_eq!(x(c, 1).power(0), WeylElement::one(c));
        assert_eq!(x(c, 1).power(3).to_canonical_string(), "1*x1^3");
        let s = x(c, 1).add(&x(c, 2)).unwrap();
        let cube = s.power(3);
        assert_eq!(cube, naive_product(c, &[&s, &s, &s]));
        // Frozen from the oracle above.
        assert_eq!(cube.to_canonical_string(), "1*x1^3 + 1*x2^3");
    }

    #[test]
    fn centrality() {
        for (p, n) in [(3u64, 1usize), (5, 1), (3, 2)] {
            let c = ctx(p, n);
            for i in 1..=2 * n {
                assert!(x(c, i).power(p).is_central(), "x{i}^{p}");
                assert!(!x(c, i).is_central());
            }
        }
        assert!(WeylElement::one(ctx(3, 1)).is_central());
    }

    #[test]
    fn central_coordinate_examples() {
        let c = ctx(3, 1);
        let z = c.center_ring();
        let coords = x(c, 1).power(5).central_coordinates();
        assert_eq!(coords.len(), 1);
        assert_eq!(coords[&vec![2, 0]], z.var(0));
        let coords = WeylElement::one(c).central_coordinates();
        assert_eq!(coords[&vec![0, 0]], z.one());
        let f = x(c, 1).power(3).multiply(&x(c, 2).power(3)).unwrap();
        let coords = f.central_coordinates();
        assert_eq!(coords.len(), 1);
        assert_eq!(coords[&vec![0, 0]], z.var(0).mul(&z.var(1)));
    }

    #[test]
    fn leading_term_examples() {
        let c = ctx(3, 1);
        assert!(leading_term_certificate(&x(c, 1), &x(c, 2)).unwrap());
        assert!(leading_term_certificate(&x(c, 2), &x(c, 1)).unwrap());
        assert_eq!(
            leading_term_certificate(&WeylElement::zero(c), &x(c, 1)),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn binomial_collapse_of_commuting_elements() {
        // x1 and x2^p commute, so (x1 + x2^p)^p = x1^p + x2^{p²}.
        let c = ctx(3, 1);
        let u = x(c, 1);
        let v = x(c, 2).power(3);
        let lhs = u.add(&v).unwrap().power(3);
        assert_eq!(lhs, u.power(3).add(&v.power(3)).unwrap());
    }

    #[test]
    fn matches_naive_rewriting_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, n) in [(3u64, 1usize), (5, 1), (3, 2)] {
            let c = ctx(p, n);
            for _ in 0..40 {
                let f = WeylElement::random(c, &mut rng, 4, 3);
                let g = WeylElement::random(c, &mut rng, 4, 3);
                assert_eq!(f.multiply(&g).unwrap(), naive_product(c, &[&f, &g]));
            }
        }
    }

    fn element(p: u64, n: usize) -> impl Strategy<Value = WeylElement> {
        any::<u64>().prop_map(move |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            WeylElement::random(ctx(p, n), &mut rng, 3, 3)
        })
    }

    proptest! {
        #[test]
        fn associativity(f in element(3, 1), g in element(3, 1), h in element(3, 1)) {
            let left = f.multiply(&g).unwrap().multiply(&h).unwrap();
            let right = f.multiply(&g.multiply(&h).unwrap()).unwrap();
            prop_assert_eq!(left.to_canonical_string(), right.to_canonical_string());
        }

        #[test]
        fn associativity_two_pairs(f in element(3, 2), g in element(3, 2), h in element(3, 2)) {
            let left = f.multiply(&g).unwrap().multiply(&h).unwrap();
            let right = f.multiply(&g.multiply(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn distributivity(f in element(5, 1), g in element(5, 1), h in element(5, 1)) {
            let left = f.multiply(&g.add(&h).unwrap()).unwrap();
            let right = f.multiply(&g).unwrap().add(&f.multiply(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn central_coordinates_round_trip(f in element(3, 2)) {
            let coords = f.central_coordinates();
            prop_assert_eq!(WeylElement::from_central_coordinates(f.context(), &coords), f);
        }

        #[test]
        fn domain_certificate(f in element(5, 1), g in element(5, 1)) {
            prop_assert!(leading_term_certificate(&f, &g).unwrap());
        }
    }
}
