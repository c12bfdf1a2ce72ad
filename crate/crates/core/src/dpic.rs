//! The derived Picard group of an Azumaya algebra over an affine base, as
//! (Γ(X, Z) × Pic(X)) ⋊ Aut(X)_[A] with a cocycle slot.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::brauer::{distinctness_chain, domain_certificate, DistinctnessChain};
use crate::error::{Error, Result};
use crate::ring::{Field, ProductRing, Quadratic, QuadraticField, Rational, RingAutomorphism};
use crate::weyl::WeylContext;

/// A locally constant Z-valued function: one integer per component.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConstantSheafSection<F: Field> {
    base: ProductRing<F>,
    values: Vec<i64>,
}

impl<F: Field> ConstantSheafSection<F> {
    pub fn new(base: ProductRing<F>, values: Vec<i64>) -> Result<Self> {
        if values.len() != base.num_components() {
            return Err(Error::InvalidStructure(format!(
                "{} values for {} components",
                values.len(),
                base.num_components()
            )));
        }
        Ok(ConstantSheafSection { base, values })
    }

    pub fn zero(base: ProductRing<F>) -> Self {
        let values = vec![0; base.num_components()];
        ConstantSheafSection { base, values }
    }

    pub fn constant(base: ProductRing<F>, m: i64) -> Self {
        let values = vec![m; base.num_components()];
        ConstantSheafSection { base, values }
    }

    pub fn base(&self) -> &ProductRing<F> {
        &self.base
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check(&self, other: &ProductRing<F>) -> Result<()> {
        if self.base != *other {
            return Err(Error::RingMismatch("sections over different bases".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(&other.base)?;
        Ok(ConstantSheafSection {
            base: self.base.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        ConstantSheafSection {
            base: self.base.clone(),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

impl<F: Field> fmt::Display for ConstantSheafSection<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", vals.join(","))
    }
}

/// A Picard class. Every base handled here has trivial Picard group, so
/// only the trivial class exists.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[non_exhaustive]
pub enum PicClass<F: Field> {
    Trivial(ProductRing<F>),
}

impl<F: Field> PicClass<F> {
    pub fn trivial(base: ProductRing<F>) -> Self {
        PicClass::Trivial(base)
    }

    pub fn base(&self) -> &ProductRing<F> {
        match self {
            PicClass::Trivial(b) => b,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, PicClass::Trivial(_))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.base() != other.base() {
            return Err(Error::RingMismatch("Picard classes over different bases".into()));
        }
        Ok(PicClass::Trivial(self.base().clone()))
    }

    /// φ_*L; the trivial bundle pushes forward to itself.
    pub fn pushforward(&self, phi: &RingAutomorphism<F>) -> Result<Self> {
        if phi.ring() != self.base() {
            return Err(Error::RingMismatch("automorphism of another base".into()));
        }
        Ok(self.clone())
    }
}

/// The 2-cocycle α: Aut × Aut → Pic twisting the composition law.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
#[non_exhaustive]
pub enum Cocycle {
    #[default]
    Trivial,
}

impl Cocycle {
    pub fn value<F: Field>(&self, phi: &RingAutomorphism<F>, _psi: &RingAutomorphism<F>) -> PicClass<F> {
        match self {
            Cocycle::Trivial => PicClass::trivial(phi.ring().clone()),
        }
    }
}

/// (Σ^n L, φ): the tilting complex Σ^n M with M invertible and twisted by φ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DPicElement<F: Field> {
    pub section: ConstantSheafSection<F>,
    pub pic: PicClass<F>,
    pub phi: RingAutomorphism<F>,
    pub cocycle: Cocycle,
}

impl<F: Field> DPicElement<F> {
    pub fn new(section: ConstantSheafSection<F>, pic: PicClass<F>, phi: RingAutomorphism<F>) -> Result<Self> {
        if section.base() != pic.base() || section.base() != phi.ring() {
            return Err(Error::RingMismatch("DPic components over different bases".into()));
        }
        Ok(DPicElement {
            section,
            pic,
            phi,
            cocycle: Cocycle::Trivial,
        })
    }

    pub fn identity(base: ProductRing<F>) -> Self {
        DPicElement {
            section: ConstantSheafSection::zero(base.clone()),
            pic: PicClass::trivial(base.clone()),
            phi: RingAutomorphism::identity(base),
            cocycle: Cocycle::Trivial,
        }
    }

    /// The pure shift (n, O, id).
    pub fn shift(section: ConstantSheafSection<F>) -> Self {
        let base = section.base().clone();
        DPicElement {
            section,
            pic: PicClass::trivial(base.clone()),
            phi: RingAutomorphism::identity(base),
            cocycle: Cocycle::Trivial,
        }
    }

    pub fn base(&self) -> &ProductRing<F> {
        self.section.base()
    }
}

impl<F: Field> fmt::Display for DPicElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, O, perm={:?}", self.section, self.phi.perm())?;
        if !self.phi.is_identity() && self.phi.perm().iter().enumerate().all(|(i, &j)| i == j) {
            write!(f, ", nonpermuting")?;
        }
        write!(f, ")")
    }
}

/// φ·(n, L) = (n ∘ φ⁻¹, φ_*L).
pub fn act<F: Field>(
    phi: &RingAutomorphism<F>,
    n: &ConstantSheafSection<F>,
    l: &PicClass<F>,
) -> Result<(ConstantSheafSection<F>, PicClass<F>)> {
    n.check(phi.ring())?;
    let mut values = vec![0; n.values.len()];
    for (lambda, &target) in phi.perm().iter().enumerate() {
        values[target] = n.values[lambda];
    }
    Ok((
        ConstantSheafSection {
            base: n.base.clone(),
            values,
        },
        l.pushforward(phi)?,
    ))
}

/// (n₁, L₁, φ₁)·(n₂, L₂, φ₂) = (n₁ + φ₁·n₂, L₁ ⊗ φ₁_*L₂ ⊗ α(φ₁, φ₂), φ₁φ₂).
pub fn dpic_compose<F: Field>(g1: &DPicElement<F>, g2: &DPicElement<F>) -> Result<DPicElement<F>> {
    if g1.base() != g2.base() {
        return Err(Error::RingMismatch("DPic elements over different bases".into()));
    }
    if g1.cocycle != g2.cocycle {
        return Err(Error::Precondition("DPic elements with different cocycles".into()));
    }
    let (n2, l2) = act(&g1.phi, &g2.section, &g2.pic)?;
    Ok(DPicElement {
        section: g1.section.add(&n2)?,
        pic: g1.pic.tensor(&l2)?.tensor(&g1.cocycle.value(&g1.phi, &g2.phi))?,
        phi: g1.phi.compose(&g2.phi)?,
        cocycle: g1.cocycle,
    })
}

/// (−φ⁻¹·n, φ⁻¹_*L⁻¹, φ⁻¹) for the trivial cocycle.
pub fn dpic_inverse<F: Field>(g: &DPicElement<F>) -> Result<DPicElement<F>> {
    let inv = g.phi.inverse();
    let (n, l) = act(&inv, &g.section.neg(), &g.pic)?;
    Ok(DPicElement {
        section: n,
        pic: l,
        phi: inv,
        cocycle: g.cocycle,
    })
}

/// Per component λ, e_λ M sits in a single degree with a given rank.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DecomposedGradedModule<F: Field> {
    base: ProductRing<F>,
    parts: Vec<(i64, usize)>,
}

impl<F: Field> DecomposedGradedModule<F> {
    pub fn new(base: ProductRing<F>, parts: Vec<(i64, usize)>) -> Result<Self> {
        if parts.len() != base.num_components() {
            return Err(Error::InvalidStructure("one (degree, rank) per component".into()));
        }
        if parts.iter().any(|&(_, r)| r == 0) {
            return Err(Error::InvalidStructure("ranks must be positive".into()));
        }
        Ok(DecomposedGradedModule { base, parts })
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.parts.iter().map(|&(d, _)| d).collect()
    }

    pub fn parts(&self) -> &[(i64, usize)] {
        &self.parts
    }

    /// φ_*M: the summand over component φ(λ) is the old summand over λ.
    pub fn pushforward(&self, phi: &RingAutomorphism<F>) -> Result<Self> {
        if *phi.ring() != self.base {
            return Err(Error::RingMismatch("automorphism of another base".into()));
        }
        let mut parts = self.parts.clone();
        for (lambda, &target) in phi.perm().iter().enumerate() {
            parts[target] = self.parts[lambda];
        }
        Ok(DecomposedGradedModule {
            base: self.base.clone(),
            parts,
        })
    }

    pub fn random(base: ProductRing<F>, rng: &mut impl Rng, bound: i64) -> Self {
        let parts = (0..base.num_components())
            .map(|_| (rng.gen_range(-bound..=bound), rng.gen_range(1..=4)))
            .collect();
        DecomposedGradedModule { base, parts }
    }
}

/// Σ^n M: since (ΣM)^i = M^{i+1}, component λ moves from degree d to d − n(λ).
pub fn shift<F: Field>(m: &DecomposedGradedModule<F>, n: &ConstantSheafSection<F>) -> Result<DecomposedGradedModule<F>> {
    n.check(&m.base)?;
    Ok(DecomposedGradedModule {
        base: m.base.clone(),
        parts: m.parts.iter().zip(&n.values).map(|(&(d, r), &k)| (d - k, r)).collect(),
    })
}

/// A group given by Z^free_rank × (finite group by multiplication table).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GroupDescription {
    pub free_rank: usize,
    pub labels: Vec<String>,
    /// `table[i][j]` is the index of labels[i]·labels[j].
    pub table: Vec<Vec<usize>>,
}

impl GroupDescription {
    pub fn trivial() -> Self {
        GroupDescription {
            free_rank: 0,
            labels: vec!["1".into()],
            table: vec![vec![0]],
        }
    }

    pub fn free(rank: usize) -> Self {
        GroupDescription {
            free_rank: rank,
            ..Self::trivial()
        }
    }

    pub fn cyclic(m: usize) -> Self {
        GroupDescription {
            free_rank: 0,
            labels: (0..m).map(|k| k.to_string()).collect(),
            table: (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect(),
        }
    }

    /// Builds the table of a finite set of elements closed under `mul`.
    pub fn from_elements<T: PartialEq>(
        labels: Vec<String>,
        elements: &[T],
        mul: impl Fn(&T, &T) -> Result<T>,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in elements {
                let ab = mul(a, b)?;
                let k = elements
                    .iter()
                    .position(|e| *e == ab)
                    .ok_or_else(|| Error::InvalidStructure("elements are not closed under multiplication".into()))?;
                row.push(k);
            }
            table.push(row);
        }
        let g = GroupDescription {
            free_rank: 0,
            labels,
            table,
        };
        g.verify()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.order()).find(|&e| (0..self.order()).all(|x| self.table[e][x] == x && self.table[x][e] == x))
    }

    /// Closure, associativity, identity and inverses.
    pub fn verify(&self) -> Result<()> {
        let m = self.order();
        let bad = |msg: &str| Err(Error::InvalidStructure(msg.into()));
        if m == 0 || self.labels.len() != m || self.table.iter().any(|r| r.len() != m || r.iter().any(|&x| x >= m)) {
            return bad("table is not a closed square table");
        }
        let Some(e) = self.identity() else {
            return bad("no identity element");
        };
        for a in 0..m {
            if !(0..m).any(|b| self.table[a][b] == e && self.table[b][a] == e) {
                return bad("an element has no inverse");
            }
            for b in 0..m {
                for c in 0..m {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return bad("table is not associative");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn element_order(&self, a: usize) -> usize {
        let e = self.identity().expect("verified group");
        let (mut x, mut k) = (a, 1);
        while x != e {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// The subgroup on the elements with `keep[i]`.
    pub fn subgroup(&self, keep: &[bool]) -> Result<Self> {
        let idx: Vec<usize> = (0..self.order()).filter(|&i| keep[i]).collect();
        let pos = |x: usize| idx.iter().position(|&i| i == x);
        let mut table = Vec::new();
        for &a in &idx {
            let row: Option<Vec<usize>> = idx.iter().map(|&b| pos(self.table[a][b])).collect();
            table.push(row.ok_or_else(|| Error::InvalidStructure("subset is not closed".into()))?);
        }
        let g = GroupDescription {
            free_rank: 0,
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            table,
        };
        g.verify()?;
        Ok(g)
    }

    /// "Z", "Z^2 × Z/2", "1", ...; finite parts that are not cyclic are
    /// named by their order.
    pub fn structure(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let m = self.order();
        if m > 1 {
            if (0..m).any(|a| self.element_order(a) == m) {
                parts.push(format!("Z/{m}"));
            } else {
                parts.push(format!("G_{m}"));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" × ")
        }
    }
}

/// DPic of an Azumaya algebra over a local base: Z × Out(A).
pub fn assemble_dpic_local(outer: &GroupDescription) -> Result<GroupDescription> {
    outer.verify()?;
    Ok(GroupDescription {
        free_rank: 1,
        ..outer.clone()
    })
}

/// The torsion subgroup, i.e. the finite part.
pub fn torsion_part(g: &GroupDescription) -> GroupDescription {
    GroupDescription {
        free_rank: 0,
        ..g.clone()
    }
}

/// A field automorphism of Q(√d), determined by the image of √d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticAutomorphism {
    pub sqrt_image: Quadratic,
}

impl QuadraticAutomorphism {
    /// Requires r² = d, which makes a + b√d ↦ a + b·r a ring map.
    pub fn new(k: QuadraticField, r: Quadratic) -> Result<Self> {
        if r.clone() * r.clone() != k.int(k.radicand(), 0) {
            return Err(Error::InvalidAutomorphism(format!("{r} does not square to {}", k.radicand())));
        }
        Ok(QuadraticAutomorphism { sqrt_image: r })
    }

    pub fn apply(&self, x: &Quadratic) -> Quadratic {
        let k = x.field();
        let a = k.elem(x.rational_part().clone(), Rational::int(0));
        let b = k.elem(x.radical_part().clone(), Rational::int(0));
        a + b * self.sqrt_image.clone()
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        QuadraticAutomorphism {
            sqrt_image: self.apply(&other.sqrt_image),
        }
    }
}

/// Aut(Q(√d)): the maps sending √d to a square root of d.
pub fn quadratic_field_automorphisms(k: QuadraticField) -> Result<(Vec<QuadraticAutomorphism>, GroupDescription)> {
    let d = k.int(k.radicand(), 0);
    let r = d.sqrt().ok_or_else(|| Error::Precondition("d has no square root in its own field".into()))?;
    let roots = [r.clone(), -r];
    let maps: Vec<_> = roots
        .iter()
        .map(|r| QuadraticAutomorphism::new(k, r.clone()))
        .collect::<Result<_>>()?;
    let labels = maps
        .iter()
        .map(|m| {
            if m.sqrt_image == k.sqrt_d() {
                "id".to_string()
            } else {
                format!("sqrt({0}) -> {1}", k.radicand(), m.sqrt_image)
            }
        })
        .collect();
    let table = GroupDescription::from_elements(labels, &maps, |a, b| Ok(a.compose(b)))?;
    Ok((maps, table))
}

/// A coset ω(c)·Aut(A^{2n})_[A_n] outside the stabilizer.
#[derive(Clone, Debug, Serialize)]
pub struct CosetWitness {
    pub c: u64,
    pub label: String,
    /// `false` for c = 0: ω(0) is not an automorphism and the record only
    /// asserts [ω(0)_*A_n] ≠ [A_n].
    pub is_automorphism: bool,
    pub chain: DistinctnessChain,
}

pub const DOMAIN_PAIRS: usize = 1000;

/// For c ∈ F_p ∖ {1}: [ω(c)_*A_n] ≠ [A_n], so the elements (m, ω(c)) of
/// DPic(Z_n) are not in the image of DPic(A_n).
pub fn non_surjectivity_witnesses(p: u64, n: usize) -> Result<Vec<CosetWitness>> {
    non_surjectivity_witnesses_with(p, n, DOMAIN_PAIRS, 0)
}

pub fn non_surjectivity_witnesses_with(p: u64, n: usize, pairs: usize, seed: u64) -> Result<Vec<CosetWitness>> {
    WeylContext::new(p, n)?;
    let domain = domain_certificate(p, n, pairs, seed)?;
    (0..p)
        .filter(|&c| c != 1)
        .map(|c| {
            let chain = distinctness_chain(p, n, c as i64, 1, &domain)?;
            if !chain.holds {
                return Err(Error::CertificateFailed(format!("distinctness chain for c = {c}")));
            }
            Ok(CosetWitness {
                c,
                label: format!("(m, omega({c}))·Aut(A^{})_[A_{n}]", 2 * n),
                is_automorphism: c != 0,
                chain,
            })
        })
        .collect()
}

/// A random automorphism of a base whose components are all the same
/// polynomial ring: a component permutation composed with affine maps
/// z ↦ a·z + b on each component.
pub fn random_automorphism<F: Field>(base: &ProductRing<F>, rng: &mut impl Rng) -> Result<RingAutomorphism<F>> {
    let k = base.num_components();
    let comps = base.components();
    if comps.iter().any(|c| *c != comps[0]) {
        return Err(Error::Precondition("components must be isomorphic".into()));
    }
    let mut perm: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let ring = comps[0];
    let desc = ring.zero().constant_term().desc();
    let mut forward = Vec::with_capacity(k);
    let mut inverse_of_target = vec![Vec::new(); k];
    for &target in perm.iter() {
        let mut fwd = Vec::new();
        let mut inv = Vec::new();
        for v in 0..ring.nvars {
            let a = loop {
                let a = F::from_i64(desc, rng.gen_range(1..=4));
                if !a.is_zero() {
                    break a;
                }
            };
            let b = F::from_i64(desc, rng.gen_range(-2..=2));
            let ainv = a.inv().expect("nonzero");
            fwd.push(ring.var(v).scale(&a).add(&ring.constant(b.clone())));
            inv.push(ring.var(v).sub(&ring.constant(b)).scale(&ainv));
        }
        forward.push(fwd);
        inverse_of_target[target] = inv;
    }
    RingAutomorphism::new(base.clone(), perm, forward, inverse_of_target)
}

/// A random element with shifts in [−bound, bound].
pub fn random_dpic_element<F: Field>(base: &ProductRing<F>, rng: &mut impl Rng, bound: i64) -> Result<DPicElement<F>> {
    let values = (0..base.num_components()).map(|_| rng.gen_range(-bound..=bound)).collect();
    DPicElement::new(
        ConstantSheafSection::new(base.clone(), values)?,
        PicClass::trivial(base.clone()),
        random_automorphism(base, rng)?,
    )
}

/// Helper for tests and suites: an n-component base of copies of one ring.
pub fn uniform_base<F: Field>(ring: crate::ring::PolyRing<F>, components: usize) -> Result<ProductRing<F>> {
    ProductRing::new(vec![ring; components])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PolyRing, PrimeField, RationalField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn base(k: usize) -> ProductRing<Rational> {
        uniform_base(PolyRing::<Rational>::new(RationalField, 1), k).unwrap()
    }

    fn sec(b: &ProductRing<Rational>, v: &[i64]) -> ConstantSheafSection<Rational> {
        ConstantSheafSection::new(b.clone(), v.to_vec()).unwrap()
    }

    fn swap(b: &ProductRing<Rational>) -> RingAutomorphism<Rational> {
        RingAutomorphism::permutation(b.clone(), vec![1, 0]).unwrap()
    }

    #[test]
    fn shifts() {
        let b = base(2);
        let m = DecomposedGradedModule::new(b.clone(), vec![(0, 1), (0, 3)]).unwrap();
        assert_eq!(shift(&m, &ConstantSheafSection::zero(b.clone())).unwrap(), m);
        assert_eq!(shift(&m, &sec(&b, &[1, 2])).unwrap().degrees(), vec![-1, -2]);
        let two = shift(&shift(&m, &sec(&b, &[1, 2])).unwrap(), &sec(&b, &[3, -1])).unwrap();
        assert_eq!(two, shift(&m, &sec(&b, &[4, 1])).unwrap());
        assert!(shift(&m, &ConstantSheafSection::zero(base(3))).is_err());
        assert!(DecomposedGradedModule::new(b, vec![(0, 0), (1, 1)]).is_err());
    }

    #[test]
    fn action() {
        let b = base(2);
        let l = PicClass::trivial(b.clone());
        let n = sec(&b, &[0, 1]);
        let (n2, _) = act(&RingAutomorphism::identity(b.clone()), &n, &l).unwrap();
        assert_eq!(n2, n);
        let (n2, l2) = act(&swap(&b), &n, &l).unwrap();
        assert_eq!(n2.values(), &[1, 0]);
        assert!(l2.is_trivial());
        let one = base(1);
        let r = one.components()[0];
        let phi = RingAutomorphism::of_poly_ring(r, vec![r.var(0).scale(&Rational::int(2))], vec![r
            .var(0)
            .scale(&Rational::new(1, 2))])
        .unwrap();
        let n = sec(&one, &[7]);
        assert_eq!(act(&phi, &n, &PicClass::trivial(one.clone())).unwrap().0, n);
    }

    #[test]
    fn composition_examples() {
        let b = base(2);
        let g = DPicElement::new(sec(&b, &[1, 0]), PicClass::trivial(b.clone()), swap(&b)).unwrap();
        let id = DPicElement::identity(b.clone());
        assert_eq!(dpic_compose(&g, &id).unwrap(), g);
        assert_eq!(dpic_compose(&id, &g).unwrap(), g);
        let gg = dpic_compose(&g, &g).unwrap();
        assert_eq!(gg.section.values(), &[1, 1]);
        assert!(gg.phi.is_identity());
        let inv = dpic_inverse(&g).unwrap();
        assert_eq!(inv.section.values(), &[0, -1]);
        assert_eq!(inv.phi.perm(), &[1, 0]);
        assert_eq!(dpic_compose(&g, &inv).unwrap(), id);
        assert_eq!(dpic_compose(&inv, &g).unwrap(), id);
        assert_eq!(dpic_inverse(&id).unwrap(), id);
        let s = DPicElement::shift(sec(&b, &[3, -2]));
        assert_eq!(dpic_inverse(&s).unwrap(), DPicElement::shift(sec(&b, &[-3, 2])));
        assert!(dpic_compose(&g, &DPicElement::identity(base(3))).is_err());
    }

    #[test]
    fn connected_collapse() {
        let f = PrimeField::new(5).unwrap();
        let b = uniform_base(PolyRing::<crate::ring::Fp>::new(f, 2), 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g1 = random_dpic_element(&b, &mut rng, 5).unwrap();
            let g2 = random_dpic_element(&b, &mut rng, 5).unwrap();
            let g = dpic_compose(&g1, &g2).unwrap();
            assert_eq!(g.section.values()[0], g1.section.values()[0] + g2.section.values()[0]);
            assert_eq!(g.phi, g1.phi.compose(&g2.phi).unwrap());
        }
    }

    #[test]
    fn random_group_axioms() {
        let b = base(3);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let id = DPicElement::identity(b.clone());
        for _ in 0..40 {
            let g: Vec<_> = (0..3).map(|_| random_dpic_element(&b, &mut rng, 4).unwrap()).collect();
            let ab_c = dpic_compose(&dpic_compose(&g[0], &g[1]).unwrap(), &g[2]).unwrap();
            let a_bc = dpic_compose(&g[0], &dpic_compose(&g[1], &g[2]).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            let inv = dpic_inverse(&g[0]).unwrap();
            assert_eq!(dpic_compose(&g[0], &inv).unwrap(), id);
            assert_eq!(dpic_compose(&inv, &g[0]).unwrap(), id);
        }
    }

    #[test]
    fn groups() {
        let z2 = GroupDescription::cyclic(2);
        z2.verify().unwrap();
        assert_eq!(z2.structure(), "Z/2");
        let dk = assemble_dpic_local(&z2).unwrap();
        assert_eq!(dk.structure(), "Z × Z/2");
        assert_eq!(torsion_part(&dk), z2);
        assert_eq!(assemble_dpic_local(&GroupDescription::trivial()).unwrap().structure(), "Z");
        assert_eq!(torsion_part(&GroupDescription::free(1)).structure(), "1");
        let klein = GroupDescription::from_elements(
            (0..4).map(|i| i.to_string()).collect(),
            &[0u8, 1, 2, 3],
            |a, b| Ok(a ^ b),
        )
        .unwrap();
        assert_eq!(klein.structure(), "G_4");
        let bad = GroupDescription {
            free_rank: 0,
            labels: vec!["a".into(), "b".into()],
            table: vec![vec![0, 0], vec![0, 1]],
        };
        assert!(bad.verify().is_err());
    }

    #[test]
    fn automorphisms_of_q_sqrt2() {
        let k = QuadraticField::new(2).unwrap();
        let (maps, g) = quadratic_field_automorphisms(k).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.structure(), "Z/2");
        let x = k.int(3, 5);
        assert_eq!(maps[1].apply(&x), k.conjugate(&x));
        assert!(QuadraticAutomorphism::new(k, k.int(1, 0)).is_err());
    }

    #[test]
    fn witnesses() {
        let w = non_surjectivity_witnesses_with(3, 1, 100, 0).unwrap();
        assert_eq!(w.iter().map(|w| w.c).collect::<Vec<_>>(), vec![0, 2]);
        assert!(!w[0].is_automorphism);
        assert_eq!(non_surjectivity_witnesses_with(5, 1, 50, 1).unwrap().len(), 4);
        assert!(non_surjectivity_witnesses(4, 1).is_err());
    }
}
