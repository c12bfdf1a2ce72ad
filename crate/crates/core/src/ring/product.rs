//! Finite products of polynomial rings and their verified automorphisms.

use super::{Field, MultiPoly, PolyRing};
use crate::error::{Error, Result};

/// R = ∏_λ R_λ with each R_λ a polynomial ring over one field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProductRing<F: Field> {
    components: Vec<PolyRing<F>>,
}

/// An element (r_λ)_λ of a [`ProductRing`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProductElem<F: Field> {
    pub parts: Vec<MultiPoly<F>>,
}

impl<F: Field> ProductRing<F> {
    pub fn new(components: Vec<PolyRing<F>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Precondition("a product ring needs at least one component".into()));
        }
        Ok(ProductRing { components })
    }

    pub fn single(ring: PolyRing<F>) -> Self {
        ProductRing {
            components: vec![ring],
        }
    }

    pub fn components(&self) -> &[PolyRing<F>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn zero(&self) -> ProductElem<F> {
        ProductElem {
            parts: self.components.iter().map(|r| r.zero()).collect(),
        }
    }

    pub fn one(&self) -> ProductElem<F> {
        ProductElem {
            parts: self.components.iter().map(|r| r.one()).collect(),
        }
    }

    pub fn add(&self, a: &ProductElem<F>, b: &ProductElem<F>) -> ProductElem<F> {
        ProductElem {
            parts: a.parts.iter().zip(&b.parts).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn mul(&self, a: &ProductElem<F>, b: &ProductElem<F>) -> ProductElem<F> {
        ProductElem {
            parts: a.parts.iter().zip(&b.parts).map(|(x, y)| x.mul(y)).collect(),
        }
    }

    /// e_λ = (0, …, 1, …, 0).
    pub fn idempotent(&self, lambda: usize) -> ProductElem<F> {
        ProductElem {
            parts: self
                .components
                .iter()
                .enumerate()
                .map(|(i, r)| if i == lambda { r.one() } else { r.zero() })
                .collect(),
        }
    }
}

/// The canonical component idempotents, checked to be orthogonal and to
/// sum to one.
pub fn component_idempotents<F: Field>(ring: &ProductRing<F>) -> Result<Vec<ProductElem<F>>> {
    let es: Vec<_> = (0..ring.num_components()).map(|l| ring.idempotent(l)).collect();
    let mut sum = ring.zero();
    for (i, e) in es.iter().enumerate() {
        if ring.mul(e, e) != *e {
            return Err(Error::CertificateFailed(format!("e_{i} is not idempotent")));
        }
        for (j, f) in es.iter().enumerate().skip(i + 1) {
            if ring.mul(e, f) != ring.zero() {
                return Err(Error::CertificateFailed(format!("e_{i} e_{j} != 0")));
            }
        }
        sum = ring.add(&sum, e);
    }
    if sum != ring.one() {
        return Err(Error::CertificateFailed("idempotents do not sum to 1".into()));
    }
    Ok(es)
}

/// An automorphism φ of X = Spec(R), stored through its ring map φ̄ = φ*.
///
/// `perm[λ]` is the component that φ sends component λ to, and
/// `forward[λ]` lists the coordinates of component `perm[λ]` as polynomials
/// in the variables of component λ. The inverse is stored the same way and
/// both composites are checked to fix every generator at construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingAutomorphism<F: Field> {
    ring: ProductRing<F>,
    perm: Vec<usize>,
    forward: Vec<Vec<MultiPoly<F>>>,
    inv_perm: Vec<usize>,
    inverse: Vec<Vec<MultiPoly<F>>>,
}

impl<F: Field> RingAutomorphism<F> {
    pub fn new(
        ring: ProductRing<F>,
        perm: Vec<usize>,
        forward: Vec<Vec<MultiPoly<F>>>,
        inverse: Vec<Vec<MultiPoly<F>>>,
    ) -> Result<Self> {
        let n = ring.num_components();
        let bad = |msg: String| Err(Error::InvalidAutomorphism(msg));
        if perm.len() != n || forward.len() != n || inverse.len() != n {
            return bad("component count mismatch".into());
        }
        let mut inv_perm = vec![usize::MAX; n];
        for (l, &m) in perm.iter().enumerate() {
            if m >= n || inv_perm[m] != usize::MAX {
                return bad(format!("{perm:?} is not a permutation"));
            }
            inv_perm[m] = l;
        }
        for l in 0..n {
            let src = ring.components[l];
            let dst = ring.components[perm[l]];
            if src != dst {
                return bad(format!("component {l} is not isomorphic to component {}", perm[l]));
            }
            if forward[l].len() != dst.nvars || forward[l].iter().any(|p| p.ring() != src) {
                return bad(format!("forward images on component {l} have the wrong shape"));
            }
            let isrc = ring.components[l];
            let idst = ring.components[inv_perm[l]];
            if inverse[l].len() != idst.nvars || inverse[l].iter().any(|p| p.ring() != isrc) {
                return bad(format!("inverse images on component {l} have the wrong shape"));
            }
        }
        let phi = RingAutomorphism {
            ring,
            perm,
            forward,
            inv_perm,
            inverse,
        };
        for l in 0..n {
            let r = phi.ring.components[l];
            let vars: Vec<_> = (0..r.nvars).map(|v| r.var(v)).collect();
            // (φ⁻¹ ∘ φ)|_λ and (φ ∘ φ⁻¹)|_λ must be the identity map.
            let there_and_back: Vec<_> = phi.inverse[phi.perm[l]]
                .iter()
                .map(|p| p.substitute(&phi.forward[l]))
                .collect();
            let back_and_there: Vec<_> = phi.forward[phi.inv_perm[l]]
                .iter()
                .map(|p| p.substitute(&phi.inverse[l]))
                .collect();
            if there_and_back != vars || back_and_there != vars {
                return bad(format!("claimed inverse does not invert on component {l}"));
            }
        }
        Ok(phi)
    }

    /// Automorphism of a single polynomial ring given by variable images.
    pub fn of_poly_ring(ring: PolyRing<F>, forward: Vec<MultiPoly<F>>, inverse: Vec<MultiPoly<F>>) -> Result<Self> {
        Self::new(ProductRing::single(ring), vec![0], vec![forward], vec![inverse])
    }

    pub fn identity(ring: ProductRing<F>) -> Self {
        let vars: Vec<Vec<_>> = ring
            .components
            .iter()
            .map(|r| (0..r.nvars).map(|v| r.var(v)).collect())
            .collect();
        let perm: Vec<usize> = (0..ring.num_components()).collect();
        RingAutomorphism {
            ring,
            inv_perm: perm.clone(),
            perm,
            forward: vars.clone(),
            inverse: vars,
        }
    }

    /// Pure component permutation; `perm[λ]` is where component λ goes.
    pub fn permutation(ring: ProductRing<F>, perm: Vec<usize>) -> Result<Self> {
        let n = ring.num_components();
        if perm.len() != n {
            return Err(Error::InvalidAutomorphism("permutation length".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (l, &m) in perm.iter().enumerate() {
            if m >= n || inv[m] != usize::MAX {
                return Err(Error::InvalidAutomorphism(format!("{perm:?} is not a permutation")));
            }
            inv[m] = l;
        }
        let vars = |l: usize| -> Vec<MultiPoly<F>> {
            let r = ring.components[l];
            (0..r.nvars).map(|v| r.var(v)).collect()
        };
        let forward = (0..n).map(vars).collect();
        let inverse = (0..n).map(vars).collect();
        Self::new(ring.clone(), perm, forward, inverse)
    }

    pub fn ring(&self) -> &ProductRing<F> {
        &self.ring
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse_perm(&self) -> &[usize] {
        &self.inv_perm
    }

    pub fn forward_images(&self, component: usize) -> &[MultiPoly<F>] {
        &self.forward[component]
    }

    pub fn inverse_images(&self, component: usize) -> &[MultiPoly<F>] {
        &self.inverse[component]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ring.clone())
    }

    pub fn inverse(&self) -> Self {
        RingAutomorphism {
            ring: self.ring.clone(),
            perm: self.inv_perm.clone(),
            forward: self.inverse.clone(),
            inv_perm: self.perm.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// Scheme composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("composing automorphisms of different rings".into()));
        }
        let n = self.ring.num_components();
        let perm: Vec<usize> = (0..n).map(|l| self.perm[other.perm[l]]).collect();
        // (φψ)|_λ = φ|_{ψ(λ)} ∘ ψ|_λ
        let forward = (0..n)
            .map(|l| {
                self.forward[other.perm[l]]
                    .iter()
                    .map(|p| p.substitute(&other.forward[l]))
                    .collect()
            })
            .collect();
        let oinv = other.inverse();
        let sinv = self.inverse();
        let inverse = (0..n)
            .map(|l| {
                oinv.forward[sinv.perm[l]]
                    .iter()
                    .map(|p| p.substitute(&sinv.forward[l]))
                    .collect()
            })
            .collect();
        Self::new(self.ring.clone(), perm, forward, inverse)
    }

    /// The ring map φ̄ = φ*: (φ̄ r)_λ = r_{φ(λ)} ∘ φ|_λ.
    pub fn apply(&self, r: &ProductElem<F>) -> ProductElem<F> {
        ProductElem {
            parts: (0..self.ring.num_components())
                .map(|l| r.parts[self.perm[l]].substitute(&self.forward[l]))
                .collect(),
        }
    }

    /// φ̄⁻¹ applied to `r`.
    pub fn apply_inverse(&self, r: &ProductElem<F>) -> ProductElem<F> {
        self.inverse().apply(r)
    }

    /// φ̄ on a polynomial of a single-component ring.
    pub fn apply_poly(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        assert_eq!(self.ring.num_components(), 1);
        p.substitute(&self.forward[0])
    }

    /// φ̄⁻¹ on a polynomial of a single-component ring.
    pub fn apply_inverse_poly(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        assert_eq!(self.ring.num_components(), 1);
        p.substitute(&self.inverse[0])
    }
}
