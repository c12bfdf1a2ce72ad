//! R-linear maps between free algebras, given by basis images, and their
//! verification as algebra homomorphisms and isomorphisms.

use serde::Serialize;

use super::{
    matrix_algebra, specialize, weyl_basis_exponents, weyl_structure_constants, AlgElem, FreeAlgebra, EXHAUSTIVE_RANK,
};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::ring::{
    det_with_report, field_inverse, field_rank, BareissBudget, Field, Fp, GridEval, MultiPoly, PolyMatrix, PolyRing,
    PrimeField,
};
use crate::weyl::WeylContext;

/// An R-linear map A → B given by the images of the basis of A.
#[derive(Clone, Debug)]
pub struct AlgebraHom<F: Field> {
    source: FreeAlgebra<F>,
    target: FreeAlgebra<F>,
    images: Vec<AlgElem<F>>,
}

impl<F: Field> AlgebraHom<F> {
    pub fn new(source: FreeAlgebra<F>, target: FreeAlgebra<F>, images: Vec<AlgElem<F>>) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", source.label(), target.label())));
        }
        if images.len() != source.rank() {
            return Err(Error::InvalidStructure(format!(
                "{} basis images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        if images.iter().any(|img| img.coords().keys().any(|&k| k >= target.rank())) {
            return Err(Error::InvalidStructure("image outside the target basis".into()));
        }
        Ok(AlgebraHom { source, target, images })
    }

    pub fn source(&self) -> &FreeAlgebra<F> {
        &self.source
    }

    pub fn target(&self) -> &FreeAlgebra<F> {
        &self.target
    }

    pub fn images(&self) -> &[AlgElem<F>] {
        &self.images
    }

    pub fn apply(&self, a: &AlgElem<F>) -> AlgElem<F> {
        let mut out = AlgElem::zero();
        for (i, c) in a.coords() {
            out = out.add(&self.images[*i].scale(c));
        }
        out
    }

    /// Row i holds the coordinates of h(b_i).
    pub fn coordinate_matrix(&self) -> PolyMatrix<F> {
        let ring = self.source.ring();
        PolyMatrix::from_fn(ring, self.source.rank(), self.target.rank(), |i, j| {
            self.images[i].coord(j).cloned().unwrap_or_else(|| ring.zero())
        })
    }

    fn respects_product(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> bool {
        let lhs = self.target.mul(&self.apply(a), &self.apply(b));
        lhs == self.apply(&self.source.mul(a, b))
    }
}

/// Generators of an algebra together with a completeness certificate: every
/// basis element b_k is the product of the generators listed in `words[k]`.
#[derive(Clone, Debug)]
pub struct GeneratingSet<F: Field> {
    pub generators: Vec<AlgElem<F>>,
    pub words: Vec<Vec<usize>>,
}

impl<F: Field> GeneratingSet<F> {
    pub fn word_product(&self, alg: &FreeAlgebra<F>, word: &[usize]) -> AlgElem<F> {
        word.iter().fold(alg.one(), |acc, &g| alg.mul(&acc, &self.generators[g]))
    }

    /// Checks that the words reproduce the basis exactly.
    pub fn verify(&self, alg: &FreeAlgebra<F>, exec: Execution) -> Result<()> {
        if self.words.len() != alg.rank() {
            return Err(Error::CertificateFailed(format!(
                "{} words for rank {}",
                self.words.len(),
                alg.rank()
            )));
        }
        if self.words.iter().flatten().any(|&g| g >= self.generators.len()) {
            return Err(Error::CertificateFailed("word uses an unknown generator".into()));
        }
        let bad = par::find_first(exec, alg.rank(), |k| {
            (self.word_product(alg, &self.words[k]) != alg.basis(k)).then_some(k)
        });
        match bad {
            Some(k) => Err(Error::CertificateFailed(format!("word for b{k} does not reproduce it"))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum HomRoute {
    /// h(b_i)h(b_j) = h(b_i b_j) on every basis pair.
    AllPairs { pairs: u64 },
    /// h(g b_k) = h(g)h(b_k) for declared generators g, backed by a
    /// completeness certificate for the generators.
    Generators { generators: usize, products: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoWitness<F: Field> {
    /// The coordinate matrix has a unit determinant.
    UnitDeterminant {
        value: MultiPoly<F>,
        strategies: Vec<&'static str>,
    },
    /// Every generator of the target has a checked preimage; a surjective
    /// R-linear map between free modules of equal rank is bijective.
    Surjective { target_generators: usize },
}

#[derive(Clone, Debug)]
pub struct HomVerdict<F: Field> {
    pub is_hom: bool,
    /// `None` when not a homomorphism, or when no invertibility witness
    /// was computed at this size.
    pub is_iso: Option<bool>,
    pub route: HomRoute,
    pub failure: Option<String>,
    pub witness: Option<IsoWitness<F>>,
}

fn iso_by_determinant<F: GridEval>(h: &AlgebraHom<F>, exec: Execution) -> Result<(Option<bool>, Option<IsoWitness<F>>)> {
    if h.source.rank() != h.target.rank() {
        return Ok((Some(false), None));
    }
    if h.source.rank() > EXHAUSTIVE_RANK {
        return Ok((None, None));
    }
    let report = det_with_report(&h.coordinate_matrix(), &BareissBudget::default(), exec)?;
    let unit = report.value.is_unit();
    let witness = unit.then(|| IsoWitness::UnitDeterminant {
        value: report.value.clone(),
        strategies: report.strategies_run(),
    });
    Ok((Some(unit), witness))
}

fn unit_check<F: Field>(h: &AlgebraHom<F>) -> Option<String> {
    (h.apply(h.source.unit()) != *h.target.unit()).then(|| "h(1) ≠ 1".to_string())
}

/// Multiplicativity on every basis pair and unit preservation; invertibility
/// via the determinant of the coordinate matrix when the rank allows it.
pub fn check_hom<F: GridEval>(h: &AlgebraHom<F>, exec: Execution) -> Result<HomVerdict<F>> {
    let r = h.source.rank();
    let route = HomRoute::AllPairs { pairs: (r * r) as u64 };
    let mut failure = unit_check(h);
    if failure.is_none() {
        failure = par::find_first(exec, r * r, |ij| {
            let (i, j) = (ij / r, ij % r);
            (!h.respects_product(&h.source.basis(i), &h.source.basis(j)))
                .then(|| format!("h(b{i})h(b{j}) ≠ h(b{i}b{j})"))
        });
    }
    finish(h, route, failure, exec)
}

/// Multiplicativity via a generating set: with g·b_k checked for every
/// generator g and basis element b_k, induction along the certified words
/// gives h(b_k b_j) = h(b_k)h(b_j) for all pairs.
pub fn check_hom_with_generators<F: GridEval>(
    h: &AlgebraHom<F>,
    gens: &GeneratingSet<F>,
    exec: Execution,
) -> Result<HomVerdict<F>> {
    gens.verify(&h.source, exec)?;
    let r = h.source.rank();
    let ng = gens.generators.len();
    let route = HomRoute::Generators {
        generators: ng,
        products: (ng * r) as u64,
    };
    let mut failure = unit_check(h);
    if failure.is_none() {
        failure = par::find_first(exec, ng * r, |gk| {
            let (g, k) = (gk / r, gk % r);
            (!h.respects_product(&gens.generators[g], &h.source.basis(k)))
                .then(|| format!("h(g{g}·b{k}) ≠ h(g{g})h(b{k})"))
        });
    }
    finish(h, route, failure, exec)
}

fn finish<F: GridEval>(
    h: &AlgebraHom<F>,
    route: HomRoute,
    failure: Option<String>,
    exec: Execution,
) -> Result<HomVerdict<F>> {
    let is_hom = failure.is_none();
    let (is_iso, witness) = if is_hom { iso_by_determinant(h, exec)? } else { (None, None) };
    Ok(HomVerdict {
        is_hom,
        is_iso,
        route,
        failure,
        witness,
    })
}

/// Checks that each target generator is hit by its claimed preimage and
/// that the generators are complete for the target. Together with
/// multiplicativity and equal ranks this proves bijectivity.
pub fn certify_surjective<F: Field>(
    h: &AlgebraHom<F>,
    target_gens: &GeneratingSet<F>,
    preimages: &[AlgElem<F>],
    exec: Execution,
) -> Result<IsoWitness<F>> {
    target_gens.verify(&h.target, exec)?;
    if preimages.len() != target_gens.generators.len() {
        return Err(Error::CertificateFailed("one preimage per generator required".into()));
    }
    if h.source.rank() != h.target.rank() {
        return Err(Error::CertificateFailed("ranks differ".into()));
    }
    for (g, (pre, gen)) in preimages.iter().zip(&target_gens.generators).enumerate() {
        if h.apply(pre) != *gen {
            return Err(Error::CertificateFailed(format!("preimage of target generator {g} is wrong")));
        }
    }
    Ok(IsoWitness::Surjective {
        target_generators: target_gens.generators.len(),
    })
}

/// The truncated Weyl algebra A_1(F_p) ⊗ F_p[z]/(z) acting on F_p[t]/(t^p):
/// x_1 ↦ multiplication by t, x_2 ↦ d/dt.
#[derive(Clone, Debug)]
pub struct DiffopRep {
    pub hom: AlgebraHom<Fp>,
    pub verdict: HomVerdict<Fp>,
    pub image_rank: usize,
    pub surjective: bool,
    pub injective: bool,
    /// Multiplication by t as an element of M_p(F_p).
    pub mult_t: AlgElem<Fp>,
    /// d/dt as an element of M_p(F_p).
    pub d_dt: AlgElem<Fp>,
}

impl DiffopRep {
    pub fn p(&self) -> u64 {
        self.hom.target.ring().field.modulus()
    }

    /// λ[E][k]: E = Σ_k λ[E][k]·h(b_k), where E runs over the matrix units
    /// E_ab (index a·p + b) and b_k over the monomials x_1^u x_2^v.
    pub fn matrix_unit_preimages(&self) -> Result<Vec<Vec<Fp>>> {
        let n = self.hom.source.rank();
        let m = self.hom.coordinate_matrix();
        let dense: Vec<Vec<Fp>> = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j).constant_term()).collect())
            .collect();
        field_inverse(&dense).ok_or_else(|| Error::NotInvertible("differential operator representation".into()))
    }
}

pub fn diffop_representation(p: u64) -> Result<DiffopRep> {
    let field = PrimeField::odd(p)?;
    let ctx = WeylContext::new(p, 1)?;
    let weyl = weyl_structure_constants(p, 1)?;
    let zero = field.elem(0);
    let source = specialize(&weyl, &[zero, zero])?.with_label(format!("A_1(F_{p})|z=0"));
    let ring = PolyRing::<Fp>::new(field, 0);
    let target = matrix_algebra(p as usize, ring)?;
    let ps = p as usize;
    let mult_t = AlgElem::from_coords((0..ps - 1).map(|j| ((j + 1) * ps + j, ring.one())));
    let d_dt = AlgElem::from_coords((1..ps).map(|j| ((j - 1) * ps + j, ring.int(j as i64))));
    let images = (0..source.rank())
        .map(|k| {
            let e = weyl_basis_exponents(ctx, k);
            target.mul(&target.pow(&mult_t, e[0] as u64), &target.pow(&d_dt, e[1] as u64))
        })
        .collect();
    let hom = AlgebraHom::new(source, target, images)?;
    let verdict = check_hom(&hom, Execution::default())?;
    let m = hom.coordinate_matrix();
    let dense: Vec<Vec<Fp>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).constant_term()).collect())
        .collect();
    let image_rank = field_rank(&dense);
    Ok(DiffopRep {
        surjective: image_rank == hom.target.rank(),
        injective: image_rank == hom.source.rank(),
        image_rank,
        verdict,
        hom,
        mult_t,
        d_dt,
    })
}
