//! Finite free algebras over a polynomial ring R = F[z_1, …, z_m], given by
//! structure constants b_i b_j = Σ_k c_ij^k b_k.
//!
//! Tensor products over R are kept lazy: the structure constants of A ⊗_R B
//! are products of those of A and B, computed on demand. Elements are sparse
//! coordinate vectors.

mod hom;

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::ring::{
    det_with_report, BareissBudget, DetReport, Field, Fp, GridEval, MultiPoly, PolyMatrix, PolyRing,
    RingAutomorphism,
};
use crate::weyl::{WeylContext, WeylElement};

pub use hom::{
    check_hom, check_hom_with_generators, certify_surjective, diffop_representation, AlgebraHom, DiffopRep,
    GeneratingSet, HomRoute, HomVerdict, IsoWitness,
};

/// Ranks up to this size get exhaustive checks and materialized tables.
pub const EXHAUSTIVE_RANK: usize = 81;

type Sparse<F> = Vec<(usize, MultiPoly<F>)>;

/// A sparse coordinate vector Σ a_i b_i with a_i ∈ R, no zero entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgElem<F: Field> {
    coords: BTreeMap<usize, MultiPoly<F>>,
}

impl<F: Field> AlgElem<F> {
    pub fn zero() -> Self {
        AlgElem { coords: BTreeMap::new() }
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (usize, MultiPoly<F>)>) -> Self {
        let mut out = Self::zero();
        for (i, c) in coords {
            out.add_coord(i, &c);
        }
        out
    }

    pub fn coords(&self) -> &BTreeMap<usize, MultiPoly<F>> {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> Option<&MultiPoly<F>> {
        self.coords.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coords.len()
    }

    fn add_coord(&mut self, i: usize, c: &MultiPoly<F>) {
        if c.is_zero() {
            return;
        }
        match self.coords.get_mut(&i) {
            Some(v) => {
                v.add_assign(c);
                if v.is_zero() {
                    self.coords.remove(&i);
                }
            }
            None => {
                self.coords.insert(i, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in &other.coords {
            out.add_coord(*i, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        AlgElem {
            coords: self.coords.iter().map(|(i, c)| (*i, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// r · self for r ∈ R.
    pub fn scale(&self, r: &MultiPoly<F>) -> Self {
        let mut out = Self::zero();
        for (i, c) in &self.coords {
            out.add_coord(*i, &c.mul(r));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly<F>) -> MultiPoly<F>) -> Self {
        Self::from_coords(self.coords.iter().map(|(i, c)| (*i, f(c))))
    }
}

impl<F: Field> fmt::Display for AlgElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coords.iter().map(|(i, c)| format!("({c})*b{i}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone)]
enum Structure<F: Field> {
    Table(Arc<Vec<Sparse<F>>>),
    Tensor(Arc<FreeAlgebra<F>>, Arc<FreeAlgebra<F>>),
}

/// A free R-algebra of finite rank with a distinguished basis.
#[derive(Clone)]
pub struct FreeAlgebra<F: Field> {
    ring: PolyRing<F>,
    rank: usize,
    structure: Structure<F>,
    unit: AlgElem<F>,
    label: String,
}

impl<F: Field> fmt::Debug for FreeAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeAlgebra({}, rank {})", self.label, self.rank)
    }
}

/// Outcome of an associativity sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityReport {
    pub triples_checked: u64,
    pub exhaustive: bool,
    pub failure: Option<(usize, usize, usize)>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl<F: Field> FreeAlgebra<F> {
    /// An algebra from an explicit table: `table[i * rank + j]` lists the
    /// nonzero coordinates of b_i b_j.
    pub fn from_table(
        ring: PolyRing<F>,
        rank: usize,
        table: Vec<Sparse<F>>,
        unit: AlgElem<F>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidStructure("rank must be positive".into()));
        }
        if table.len() != rank * rank {
            return Err(Error::InvalidStructure(format!(
                "expected {} products, got {}",
                rank * rank,
                table.len()
            )));
        }
        let mut cleaned = Vec::with_capacity(table.len());
        for entry in table {
            let elem = AlgElem::from_coords(entry);
            if elem.coords.keys().any(|&k| k >= rank) {
                return Err(Error::InvalidStructure("basis index out of range".into()));
            }
            if elem.coords.values().any(|c| c.ring() != ring) {
                return Err(Error::RingMismatch("structure constant over another ring".into()));
            }
            cleaned.push(elem.coords.into_iter().collect());
        }
        if unit.coords.keys().any(|&k| k >= rank) {
            return Err(Error::InvalidStructure("unit index out of range".into()));
        }
        Ok(FreeAlgebra {
            ring,
            rank,
            structure: Structure::Table(Arc::new(cleaned)),
            unit,
            label: label.into(),
        })
    }

    pub fn ring(&self) -> PolyRing<F> {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self.structure, Structure::Tensor(..))
    }

    /// The two factors of a lazy tensor product.
    pub fn factors(&self) -> Option<(&FreeAlgebra<F>, &FreeAlgebra<F>)> {
        match &self.structure {
            Structure::Tensor(a, b) => Some((a, b)),
            Structure::Table(_) => None,
        }
    }

    pub fn unit(&self) -> &AlgElem<F> {
        &self.unit
    }

    pub fn one(&self) -> AlgElem<F> {
        self.unit.clone()
    }

    pub fn basis(&self, i: usize) -> AlgElem<F> {
        assert!(i < self.rank, "basis index out of range");
        AlgElem::from_coords([(i, self.ring.one())])
    }

    /// r · 1.
    pub fn scalar(&self, r: &MultiPoly<F>) -> AlgElem<F> {
        self.unit.scale(r)
    }

    /// Coordinates of b_i b_j.
    pub fn basis_product(&self, i: usize, j: usize) -> Cow<'_, [(usize, MultiPoly<F>)]> {
        match &self.structure {
            Structure::Table(t) => Cow::Borrowed(&t[i * self.rank + j]),
            Structure::Tensor(a, b) => {
                let rb = b.rank;
                let pa = a.basis_product(i / rb, j / rb);
                let pb = b.basis_product(i % rb, j % rb);
                let mut out = Vec::with_capacity(pa.len() * pb.len());
                for (ka, ca) in pa.iter() {
                    for (kb, cb) in pb.iter() {
                        let c = ca.mul(cb);
                        if !c.is_zero() {
                            out.push((ka * rb + kb, c));
                        }
                    }
                }
                Cow::Owned(out)
            }
        }
    }

    pub fn mul(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        let mut acc: BTreeMap<usize, MultiPoly<F>> = BTreeMap::new();
        for (i, ai) in &a.coords {
            for (j, bj) in &b.coords {
                let coeff = ai.mul(bj);
                for (k, c) in self.basis_product(*i, *j).iter() {
                    let term = if coeff.is_one() { c.clone() } else { coeff.mul(c) };
                    match acc.get_mut(k) {
                        Some(v) => v.add_assign(&term),
                        None => {
                            acc.insert(*k, term);
                        }
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        AlgElem { coords: acc }
    }

    pub fn pow(&self, a: &AlgElem<F>, mut m: u64) -> AlgElem<F> {
        let mut base = a.clone();
        let mut acc = self.one();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            m >>= 1;
            if m > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn commutator(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// a ⊗ 1 in a tensor product A ⊗ B.
    pub fn left(&self, a: &AlgElem<F>) -> Result<AlgElem<F>> {
        let (_, b) = self.factors().ok_or_else(|| Error::Precondition("not a tensor product".into()))?;
        Ok(tensor_elements(a, b.unit(), b.rank))
    }

    /// 1 ⊗ b in a tensor product A ⊗ B.
    pub fn right(&self, b: &AlgElem<F>) -> Result<AlgElem<F>> {
        let (a, fb) = self.factors().ok_or_else(|| Error::Precondition("not a tensor product".into()))?;
        Ok(tensor_elements(a.unit(), b, fb.rank))
    }

    /// Checks u·b_j = b_j·u = b_j for every basis element.
    pub fn verify_unit(&self, exec: Execution) -> Result<()> {
        let bad = par::find_first(exec, self.rank, |j| {
            let b = self.basis(j);
            (self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b).then_some(j)
        });
        match bad {
            Some(j) => Err(Error::InvalidStructure(format!("{}: unit law fails at b{j}", self.label))),
            None => Ok(()),
        }
    }

    fn triple_associates(&self, i: usize, j: usize, k: usize) -> bool {
        let (bi, bj, bk) = (self.basis(i), self.basis(j), self.basis(k));
        self.mul(&self.mul(&bi, &bj), &bk) == self.mul(&bi, &self.mul(&bj, &bk))
    }

    /// (b_i b_j) b_k = b_i (b_j b_k) on every triple when `rank ≤ max_exhaustive`,
    /// otherwise on `samples` seeded random triples.
    pub fn verify_associativity(
        &self,
        exec: Execution,
        max_exhaustive: usize,
        samples: usize,
        seed: u64,
    ) -> AssociativityReport {
        let r = self.rank;
        if r <= max_exhaustive {
            let failure = par::find_first(exec, r * r, |ij| {
                let (i, j) = (ij / r, ij % r);
                (0..r).find(|&k| !self.triple_associates(i, j, k)).map(|k| (i, j, k))
            });
            AssociativityReport {
                triples_checked: (r as u64).pow(3),
                exhaustive: true,
                failure,
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let triples: Vec<(usize, usize, usize)> = (0..samples)
                .map(|_| (rng.gen_range(0..r), rng.gen_range(0..r), rng.gen_range(0..r)))
                .collect();
            let failure = par::find_first(exec, triples.len(), |t| {
                let (i, j, k) = triples[t];
                (!self.triple_associates(i, j, k)).then_some((i, j, k))
            });
            AssociativityReport {
                triples_checked: samples as u64,
                exhaustive: false,
                failure,
            }
        }
    }

    /// Identical rank, unit and structure constants in the given bases.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.rank == other.rank
            && self.unit == other.unit
            && (0..self.rank * self.rank).all(|ij| {
                let (i, j) = (ij / self.rank, ij % self.rank);
                AlgElem::from_coords(self.basis_product(i, j).iter().cloned())
                    == AlgElem::from_coords(other.basis_product(i, j).iter().cloned())
            })
    }

    /// An explicit structure-constant table for the same algebra.
    pub fn materialize(&self) -> Self {
        match &self.structure {
            Structure::Table(_) => self.clone(),
            Structure::Tensor(..) => {
                let r = self.rank;
                let table = (0..r * r).map(|ij| self.basis_product(ij / r, ij % r).into_owned()).collect();
                FreeAlgebra {
                    ring: self.ring,
                    rank: r,
                    structure: Structure::Table(Arc::new(table)),
                    unit: self.unit.clone(),
                    label: self.label.clone(),
                }
            }
        }
    }

    fn map_constants(&self, f: &dyn Fn(&MultiPoly<F>) -> MultiPoly<F>, label: String) -> Self {
        let structure = match &self.structure {
            Structure::Table(t) => Structure::Table(Arc::new(
                t.iter()
                    .map(|entry| AlgElem::from_coords(entry.iter().map(|(k, c)| (*k, f(c)))).coords.into_iter().collect())
                    .collect(),
            )),
            Structure::Tensor(a, b) => Structure::Tensor(
                Arc::new(a.map_constants(f, a.label.clone())),
                Arc::new(b.map_constants(f, b.label.clone())),
            ),
        };
        FreeAlgebra {
            ring: self.ring,
            rank: self.rank,
            structure,
            unit: self.unit.map_coeffs(f),
            label,
        }
    }
}

fn tensor_elements<F: Field>(a: &AlgElem<F>, b: &AlgElem<F>, rank_b: usize) -> AlgElem<F> {
    AlgElem::from_coords(
        a.coords
            .iter()
            .flat_map(|(i, ca)| b.coords.iter().map(move |(j, cb)| (i * rank_b + j, ca.mul(cb)))),
    )
}

/// Index of the PBW basis monomial x^e (0 ≤ e_i < p), with e_1 most significant.
pub fn weyl_basis_index(ctx: WeylContext, e: &[u32]) -> usize {
    let p = ctx.p() as usize;
    e.iter().fold(0, |acc, &d| {
        debug_assert!((d as usize) < p);
        acc * p + d as usize
    })
}

/// Inverse of [`weyl_basis_index`].
pub fn weyl_basis_exponents(ctx: WeylContext, mut idx: usize) -> Vec<u32> {
    let p = ctx.p() as usize;
    let mut e = vec![0u32; ctx.num_generators()];
    for slot in e.iter_mut().rev() {
        *slot = (idx % p) as u32;
        idx /= p;
    }
    e
}

/// Coordinates of a Weyl element over the center in the PBW basis.
pub fn weyl_to_alg(ctx: WeylContext, f: &WeylElement) -> AlgElem<Fp> {
    AlgElem::from_coords(
        f.central_coordinates()
            .into_iter()
            .map(|(r, c)| (weyl_basis_index(ctx, &r), c)),
    )
}

/// A_n(F_p) as a free F_p[z_1, …, z_2n]-algebra on {x^e : 0 ≤ e_i < p}.
pub fn weyl_structure_constants(p: u64, n: usize) -> Result<FreeAlgebra<Fp>> {
    let ctx = WeylContext::new(p, n)?;
    let rank = (p as usize).pow(2 * n as u32);
    let field = ctx.field();
    let mono = |i: usize| {
        WeylElement::monomial(
            ctx,
            crate::ring::Monomial::from_slice(&weyl_basis_exponents(ctx, i)),
            Fp::one(field),
        )
    };
    let basis: Vec<WeylElement> = (0..rank).map(mono).collect();
    let table: Vec<Sparse<Fp>> = (0..rank * rank)
        .map(|ij| {
            let prod = basis[ij / rank].multiply(&basis[ij % rank]).expect("same context");
            weyl_to_alg(ctx, &prod).coords.into_iter().collect()
        })
        .collect();
    let ring = ctx.center_ring();
    FreeAlgebra::from_table(
        ring,
        rank,
        table,
        AlgElem::from_coords([(0, ring.one())]),
        format!("A_{n}(F_{p})"),
    )
}

/// M_m(R) with basis E_ab at index a·m + b (0-based).
pub fn matrix_algebra<F: Field>(m: usize, ring: PolyRing<F>) -> Result<FreeAlgebra<F>> {
    if m == 0 {
        return Err(Error::Precondition("matrix size must be positive".into()));
    }
    let table = (0..m * m * m * m)
        .map(|ij| {
            let (i, j) = (ij / (m * m), ij % (m * m));
            let (a, b, c, d) = (i / m, i % m, j / m, j % m);
            if b == c {
                vec![(a * m + d, ring.one())]
            } else {
                vec![]
            }
        })
        .collect();
    let unit = AlgElem::from_coords((0..m).map(|a| (a * m + a, ring.one())));
    FreeAlgebra::from_table(ring, m * m, table, unit, format!("M_{m}"))
}

/// A ⊗_R B with basis b_i ⊗ b'_j at index i·rank(B) + j.
pub fn tensor_over_r<F: Field>(a: &FreeAlgebra<F>, b: &FreeAlgebra<F>) -> Result<FreeAlgebra<F>> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(format!("{} vs {}", a.label, b.label)));
    }
    let unit = tensor_elements(&a.unit, &b.unit, b.rank);
    Ok(FreeAlgebra {
        ring: a.ring,
        rank: a.rank * b.rank,
        structure: Structure::Tensor(Arc::new(a.clone()), Arc::new(b.clone())),
        unit,
        label: format!("({}) ⊗ ({})", a.label, b.label),
    })
}

/// The opposite algebra: c^op_ij^k = c_ji^k.
pub fn opposite<F: Field>(a: &FreeAlgebra<F>) -> FreeAlgebra<F> {
    let label = match a.label.strip_suffix("^op") {
        Some(inner) => inner.to_string(),
        None => format!("{}^op", a.label),
    };
    let structure = match &a.structure {
        Structure::Table(t) => {
            let r = a.rank;
            Structure::Table(Arc::new((0..r * r).map(|ij| t[(ij % r) * r + ij / r].clone()).collect()))
        }
        Structure::Tensor(x, y) => Structure::Tensor(Arc::new(opposite(x)), Arc::new(opposite(y))),
    };
    FreeAlgebra {
        ring: a.ring,
        rank: a.rank,
        structure,
        unit: a.unit.clone(),
        label,
    }
}

/// φ_*A: the R-action is precomposed with φ̄, so every structure constant
/// and unit coordinate c is replaced by φ̄^{-1}(c).
pub fn pushforward<F: Field>(a: &FreeAlgebra<F>, phi: &RingAutomorphism<F>) -> Result<FreeAlgebra<F>> {
    if phi.ring().num_components() != 1 || phi.ring().components()[0] != a.ring {
        return Err(Error::RingMismatch(format!("automorphism does not act on the base of {}", a.label)));
    }
    if phi.is_identity() {
        return Ok(a.clone());
    }
    Ok(a.map_constants(&|c| phi.apply_inverse_poly(c), format!("φ_*({})", a.label)))
}

/// Base change along the evaluation R → F at `point`.
pub fn specialize<F: Field>(a: &FreeAlgebra<F>, point: &[F]) -> Result<FreeAlgebra<F>> {
    if point.len() != a.ring.nvars {
        return Err(Error::Precondition(format!(
            "point has {} coordinates, ring has {} variables",
            point.len(),
            a.ring.nvars
        )));
    }
    let target = PolyRing::new(a.ring.field, 0);
    let f = |c: &MultiPoly<F>| target.constant(c.eval_base(point));
    let mut out = a.map_constants(&f, format!("{}|pt", a.label));
    out.ring = target;
    fn retag<F: Field>(a: &mut FreeAlgebra<F>, ring: PolyRing<F>) {
        a.ring = ring;
        if let Structure::Tensor(x, y) = &mut a.structure {
            retag(Arc::make_mut(x), ring);
            retag(Arc::make_mut(y), ring);
        }
    }
    retag(&mut out, target);
    Ok(out)
}

/// The r²×r² matrix of A ⊗_R A^op → End_R(A), b_i ⊗ b_j ↦ (a ↦ b_i a b_j).
///
/// Column i·r + j holds the image of b_i ⊗ b_j; row g·r + k holds the
/// b_g-coordinate of b_i b_k b_j.
pub fn action_map_matrix<F: Field>(a: &FreeAlgebra<F>, exec: Execution) -> PolyMatrix<F> {
    let r = a.rank;
    let ring = a.ring;
    let columns: Vec<Vec<(usize, MultiPoly<F>)>> = par::map_range(exec, r * r, |ij| {
        let (i, j) = (ij / r, ij % r);
        let bi = a.basis(i);
        let bj = a.basis(j);
        let mut col = Vec::new();
        for k in 0..r {
            let img = a.mul(&a.mul(&bi, &a.basis(k)), &bj);
            for (g, c) in img.coords {
                col.push((g * r + k, c));
            }
        }
        col
    });
    let mut entries = vec![ring.zero(); r * r * r * r];
    for (col_idx, col) in columns.into_iter().enumerate() {
        for (row, c) in col {
            entries[row * r * r + col_idx] = c;
        }
    }
    PolyMatrix::new(ring, r * r, r * r, entries)
}

/// Result of the Azumaya test: the action map determinant and whether it is a unit.
#[derive(Clone, Debug)]
pub struct AzumayaVerdict<F: Field> {
    pub is_azumaya: bool,
    pub determinant: MultiPoly<F>,
    pub report: DetReport<F>,
}

/// A is Azumaya iff det of its action map is a unit of R.
pub fn azumaya_check<F: GridEval>(
    a: &FreeAlgebra<F>,
    budget: &BareissBudget,
    exec: Execution,
) -> Result<AzumayaVerdict<F>> {
    let m = action_map_matrix(a, exec);
    let report = det_with_report(&m, budget, exec)?;
    Ok(AzumayaVerdict {
        is_azumaya: report.value.is_unit(),
        determinant: report.value.clone(),
        report,
    })
}

/// R[u]/(u²) with basis {1, u}; commutative of rank 2, never Azumaya.
pub fn dual_numbers<F: Field>(ring: PolyRing<F>) -> FreeAlgebra<F> {
    let table = vec![
        vec![(0, ring.one())],
        vec![(1, ring.one())],
        vec![(1, ring.one())],
        vec![],
    ];
    FreeAlgebra::from_table(ring, 2, table, AlgElem::from_coords([(0, ring.one())]), "R[u]/(u^2)")
        .expect("valid table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rational, RationalField};

    fn f3(nvars: usize) -> PolyRing<Fp> {
        PolyRing::new(PrimeField::new(3).unwrap(), nvars)
    }

    fn dual_numbers() -> FreeAlgebra<Fp> {
        super::dual_numbers(f3(0))
    }

    fn all_checks<F: Field>(a: &FreeAlgebra<F>) {
        a.verify_unit(Execution::default()).unwrap();
        assert!(a.verify_associativity(Execution::default(), 27, 2000, 0).passed(), "{}", a.label());
    }

    #[test]
    fn weyl_table_examples() {
        let a = weyl_structure_constants(3, 1).unwrap();
        assert_eq!(a.rank(), 9);
        assert_eq!(a.ring().nvars, 2);
        let ctx = WeylContext::new(3, 1).unwrap();
        let z = ctx.center_ring();
        let x2 = weyl_basis_index(ctx, &[0, 1]);
        let x1 = weyl_basis_index(ctx, &[1, 0]);
        let prod = a.mul(&a.basis(x2), &a.basis(x1));
        let expect = AlgElem::from_coords([(weyl_basis_index(ctx, &[1, 1]), z.one()), (0, z.one())]);
        assert_eq!(prod, expect);
        let x1sq = a.basis(weyl_basis_index(ctx, &[2, 0]));
        assert_eq!(a.mul(&x1sq, &x1sq), AlgElem::from_coords([(x1, z.var(0))]));
        all_checks(&a);
        assert!(matches!(weyl_structure_constants(2, 1), Err(Error::CharacteristicTwo)));
    }

    #[test]
    fn weyl_tables_associative() {
        for (p, n) in [(5u64, 1usize), (3, 2)] {
            let a = weyl_structure_constants(p, n).unwrap();
            a.verify_unit(Execution::default()).unwrap();
            assert!(a.verify_associativity(Execution::default(), 25, 3000, 1).passed());
        }
    }

    #[test]
    fn matrix_algebras() {
        let m1 = matrix_algebra(1, f3(2)).unwrap();
        assert_eq!(m1.rank(), 1);
        let m2 = matrix_algebra(2, f3(0)).unwrap();
        // E12 E21 = E11
        assert_eq!(m2.mul(&m2.basis(1), &m2.basis(2)), m2.basis(0));
        assert!(m2.mul(&m2.basis(2), &m2.basis(2)).is_zero());
        let m3 = matrix_algebra(3, f3(2)).unwrap();
        assert_eq!(m3.rank(), 9);
        assert_eq!(m3.one(), m3.basis(0).add(&m3.basis(4)).add(&m3.basis(8)));
        for a in [m1, m2, m3] {
            all_checks(&a);
        }
    }

    #[test]
    fn tensor_with_rank_one_is_identity() {
        let a = weyl_structure_constants(3, 1).unwrap();
        let t = tensor_over_r(&a, &matrix_algebra(1, a.ring()).unwrap()).unwrap();
        assert!(t.same_structure(&a));
    }

    #[test]
    fn tensor_square_of_weyl() {
        let a = weyl_structure_constants(3, 1).unwrap();
        let t = tensor_over_r(&a, &a).unwrap();
        assert_eq!(t.rank(), 81);
        let ctx = WeylContext::new(3, 1).unwrap();
        let x1 = a.basis(weyl_basis_index(ctx, &[1, 0]));
        let (l, r) = (t.left(&x1).unwrap(), t.right(&x1).unwrap());
        assert_eq!(t.mul(&l, &r), t.mul(&r, &l));
        t.verify_unit(Execution::default()).unwrap();
        assert!(t.verify_associativity(Execution::default(), 0, 3000, 2).passed());
        assert!(t.materialize().same_structure(&t));
        assert!(matches!(
            tensor_over_r(&a, &matrix_algebra(2, f3(0)).unwrap()),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn binomial_collapse_in_tensor_square() {
        // u = x1 ⊗ 1 and v = 1 ⊗ x1 commute, so (u ± v)^p = u^p ± v^p.
        for p in [3u64, 5] {
            let a = weyl_structure_constants(p, 1).unwrap();
            let ctx = WeylContext::new(p, 1).unwrap();
            let t = tensor_over_r(&a, &a).unwrap();
            for g in [[1, 0], [0, 1]] {
                let x = a.basis(weyl_basis_index(ctx, &g));
                let (u, v) = (t.left(&x).unwrap(), t.right(&x).unwrap());
                let up = t.pow(&u, p);
                let vp = t.pow(&v, p);
                assert_eq!(t.pow(&u.add(&v), p), up.add(&vp));
                assert_eq!(t.pow(&u.sub(&v), p), up.sub(&vp));
            }
        }
    }

    #[test]
    fn opposites() {
        let a = weyl_structure_constants(3, 1).unwrap();
        let op = opposite(&a);
        assert!(opposite(&op).same_structure(&a));
        assert!(!op.same_structure(&a));
        all_checks(&op);
        let comm = matrix_algebra(1, f3(1)).unwrap();
        assert!(opposite(&comm).same_structure(&comm));
        let t = tensor_over_r(&a, &a).unwrap();
        assert!(opposite(&t).materialize().same_structure(&opposite(&t.materialize())));
    }

    fn omega(p: u64, c: i64) -> RingAutomorphism<Fp> {
        let ctx = WeylContext::new(p, 1).unwrap();
        let z = ctx.center_ring();
        let f = ctx.field();
        let cinv = f.elem(c).inv().unwrap();
        let fwd = vec![z.var(0), z.var(1).scale(&cinv)];
        let inv = vec![z.var(0), z.var(1).scale(&f.elem(c))];
        RingAutomorphism::of_poly_ring(z, fwd, inv).unwrap()
    }

    #[test]
    fn pushforwards() {
        let a = weyl_structure_constants(3, 1).unwrap();
        let id = RingAutomorphism::of_poly_ring(a.ring(), vec![a.ring().var(0), a.ring().var(1)], vec![
            a.ring().var(0),
            a.ring().var(1),
        ])
        .unwrap();
        assert!(pushforward(&a, &id).unwrap().same_structure(&a));
        let w = omega(3, 2);
        let pa = pushforward(&a, &w).unwrap();
        all_checks(&pa);
        // x2 · x2² = z2 in A; in ω(2)_*A the same product is 2·z2, so the
        // element z2·1 of ω(2)_*A is 2·x2³.
        let ctx = WeylContext::new(3, 1).unwrap();
        let x2 = pa.basis(weyl_basis_index(ctx, &[0, 1]));
        let x2sq = pa.basis(weyl_basis_index(ctx, &[0, 2]));
        let z = a.ring();
        assert_eq!(pa.mul(&x2, &x2sq), pa.scalar(&z.var(1).scale(&z.scalar(2))));
        assert_eq!(pa.scalar(&z.var(1)), pa.mul(&x2, &x2sq).scale(&z.int(2)));
        let back = pushforward(&pa, &w.inverse()).unwrap();
        assert!(back.same_structure(&a));
    }

    #[test]
    fn specialization_at_origin() {
        let a = weyl_structure_constants(3, 1).unwrap();
        let f = PrimeField::new(3).unwrap();
        let s = specialize(&a, &[f.elem(0), f.elem(0)]).unwrap();
        assert_eq!(s.ring().nvars, 0);
        all_checks(&s);
        let ctx = WeylContext::new(3, 1).unwrap();
        let x1 = s.basis(weyl_basis_index(ctx, &[1, 0]));
        assert!(s.pow(&x1, 3).is_zero());
    }

    #[test]
    fn action_maps() {
        let exec = Execution::default();
        let budget = BareissBudget::default();
        let r = matrix_algebra(1, f3(2)).unwrap();
        let m = action_map_matrix(&r, exec);
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(m.get(0, 0).is_one());
        for k in [2, 3] {
            let mk = matrix_algebra(k, f3(0)).unwrap();
            let v = azumaya_check(&mk, &budget, exec).unwrap();
            assert!(v.is_azumaya);
            assert!(v.report.strategies_agree());
        }
        let d = dual_numbers();
        all_checks(&d);
        let v = azumaya_check(&d, &budget, exec).unwrap();
        assert!(!v.is_azumaya);
        assert!(v.determinant.is_zero());
    }

    #[test]
    fn tensor_of_azumaya_is_azumaya() {
        let exec = Execution::default();
        let budget = BareissBudget::default();
        let r = f3(0);
        let m2 = matrix_algebra(2, r).unwrap();
        let d = dual_numbers();
        let m2m2 = tensor_over_r(&m2, &m2).unwrap();
        assert!(azumaya_check(&m2m2, &budget, exec).unwrap().is_azumaya);
        let m2d = tensor_over_r(&m2, &d).unwrap();
        assert!(!azumaya_check(&m2d, &budget, exec).unwrap().is_azumaya);
    }

    #[test]
    fn rational_matrix_algebra() {
        let r = PolyRing::<Rational>::new(RationalField, 0);
        let m2 = matrix_algebra(2, r).unwrap();
        all_checks(&m2);
        let v = azumaya_check(&m2, &BareissBudget::default(), Execution::default()).unwrap();
        assert!(v.is_azumaya);
    }
}
