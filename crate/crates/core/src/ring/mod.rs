//! Exact scalar fields, commutative polynomial rings and polynomial matrices.
//!
//! Every type here is an immutable value; arithmetic never mutates its
//! operands. Fields are described by a small `Copy` descriptor so that a
//! polynomial can always produce its own zero and one.

mod ext;
mod fp;
mod matrix;
mod poly;
mod product;
mod quadratic;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

pub use ext::{EvalField, ExtField, ExtElem, GridEval, SelfGrid, MAX_GRID_FIELD_SIZE};
pub use fp::{is_prime, Fp, PrimeField};
pub use matrix::{
    det_evaluation_grid, det_fraction_free, det_with_report, field_inverse, field_rank, per_variable_degree_bounds, poly_det,
    BareissBudget, DetReport, PolyMatrix, StrategyOutcome,
};
pub use poly::{Monomial, MultiPoly, PolyRing};
pub use product::{component_idempotents, ProductElem, ProductRing, RingAutomorphism};
pub use quadratic::{real_embedding_signs, Quadratic, QuadraticField, Sign};
pub use rational::{Rational, RationalField};

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Runtime description of the field (modulus, radicand, ...).
    type Desc: Copy + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn desc(&self) -> Self::Desc;
    fn zero(desc: Self::Desc) -> Self;
    fn one(desc: Self::Desc) -> Self;
    fn from_i64(desc: Self::Desc, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(self.desc())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.desc());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}
