//! Exact computations with Weyl algebras in odd characteristic, Azumaya
//! algebras given by structure constants, Brauer classes of the scaled
//! Weyl family and derived Picard groups of affine Azumaya algebras.
//!
//! The crate is organized bottom-up:
//!
//! * [`ring`]: prime fields, Q, real quadratic fields, sparse polynomials,
//!   polynomial matrices with two independent determinant routes.
//! * [`weyl`]: PBW normal forms in A_n(F_p) and coordinates over the center.
//! * [`azalg`]: free algebras by structure constants, tensor products,
//!   opposites, pushforwards, the action map and checked homomorphisms.
//! * [`brauer`]: Brauer classes, isomorphism certificates, quaternions.
//! * [`dpic`]: constant-sheaf sections, shifts and the semidirect product.
//! * [`expr`]: the expression language used for input and templates.
//! * [`report`] and [`suites`]: named verification suites and their reports.

pub mod azalg;
pub mod brauer;
pub mod dpic;
pub mod error;
pub mod expr;
pub mod par;
pub mod report;
pub mod ring;
pub mod suites;
pub mod weyl;

pub use error::{Error, Result};
