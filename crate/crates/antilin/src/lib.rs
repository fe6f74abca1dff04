//! Numerical calculus of conjugate-linear (antilinear) operators on
//! finite-dimensional complex Hilbert spaces: composition algebra, the
//! canonical Hermitian pairing, block normal forms, polar and involution
//! decompositions, conjugation curves with an integer winding invariant,
//! copositive transformations, modular triples of bipartite vectors, and
//! the EPR / teleportation calculus of antilinear s- and j-maps.
//!
//! Conventions, fixed once for the whole crate:
//! - inner products are linear in the second argument;
//! - a conjugate-linear operator is stored as the matrix M of the map
//!   v -> M conj(v) in the standard basis;
//! - composition x after y is written compose(x, y): y acts first.

pub mod batch;
pub mod core;
pub mod decomp;
pub mod epr_teleport;
pub mod equivalence;
pub mod error;
pub mod json;
mod linalg;
pub mod modular;
pub mod symplectic;

pub use crate::core::{
    adjoint, apply_anti, canonical_form, compose, compose_anti_anti, compose_anti_lin,
    compose_lin_anti, compose_lin_lin, eigen_structure, field_of_values_radius, hermitian_split,
    is_normal, operator_norm, pauli_basis, rank_one_anti, AntiOp, Cplx, EigenStructure, HVector,
    LinOp, Op, PauliBasis, DEFAULT_TOL,
};
pub use crate::error::{Error, Result};
