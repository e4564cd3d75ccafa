//! Graded invariants and semi-invariants of a finite group acting linearly
//! on two variables, truncated at a degree cap, together with the Klein
//! presentation of the cyclic `A_n` invariant ring and the ideal-membership
//! computations built on it.

mod basis;
mod containment;
mod klein;
mod l0;
mod poly;

use thiserror::Error;

use crate::arith::ArithError;
use crate::groups::GroupError;

pub use basis::{
    character_values, check_generation, generated_dimension, invariant_basis, reynolds, reynolds_rank,
    semi_invariant_basis, GenerationReport, GradedSubspaceBasis,
};
pub use containment::{
    ideal_containment, parse_monomial, quotient_membership, render_xyz, ContainmentResult, MonomialOrder,
};
pub use klein::{cyclic_an_generators, klein_presentation, klein_presentation_with, InvariantPresentation, Relation};
pub use l0::{compute_l0, l0_at_cap, L0Report};
pub use poly::{act, action_matrix, monomial_index2, monomials2, total_degree, Exponents, GradedPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("degree {degree}: kernel dimension {kernel} but Reynolds rank {reynolds}")]
    OracleDisagreement { degree: u32, kernel: usize, reynolds: usize },
    #[error("character {index} has degree {dim}; only linear characters have semi-invariant bases here")]
    NonLinearCharacter { index: usize, dim: u32 },
    #[error("character table does not belong to this group")]
    TableMismatch,
    #[error("generators span {found} of {expected} invariant dimensions in degree {degree}")]
    GenerationGap { degree: u32, expected: usize, found: usize },
    #[error("relation {relation} fails at {witness}")]
    RelationFailure { relation: String, witness: String },
    #[error("not a system of parameters: quotient has dimension {quotient_dim} in degree {degree}")]
    NotAnSOP { degree: u32, quotient_dim: usize },
    #[error("no l ≤ {l_max} works up to degree cap {cap}")]
    NotFound { l_max: u32, cap: u32 },
    #[error("l0 changed from {value} at cap {cap} to {raised_value} at cap {raised_cap}")]
    Unstable { cap: u32, value: u32, raised_cap: u32, raised_value: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl InvariantError {
    /// Errors that point at an implementation fault rather than bad input.
    pub fn is_internal(&self) -> bool {
        match self {
            Self::Group(g) => g.is_internal(),
            Self::OracleDisagreement { .. } | Self::RelationFailure { .. } | Self::Unstable { .. } => true,
            _ => false,
        }
    }
}
