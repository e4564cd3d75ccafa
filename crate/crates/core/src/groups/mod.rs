//! Finite subgroups of `GL_2` over a truncated DVR or a finite field.

mod character;
mod classes;
mod group;
mod lift;
mod mat;

use thiserror::Error;

use crate::arith::ArithError;

pub use character::{
    character_table, character_table_with, eigen_exponents, tensor_multiplicities, CharacterMethod, CharacterTable,
};
pub use classes::{conjugacy_classes, ConjugacyClasses};
pub use group::{close_group, pseudo_reflections, reduce_group, MatrixGroup, DEFAULT_ORDER_CAP};
pub use lift::{lift_group, CyclotomicMatrixSpec, LaurentEntry};
pub use mat::Mat2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("closure exceeded the order cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("characteristic {p} divides the group order {order}")]
    CharacteristicDividesOrder { p: u64, order: usize },
    #[error("generator {index} is singular")]
    SingularGenerator { index: usize },
    #[error("not a finite group: {reason}")]
    NotAGroup { reason: String },
    #[error("reduction is not injective: elements {first} and {second} collide")]
    InjectivityFailure { first: usize, second: usize },
    #[error("no auxiliary prime ℓ ≡ 1 mod {exponent} with ℓ > {lower} below {bound}")]
    AuxPrimeSearchFailed { exponent: u64, lower: u64, bound: u64 },
    #[error("character computation failed consistency check: {0}")]
    CharacterInconsistency(String),
}

impl GroupError {
    /// Errors that contradict a theorem (as opposed to bad input).
    pub fn is_internal(&self) -> bool {
        matches!(self, Self::InjectivityFailure { .. } | Self::CharacterInconsistency(_))
    }
}
