//! Finite subgroups of `GL_2` over a truncated unramified DVR and the
//! combinatorics attached to them: character tables, McKay graphs, graded
//! invariant and semi-invariant rings of the action on two variables, and
//! the Koszul fixed-point sequences whose middle terms realize the McKay
//! arrows.
//!
//! Everything is exact. Scalars live in `F_{p^m}`, in `Z/p^N[t]/(h)`, or in
//! `Z[ζ_e]` for character values; there is no floating point anywhere.

pub mod arith;
pub mod arseq;
pub mod groups;
pub mod invariants;
pub mod linalg;
pub mod mckay;

pub use arith::{
    hensel_lift_root, make_field, primitive_root_of_unity, reduce_scalar, ArithError, CycloInt, Cyclotomic, DvrRing,
    DvrScalar, Field, FqField, FqScalar, PrimeField, ScalarRing,
};
pub use arseq::{ArSeqError, KoszulStrand, MiddleTerm, TauMap};
pub use groups::{
    character_table, close_group, conjugacy_classes, lift_group, pseudo_reflections, reduce_group,
    tensor_multiplicities, CharacterTable, ConjugacyClasses, CyclotomicMatrixSpec, GroupError, LaurentEntry, Mat2,
    MatrixGroup,
};
pub use invariants::{GradedPoly, GradedSubspaceBasis, InvariantError, InvariantPresentation, L0Report};
pub use mckay::{export_dot, mckay_graph, quiver_equals_mckay, McKayError, McKayGraph, McKayJson, QuiverComparison};
