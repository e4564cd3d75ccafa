//! Fixtures shared by the benchmarks.

use mixquiver::arith::minimal_extension_degree;
use mixquiver::{lift_group, reduce_group, CyclotomicMatrixSpec, DvrRing, FqField, MatrixGroup};

/// `V_N` over the smallest extension of `F_p` holding `exponent`-th roots of unity.
pub fn ring_for(p: u64, exponent: u64, precision: u32) -> DvrRing {
    let m = minimal_extension_degree(p, exponent, 32).expect("roots of unity exist in some extension");
    DvrRing::new(p, m, precision).expect("valid ring parameters")
}

pub fn lifted(spec: &CyclotomicMatrixSpec, p: u64, precision: u32) -> MatrixGroup<DvrRing> {
    lift_group(spec, &ring_for(p, spec.order_hint, precision), 512).expect("lift succeeds")
}

pub fn reduced(spec: &CyclotomicMatrixSpec, p: u64) -> MatrixGroup<FqField> {
    reduce_group(&lifted(spec, p, 4)).expect("reduction is injective")
}
