//! Exact scalar arithmetic.
//!
//! Three families of scalars are used across the crate:
//!
//! * [`FqField`] / [`FqScalar`]: the finite field `F_{p^m}` presented as
//!   `F_p[t]/(h)` for a deterministically chosen irreducible `h`.
//! * [`DvrRing`] / [`DvrScalar`]: the Galois ring `Z/p^N[t]/(h)`, a truncation
//!   of the unramified extension of the p-adic integers whose residue field is
//!   the paired `FqField`.
//! * [`PrimeField`]: a bare `Z/ℓ` with `u64` elements, used where no
//!   extension is needed (auxiliary primes, ideal membership over `F_p`).
//!
//! All of them implement [`ScalarRing`]; fields additionally implement the
//! [`Field`] marker so linear algebra can be written once.

mod cyclotomic;
mod galois;
mod prime_field;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use cyclotomic::{CycloInt, Cyclotomic};
pub use galois::{
    hensel_lift_root, make_field, primitive_root_of_unity, reduce_scalar, DvrRing, DvrScalar, FqField, FqScalar,
    ScalarJson,
};
pub use prime_field::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),
    #[error("no primitive {n}-th root of unity: {n} does not divide {unit_count}")]
    NoSuchRoot { n: u64, unit_count: u64 },
    #[error("order {n} is divisible by the characteristic {p}")]
    BadOrder { n: u64, p: u64 },
    #[error("element is not an {n}-th root of unity in the residue field")]
    NotARoot { n: u64 },
    #[error("invalid ring parameters: {0}")]
    InvalidParameters(String),
}

/// A commutative ring with identity whose elements are plain values and whose
/// operations go through the ring context.
pub trait ScalarRing: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    /// Characteristic of the residue field.
    fn residue_characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse of a unit, `None` otherwise.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Human-readable rendering used in reports and witnesses.
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inv(a).is_some()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Marker for rings in which every nonzero element is invertible.
pub trait Field: ScalarRing {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Smallest `m ≥ 1` with `exponent | p^m - 1`, if one exists below `max_m`.
pub fn minimal_extension_degree(p: u64, exponent: u64, max_m: usize) -> Option<usize> {
    if exponent == 0 || p.is_multiple_of(exponent) && exponent != 1 {
        return None;
    }
    let mut pm = 1u64;
    for m in 1..=max_m {
        pm = (pm as u128 * p as u128 % exponent as u128) as u64;
        if pm % exponent == 1 % exponent {
            return Some(m);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_number_theory() {
        assert!(is_prime(2) && is_prime(7) && is_prime(13));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(91));
        assert_eq!(prime_factors(48), vec![2, 3]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(lcm(4, 6), 12);
    }

    #[test]
    fn extension_degree_selection() {
        assert_eq!(minimal_extension_degree(7, 4, 10), Some(2));
        assert_eq!(minimal_extension_degree(5, 4, 10), Some(1));
        assert_eq!(minimal_extension_degree(7, 3, 10), Some(1));
        assert_eq!(minimal_extension_degree(5, 1, 10), Some(1));
        assert_eq!(minimal_extension_degree(5, 10, 10), None);
    }
}
