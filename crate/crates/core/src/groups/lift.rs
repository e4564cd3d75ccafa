use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{close_group, GroupError, Mat2, MatrixGroup};
use crate::arith::{hensel_lift_root, primitive_root_of_unity, ArithError, DvrRing, FqField, PrimeField, ScalarRing};

/// `Σ c_k z^k` with integer coefficients; keys are exponents, possibly negative.
pub type LaurentEntry = BTreeMap<i64, i64>;

/// Generators with entries in `Z[z, z^-1]`, where `z` stands for a primitive
/// `order_hint`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicMatrixSpec {
    pub order_hint: u64,
    pub generators: Vec<[[LaurentEntry; 2]; 2]>,
}

impl CyclotomicMatrixSpec {
    /// `diag(z, z^-1)` with `z` of order `n + 1`: the cyclic `A_n` group.
    pub fn cyclic_an(n: u64) -> Self {
        let z = |k: i64| LaurentEntry::from([(k, 1)]);
        Self { order_hint: n + 1, generators: vec![[[z(1), LaurentEntry::new()], [LaurentEntry::new(), z(-1)]]] }
    }

    /// The quaternion group `⟨diag(z, z^3), [[0,-1],[1,0]]⟩`, `z` of order 4.
    pub fn quaternion() -> Self {
        let e = LaurentEntry::new;
        let c = |k: i64, v: i64| LaurentEntry::from([(k, v)]);
        Self { order_hint: 4, generators: vec![[[c(1, 1), e()], [e(), c(3, 1)]], [[e(), c(0, -1)], [c(0, 1), e()]]] }
    }

    /// `⟨diag(z, 1)⟩`, `z` of order `k`; contains pseudo-reflections.
    pub fn diagonal_reflection(k: u64) -> Self {
        let c = |k: i64| LaurentEntry::from([(k, 1)]);
        Self { order_hint: k, generators: vec![[[c(1), LaurentEntry::new()], [LaurentEntry::new(), c(0)]]] }
    }

    /// Substitutes `z ↦ root` into every generator.
    pub fn substitute<R: ScalarRing>(&self, ring: &R, root: &R::Elem) -> Vec<Mat2<R::Elem>> {
        let e = self.order_hint as i64;
        let eval = |entry: &LaurentEntry| {
            entry.iter().fold(ring.zero(), |acc, (&k, &c)| {
                let term = ring.mul(&ring.from_i64(c), &ring.pow(root, k.rem_euclid(e) as u64));
                ring.add(&acc, &term)
            })
        };
        self.generators
            .iter()
            .map(|g| Mat2::new(eval(&g[0][0]), eval(&g[0][1]), eval(&g[1][0]), eval(&g[1][1])))
            .collect()
    }
}

/// Realizes the group spec inside `GL_2(V_N)` via `z ↦ θ`, the Hensel lift of the
/// residue field's primitive root of unity, then closes the generators.
pub fn lift_group(spec: &CyclotomicMatrixSpec, ring: &DvrRing, cap: usize) -> Result<MatrixGroup<DvrRing>, GroupError> {
    let p = ring.p();
    let n = spec.order_hint;
    if n == 0 {
        return Err(ArithError::InvalidParameters("zeta order must be ≥ 1".into()).into());
    }
    if n.is_multiple_of(p) {
        return Err(classify_modular_spec(spec, p, cap));
    }
    let zeta = primitive_root_of_unity(ring.residue_field(), n)?;
    let theta = hensel_lift_root(ring, n, &zeta)?;
    let gens = spec.substitute(ring, &theta);
    for (i, g) in gens.iter().enumerate() {
        if !ring.is_unit(&g.det(ring)) {
            return Err(GroupError::NotAGroup { reason: format!("generator {i} is singular after substitution") });
        }
        let mut x = g.clone();
        let mut k = 1;
        while !x.is_identity(ring) {
            if k > cap {
                return Err(GroupError::NotAGroup {
                    reason: format!("generator {i} has no finite order within the cap {cap}"),
                });
            }
            x = x.mul(g, ring);
            k += 1;
        }
    }
    close_group(ring, &gens, cap)
}

/// When `p | order_hint` no root of the requested order exists in
/// characteristic `p`; the group order is then read off at an auxiliary good
/// prime (it does not depend on the prime, by injectivity of reduction).
fn classify_modular_spec(spec: &CyclotomicMatrixSpec, p: u64, cap: usize) -> GroupError {
    let n = spec.order_hint;
    let order = (1..200u64).map(|k| k * n + 1).find(|&l| PrimeField::new(l).is_ok()).and_then(|l| {
        let field = FqField::new(l, 1).ok()?;
        let z = primitive_root_of_unity(&field, n).ok()?;
        close_group(&field, &spec.substitute(&field, &z), cap).ok().map(|g| g.order())
    });
    match order {
        Some(order) if (order as u64).is_multiple_of(p) => GroupError::CharacteristicDividesOrder { p, order },
        _ => ArithError::BadOrder { n, p }.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::reduce_group;

    #[test]
    fn cyclic_an_has_order_n_plus_one() {
        for (n, p) in [(1u64, 5u64), (2, 7), (3, 7), (4, 11), (6, 13)] {
            let field = FqField::new(p, 1).unwrap();
            let m = crate::arith::minimal_extension_degree(p, n + 1, 8).unwrap();
            let ring = DvrRing::new(p, m, 6).unwrap();
            let _ = field;
            let g = lift_group(&CyclotomicMatrixSpec::cyclic_an(n), &ring, 512).unwrap();
            assert_eq!(g.order() as u64, n + 1);
            assert!(g.is_special());
        }
    }

    #[test]
    fn quaternion_order_eight_in_sl2() {
        // brute-force closure count is 8; all determinants 1
        let ring = DvrRing::new(5, 1, 8).unwrap();
        let g = lift_group(&CyclotomicMatrixSpec::quaternion(), &ring, 512).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_special());
        assert!(!g.is_abelian());
        assert_eq!(reduce_group(&g).unwrap().order(), 8);
    }

    #[test]
    fn empty_generator_list() {
        let ring = DvrRing::new(7, 1, 4).unwrap();
        let spec = CyclotomicMatrixSpec { order_hint: 1, generators: vec![] };
        assert_eq!(lift_group(&spec, &ring, 512).unwrap().order(), 1);
    }

    #[test]
    fn modular_spec_reports_characteristic() {
        let ring = DvrRing::new(2, 1, 4).unwrap();
        let err = lift_group(&CyclotomicMatrixSpec::cyclic_an(5), &ring, 512).unwrap_err();
        assert_eq!(err, GroupError::CharacteristicDividesOrder { p: 2, order: 6 });
        let ring = DvrRing::new(5, 1, 4).unwrap();
        let err = lift_group(&CyclotomicMatrixSpec::cyclic_an(4), &ring, 512).unwrap_err();
        assert_eq!(err, GroupError::CharacteristicDividesOrder { p: 5, order: 5 });
    }

    #[test]
    fn non_torsion_generator_is_not_a_group() {
        let ring = DvrRing::new(7, 1, 4).unwrap();
        let c = |k: i64, v: i64| LaurentEntry::from([(k, v)]);
        let spec = CyclotomicMatrixSpec {
            order_hint: 2,
            generators: vec![[[c(0, 2), LaurentEntry::new()], [LaurentEntry::new(), c(0, 1)]]],
        };
        assert!(matches!(lift_group(&spec, &ring, 64), Err(GroupError::NotAGroup { .. })));
    }
}
