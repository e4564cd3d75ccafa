use serde::Serialize;

use super::poly::{act, GradedPoly};
use super::InvariantError;
use crate::arith::{hensel_lift_root, primitive_root_of_unity, DvrRing, DvrScalar, FqField, FqScalar, ScalarRing};
use crate::groups::{lift_group, CyclotomicMatrixSpec, DEFAULT_ORDER_CAP};

/// `v1 = x1 x2`, `v2 = x1^(n+1)`, `v3 = x2^(n+1)`: the invariants of the
/// cyclic group `⟨diag(ζ, ζ^-1)⟩` of order `n + 1`.
pub fn cyclic_an_generators<R: ScalarRing>(ring: &R, n: u32, cap: u32) -> Vec<GradedPoly<R::Elem>> {
    vec![
        GradedPoly::monomial(ring, 2, cap, [1, 1, 0]),
        GradedPoly::monomial(ring, 2, cap, [n + 1, 0, 0]),
        GradedPoly::monomial(ring, 2, cap, [0, n + 1, 0]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: String,
    /// Number of nonzero coefficients left after substitution; zero when the
    /// identity holds.
    pub residual_terms: usize,
}

/// Named generators of `V_N[x1, x2]^G` (truncated) and the identities they
/// satisfy.
#[derive(Clone, Debug)]
pub struct InvariantPresentation {
    pub n: u32,
    pub degree_cap: u32,
    pub ring: DvrRing,
    pub generators: Vec<(String, GradedPoly<DvrScalar>)>,
    pub relations: Vec<Relation>,
}

impl InvariantPresentation {
    pub fn generator(&self, name: &str) -> Option<&GradedPoly<DvrScalar>> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn all_relations_hold(&self) -> bool {
        self.relations.iter().all(|r| r.residual_terms == 0)
    }

    /// `α, β, γ` with coefficients reduced to the residue field.
    pub fn reduced_klein_generators(&self) -> Vec<GradedPoly<FqScalar>> {
        let field = self.ring.residue_field();
        ["alpha", "beta", "gamma"]
            .iter()
            .map(|name| {
                let p = self.generator(name).expect("Klein generators are present");
                let mut out = GradedPoly::zero(2, p.cap());
                for (e, c) in p.terms() {
                    out.add_term(field, *e, self.ring.reduce(c));
                }
                out
            })
            .collect()
    }
}

/// Builds `α, β, γ` from `v1, v2, v3` with the Hensel-lifted roots `θ_4` and
/// `θ_{2(n+1)}` and verifies `v1^(n+1) = v2 v3` and `α² + β^(n+1) + γ² = 0`
/// exactly over `V_N`, up to total degree `4(n + 1)`.
pub fn klein_presentation(n: u32, ring: &DvrRing) -> Result<InvariantPresentation, InvariantError> {
    if n == 0 {
        return Err(InvariantError::InvalidInput("n must be at least 1".into()));
    }
    if ring.p() == 2 || (2 * (n as u64 + 1)).is_multiple_of(ring.p()) {
        return Err(InvariantError::InvalidInput(format!("p = {} divides 2(n+1)", ring.p())));
    }
    let field = ring.residue_field();
    let lift = |order: u64| -> Result<DvrScalar, InvariantError> {
        let z = primitive_root_of_unity(field, order)?;
        Ok(hensel_lift_root(ring, order, &z)?)
    };
    let theta4 = lift(4)?;
    let theta2n = lift(2 * (n as u64 + 1))?;
    klein_presentation_with(n, ring, &theta4, &theta2n, 4 * (n + 1))
}

/// [`klein_presentation`] with caller-supplied twists, so that a wrong twist
/// can be seen to break the relation.
pub fn klein_presentation_with(
    n: u32,
    ring: &DvrRing,
    theta4: &DvrScalar,
    theta2n: &DvrScalar,
    cap: u32,
) -> Result<InvariantPresentation, InvariantError> {
    let v = cyclic_an_generators(ring, n, cap);
    let (v1, v2, v3) = (&v[0], &v[1], &v[2]);
    let half = ring.inv(&ring.from_i64(2)).expect("p is odd");
    let two_theta4 = ring.mul(&ring.from_i64(2), theta4);
    let inv_two_theta4 =
        ring.inv(&two_theta4).ok_or_else(|| InvariantError::InvalidInput("2θ_4 is not a unit".into()))?;

    let beta = v1.scale(ring, theta2n);
    let alpha = v2.add(ring, v3).scale(ring, &half);
    let gamma = v2.sub(ring, v3).scale(ring, &inv_two_theta4);

    let group = lift_group(&CyclotomicMatrixSpec::cyclic_an(n as u64), ring, DEFAULT_ORDER_CAP)?;
    let mut relations = Vec::new();
    let mut check = |name: String, residual: GradedPoly<DvrScalar>| -> Result<(), InvariantError> {
        if let Some((e, c)) = residual.terms().iter().next() {
            return Err(InvariantError::RelationFailure {
                relation: name,
                witness: format!("coefficient {} at x1^{} x2^{}", ring.format(c), e[0], e[1]),
            });
        }
        relations.push(Relation { name, residual_terms: 0 });
        Ok(())
    };

    let k = n + 1;
    check(format!("v1^{k} - v2*v3"), v1.pow(ring, k).sub(ring, &v2.mul(ring, v3)))?;
    check(
        format!("alpha^2 + beta^{k} + gamma^2"),
        alpha.mul(ring, &alpha).add(ring, &beta.pow(ring, k)).add(ring, &gamma.mul(ring, &gamma)),
    )?;
    for (name, f) in [("v1", v1), ("v2", v2), ("v3", v3), ("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
        for &s in group.generator_indices() {
            check(format!("g*{name} - {name}"), act(ring, group.element(s), f).sub(ring, f))?;
        }
    }

    let generators = vec![
        ("v1".to_string(), v1.clone()),
        ("v2".to_string(), v2.clone()),
        ("v3".to_string(), v3.clone()),
        ("alpha".to_string(), alpha),
        ("beta".to_string(), beta),
        ("gamma".to_string(), gamma),
    ];
    let mut pres = InvariantPresentation { n, degree_cap: cap, ring: ring.clone(), generators, relations };

    let field: &FqField = ring.residue_field();
    let red = pres.reduced_klein_generators();
    let residual = red[0].mul(field, &red[0]).add(field, &red[1].pow(field, k)).add(field, &red[2].mul(field, &red[2]));
    if let Some((e, _)) = residual.terms().iter().next() {
        return Err(InvariantError::RelationFailure {
            relation: "reduction of alpha^2 + beta^(n+1) + gamma^2".into(),
            witness: format!("x1^{} x2^{}", e[0], e[1]),
        });
    }
    pres.relations.push(Relation { name: format!("reduced: alpha^2 + beta^{k} + gamma^2"), residual_terms: 0 });
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::minimal_extension_degree;

    fn ring_for(n: u32, p: u64, precision: u32) -> DvrRing {
        let e = crate::arith::lcm(4, 2 * (n as u64 + 1));
        let m = minimal_extension_degree(p, e, 12).unwrap();
        DvrRing::new(p, m, precision).unwrap()
    }

    #[test]
    fn relations_hold_exactly() {
        for (n, p) in [(1, 7), (2, 5), (3, 7)] {
            let pres = klein_presentation(n, &ring_for(n, p, 8)).unwrap();
            assert!(pres.all_relations_hold());
            assert_eq!(pres.degree_cap, 4 * (n + 1));
            assert!(pres.relations.len() >= 3);
        }
    }

    #[test]
    fn wrong_twist_breaks_relation() {
        let ring = ring_for(1, 7, 8);
        let z = primitive_root_of_unity(ring.residue_field(), 4).unwrap();
        let theta4 = hensel_lift_root(&ring, 4, &z).unwrap();
        let err = klein_presentation_with(1, &ring, &ring.one(), &theta4, 8).unwrap_err();
        assert!(matches!(err, InvariantError::RelationFailure { ref relation, .. } if relation.starts_with("alpha")));
    }

    #[test]
    fn bad_prime_rejected() {
        let ring = DvrRing::new(3, 2, 4).unwrap();
        assert!(matches!(klein_presentation(2, &ring), Err(InvariantError::InvalidInput(_))));
    }
}
