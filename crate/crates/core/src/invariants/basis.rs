use super::poly::{action_matrix, GradedPoly};
use super::InvariantError;
use crate::arith::{primitive_root_of_unity, Field, FqField, ScalarRing};
use crate::groups::{CharacterTable, GroupError, MatrixGroup};
use crate::linalg::{self, EchelonSpan, Matrix};

/// A subspace of degree-`d` forms in `k[x1, x2]`, stored as reduced
/// row-echelon coefficient vectors over the [`monomials2`] basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspaceBasis<E> {
    pub degree: u32,
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> GradedSubspaceBasis<E> {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn polys<R: ScalarRing<Elem = E>>(&self, ring: &R, cap: u32) -> Vec<GradedPoly<E>> {
        self.rows.iter().map(|r| GradedPoly::from_vector(ring, cap, self.degree, r)).collect()
    }
}

fn ensure_nonmodular<F: Field>(group: &MatrixGroup<F>) -> Result<(), InvariantError> {
    if group.is_nonmodular() {
        Ok(())
    } else {
        Err(GroupError::CharacteristicDividesOrder { p: group.ring().residue_characteristic(), order: group.order() }
            .into())
    }
}

/// Fixed space of `g ↦ weight(g)·A_g` on degree `d`: the kernel of the stacked
/// `weight(g)·A_g − I` over the generators.
fn twisted_fixed_space<F: Field>(
    group: &MatrixGroup<F>,
    d: u32,
    weight: impl Fn(usize) -> F::Elem,
) -> GradedSubspaceBasis<F::Elem> {
    let f = group.ring();
    let n = d as usize + 1;
    let mut rows = Vec::new();
    for &g in group.generator_indices() {
        let a = action_matrix(f, group.element(g), d);
        let w = weight(g);
        for (i, row) in a.into_iter().enumerate() {
            rows.push(
                row.into_iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let y = f.mul(&w, &x);
                        if i == j {
                            f.sub(&y, &f.one())
                        } else {
                            y
                        }
                    })
                    .collect(),
            );
        }
    }
    let ech = linalg::kernel(f, rows, n);
    GradedSubspaceBasis { degree: d, rows: ech.rows, pivots: ech.pivots }
}

/// `(1/|G|) Σ_g weight(g)·A_g` on degree `d`.
fn twisted_projector<F: Field>(group: &MatrixGroup<F>, d: u32, weight: impl Fn(usize) -> F::Elem) -> Matrix<F::Elem> {
    let f = group.ring();
    let n = d as usize + 1;
    let mut sum = vec![vec![f.zero(); n]; n];
    for g in 0..group.order() {
        let a = action_matrix(f, group.element(g), d);
        let w = weight(g);
        for (srow, arow) in sum.iter_mut().zip(a) {
            for (s, x) in srow.iter_mut().zip(arow) {
                *s = f.add(s, &f.mul(&w, &x));
            }
        }
    }
    let inv = f.inv(&f.from_i64(group.order() as i64)).expect("|G| is a unit");
    sum.into_iter().map(|r| r.into_iter().map(|x| f.mul(&x, &inv)).collect()).collect()
}

/// The Reynolds operator `ρ(f) = |G|^-1 Σ_σ σ(f)`.
pub fn reynolds<F: Field>(
    group: &MatrixGroup<F>,
    f: &GradedPoly<F::Elem>,
) -> Result<GradedPoly<F::Elem>, InvariantError> {
    ensure_nonmodular(group)?;
    let ring = group.ring();
    let mut sum = GradedPoly::zero(2, f.cap());
    for g in group.elements() {
        sum = sum.add(ring, &super::act(ring, g, f));
    }
    let inv = ring.inv(&ring.from_i64(group.order() as i64)).expect("|G| is a unit");
    Ok(sum.scale(ring, &inv))
}

/// Rank of the Reynolds projector on degree-`d` forms.
pub fn reynolds_rank<F: Field>(group: &MatrixGroup<F>, d: u32) -> Result<usize, InvariantError> {
    ensure_nonmodular(group)?;
    let f = group.ring();
    Ok(linalg::rank(f, twisted_projector(group, d, |_| f.one()), d as usize + 1))
}

/// Echelon basis of the degree-`d` invariants, cross-checked against the rank
/// of the Reynolds projector.
pub fn invariant_basis<F: Field>(
    group: &MatrixGroup<F>,
    d: u32,
) -> Result<GradedSubspaceBasis<F::Elem>, InvariantError> {
    ensure_nonmodular(group)?;
    let f = group.ring();
    let basis = twisted_fixed_space(group, d, |_| f.one());
    let reynolds = reynolds_rank(group, d)?;
    if reynolds != basis.dim() {
        return Err(InvariantError::OracleDisagreement { degree: d, kernel: basis.dim(), reynolds });
    }
    Ok(basis)
}

/// `χ(g)` in the residue field for every element of `group`, with `ζ_e`
/// interpreted as the field's chosen primitive root.
pub fn character_values(
    group: &MatrixGroup<FqField>,
    table: &CharacterTable,
    chi: usize,
) -> Result<Vec<crate::FqScalar>, InvariantError> {
    if table.group_fingerprint != group.fingerprint() || table.group_order != group.order() {
        return Err(InvariantError::TableMismatch);
    }
    let f = group.ring();
    let zeta = primitive_root_of_unity(f, table.exponent)?;
    Ok((0..group.order()).map(|g| table.evaluate(f, &zeta, chi, g)).collect())
}

/// Degree-`d` forms with `σ(f) = χ(σ)^-1 f` for a linear character `χ`,
/// cross-checked against the rank of the twisted projector.
pub fn semi_invariant_basis(
    group: &MatrixGroup<FqField>,
    table: &CharacterTable,
    chi: usize,
    d: u32,
) -> Result<GradedSubspaceBasis<crate::FqScalar>, InvariantError> {
    ensure_nonmodular(group)?;
    if table.dims[chi] != 1 {
        return Err(InvariantError::NonLinearCharacter { index: chi, dim: table.dims[chi] });
    }
    let values = character_values(group, table, chi)?;
    let f = group.ring();
    let basis = twisted_fixed_space(group, d, |g| values[g].clone());
    let reynolds = linalg::rank(f, twisted_projector(group, d, |g| values[g].clone()), d as usize + 1);
    if reynolds != basis.dim() {
        return Err(InvariantError::OracleDisagreement { degree: d, kernel: basis.dim(), reynolds });
    }
    Ok(basis)
}

/// Per-degree comparison of a generated subalgebra with the invariants.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GenerationReport {
    pub degree_cap: u32,
    /// `(invariant dimension, generated dimension)` for `d = 0..=cap`.
    pub dims: Vec<(usize, usize)>,
}

/// Dimension of the degree-`d` piece of `k[gens]`, built from all products of
/// homogeneous generators whose degrees add up to `d`.
pub fn generated_dimension<F: Field>(field: &F, gens: &[GradedPoly<F::Elem>], d: u32) -> usize {
    let degs: Vec<u32> = gens.iter().map(|g| g.terms().keys().next().map(super::total_degree).unwrap_or(0)).collect();
    let mut span = EchelonSpan::new(field.clone(), d as usize + 1);
    let one = GradedPoly::constant(field, 2, d, field.one());
    // Depth-first over exponent vectors with non-decreasing generator index.
    let mut stack = vec![(0usize, 0u32, one)];
    while let Some((start, deg, prod)) = stack.pop() {
        if deg == d {
            span.insert(&prod.homogeneous_part(d).to_vector(field, d));
            continue;
        }
        for i in start..gens.len() {
            if degs[i] > 0 && deg + degs[i] <= d {
                stack.push((i, deg + degs[i], prod.mul(field, &gens[i])));
            }
        }
    }
    span.rank()
}

/// Checks that homogeneous invariant `gens` generate all invariants through
/// degree `cap`; fails at the first short degree.
pub fn check_generation<F: Field>(
    group: &MatrixGroup<F>,
    gens: &[GradedPoly<F::Elem>],
    cap: u32,
) -> Result<GenerationReport, InvariantError> {
    let f = group.ring();
    for g in gens {
        let d = g.terms().keys().next().map(super::total_degree).unwrap_or(0);
        if g.is_zero() || !g.is_homogeneous_of(d) {
            return Err(InvariantError::InvalidInput("generators must be nonzero and homogeneous".into()));
        }
        for &s in group.generator_indices() {
            if super::act(f, group.element(s), g) != *g {
                return Err(InvariantError::InvalidInput(format!("{} is not invariant", g.render(f))));
            }
        }
    }
    let mut dims = Vec::new();
    for d in 0..=cap {
        let expected = invariant_basis(group, d)?.dim();
        let found = generated_dimension(f, gens, d);
        if found != expected {
            return Err(InvariantError::GenerationGap { degree: d, expected, found });
        }
        dims.push((expected, found));
    }
    Ok(GenerationReport { degree_cap: cap, dims })
}
