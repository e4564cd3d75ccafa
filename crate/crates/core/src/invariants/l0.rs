use serde::Serialize;

use super::basis::invariant_basis;
use super::poly::{act, GradedPoly};
use super::InvariantError;
use crate::arith::Field;
use crate::groups::MatrixGroup;
use crate::linalg::EchelonSpan;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct L0Report {
    pub l0: u32,
    pub degree_cap: u32,
    pub raised_cap: u32,
    /// Whether `A^G_d ⊆ (u1², u2²)` for `d = 0..=degree_cap`.
    pub passes: Vec<bool>,
    /// `dim (A^G / (u1, u2))_d` for `d = 0..=degree_cap`.
    pub quotient_dims: Vec<usize>,
}

fn degree_of<E: Clone + PartialEq>(u: &GradedPoly<E>) -> Option<u32> {
    let d = u.terms().keys().next().map(super::total_degree)?;
    u.is_homogeneous_of(d).then_some(d)
}

/// Span of `b·u` for `u` in `gens` and `b` running over invariant bases, in
/// degree `d`.
fn ideal_span<F: Field>(
    field: &F,
    d: u32,
    gens: &[(&GradedPoly<F::Elem>, u32)],
    inv: &[Vec<GradedPoly<F::Elem>>],
) -> EchelonSpan<F> {
    let mut span = EchelonSpan::new(field.clone(), d as usize + 1);
    for &(u, du) in gens {
        if du > d {
            continue;
        }
        for b in &inv[(d - du) as usize] {
            span.insert(&b.mul(field, u).to_vector(field, d));
        }
    }
    span
}

/// `l0` for a fixed degree cap: the smallest `l ≤ l_max` such that every
/// invariant of degree `d ∈ [l, cap]` lies in the `A^G`-ideal `(u1², u2²)`.
pub fn l0_at_cap<F: Field>(
    group: &MatrixGroup<F>,
    u1: &GradedPoly<F::Elem>,
    u2: &GradedPoly<F::Elem>,
    l_max: u32,
    cap: u32,
) -> Result<L0Report, InvariantError> {
    let f = group.ring();
    let mut degs = Vec::new();
    for u in [u1, u2] {
        let d = degree_of(u).filter(|&d| d > 0).ok_or_else(|| {
            InvariantError::InvalidInput("u1, u2 must be nonzero homogeneous of positive degree".into())
        })?;
        for &s in group.generator_indices() {
            if act(f, group.element(s), u) != *u {
                return Err(InvariantError::InvalidInput(format!("{} is not invariant", u.render(f))));
            }
        }
        degs.push(d);
    }
    let max_deg = *degs.iter().max().expect("two entries");
    if cap < l_max + 2 * max_deg {
        return Err(InvariantError::InvalidInput(format!(
            "degree cap {cap} is below l_max + 2·max deg u = {}",
            l_max + 2 * max_deg
        )));
    }

    let inv: Vec<Vec<GradedPoly<F::Elem>>> =
        (0..=cap).map(|d| Ok(invariant_basis(group, d)?.polys(f, cap))).collect::<Result<_, InvariantError>>()?;
    let (u1, u2) = (&u1.with_cap(cap), &u2.with_cap(cap));
    let (s1, s2) = (u1.mul(f, u1), u2.mul(f, u2));
    let mut passes = Vec::new();
    let mut quotient_dims = Vec::new();
    for d in 0..=cap {
        let sop = ideal_span(f, d, &[(u1, degs[0]), (u2, degs[1])], &inv);
        quotient_dims.push(inv[d as usize].len() - sop.rank());
        let sq = ideal_span(f, d, &[(&s1, 2 * degs[0]), (&s2, 2 * degs[1])], &inv);
        passes.push(inv[d as usize].iter().all(|b| sq.contains(&b.to_vector(f, d))));
    }

    // A^G is nonzero in every degree divisible by |G| (norms of linear forms),
    // so a finite-dimensional quotient must vanish somewhere in this window.
    let window = (group.order() as u32).min(cap + 1);
    if let Some(d) = (cap + 1 - window..=cap).find(|&d| quotient_dims[d as usize] > 0) {
        return Err(InvariantError::NotAnSOP { degree: d, quotient_dim: quotient_dims[d as usize] });
    }

    let l0 = (0..=l_max)
        .find(|&l| passes[l as usize..].iter().all(|&p| p))
        .ok_or(InvariantError::NotFound { l_max, cap })?;
    Ok(L0Report { l0, degree_cap: cap, raised_cap: cap, passes, quotient_dims })
}

/// [`l0_at_cap`] at `cap` and again at `cap + 2`; the two values must agree.
pub fn compute_l0<F: Field>(
    group: &MatrixGroup<F>,
    u1: &GradedPoly<F::Elem>,
    u2: &GradedPoly<F::Elem>,
    l_max: u32,
    cap: u32,
) -> Result<L0Report, InvariantError> {
    let mut report = l0_at_cap(group, u1, u2, l_max, cap)?;
    let raised = l0_at_cap(group, u1, u2, l_max, cap + 2)?;
    if raised.l0 != report.l0 {
        return Err(InvariantError::Unstable { cap, value: report.l0, raised_cap: cap + 2, raised_value: raised.l0 });
    }
    report.raised_cap = cap + 2;
    Ok(report)
}
