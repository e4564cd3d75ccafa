use std::collections::BTreeMap;

use serde::Serialize;

use super::poly::{Exponents, GradedPoly};
use super::InvariantError;
use crate::arith::Field;
use crate::linalg::EchelonSpan;

/// Order used to index the normal monomials of `k[x,y,z]/(x² + y^(n+1) + z²)`
/// when building the membership systems. The answers do not depend on it;
/// running both is a consistency check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MonomialOrder {
    /// Lexicographic with `x > y > z`.
    Lex,
    /// Lexicographic with `z > y > x`.
    ReverseLex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentResult {
    pub contained: bool,
    /// First source monomial outside the target ideal (lowest weighted
    /// degree first, then highest power of `y`).
    pub witness: Option<Exponents>,
    pub witness_text: Option<String>,
    pub monomials_checked: usize,
    pub orders_agree: bool,
}

/// `deg x = deg z = n + 1`, `deg y = 2`.
fn weight(n: u32, e: &Exponents) -> u32 {
    (n + 1) * (e[0] + e[2]) + 2 * e[1]
}

fn monomials_of_weight(n: u32, w: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for b in 0..=w / 2 {
        let rest = w - 2 * b;
        if !rest.is_multiple_of(n + 1) {
            continue;
        }
        let s = rest / (n + 1);
        for a in 0..=s {
            out.push([a, b, s - a]);
        }
    }
    out
}

fn sorted(order: MonomialOrder, mut monos: Vec<Exponents>) -> Vec<Exponents> {
    match order {
        MonomialOrder::Lex => monos.sort_by(|a, b| b.cmp(a)),
        MonomialOrder::ReverseLex => monos.sort_by(|a, b| [b[2], b[1], b[0]].cmp(&[a[2], a[1], a[0]])),
    }
    monos
}

/// Rewrites `y^(n+1) → −x² − z²`, highest powers of `y` first, until every
/// term has `y`-degree at most `n`.
fn normal_form<F: Field>(field: &F, n: u32, e: Exponents) -> BTreeMap<Exponents, F::Elem> {
    let k = n + 1;
    let mut p = GradedPoly::monomial(field, 3, u32::MAX / 4, e);
    while let Some((&top, c)) = p.terms().iter().filter(|(e, _)| e[1] >= k).max_by_key(|(e, _)| e[1]) {
        let c = c.clone();
        let minus_c = field.neg(&c);
        p.add_term(field, top, minus_c.clone());
        p.add_term(field, [top[0] + 2, top[1] - k, top[2]], minus_c.clone());
        p.add_term(field, [top[0], top[1] - k, top[2] + 2], minus_c);
    }
    p.terms().clone()
}

fn to_vector<F: Field>(
    field: &F,
    index: &BTreeMap<Exponents, usize>,
    nf: &BTreeMap<Exponents, F::Elem>,
) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); index.len()];
    for (e, c) in nf {
        v[index[e]] = c.clone();
    }
    v
}

/// The weight-`w` piece of the ideal generated by the monomials `target` in
/// the quotient ring, with the normal-monomial column index.
struct IdealPiece<F: Field> {
    index: BTreeMap<Exponents, usize>,
    span: EchelonSpan<F>,
}

fn ideal_piece<F: Field>(field: &F, n: u32, w: u32, target: &[Exponents], order: MonomialOrder) -> IdealPiece<F> {
    let normal: Vec<Exponents> = monomials_of_weight(n, w).into_iter().filter(|e| e[1] <= n).collect();
    let index: BTreeMap<Exponents, usize> =
        sorted(order, normal).into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut span = EchelonSpan::new(field.clone(), index.len());
    for t in target {
        let wt = weight(n, t);
        if wt > w {
            continue;
        }
        for mu in monomials_of_weight(n, w - wt) {
            let prod = [mu[0] + t[0], mu[1] + t[1], mu[2] + t[2]];
            span.insert(&to_vector(field, &index, &normal_form(field, n, prod)));
        }
    }
    IdealPiece { index, span }
}

/// Whether the monomial `m` lies in the ideal generated by the monomials
/// `target` inside `k[x,y,z]/(x² + y^(n+1) + z²)`.
pub fn quotient_membership<F: Field>(
    field: &F,
    n: u32,
    m: Exponents,
    target: &[Exponents],
    order: MonomialOrder,
) -> bool {
    let piece = ideal_piece(field, n, weight(n, &m), target, order);
    piece.span.contains(&to_vector(field, &piece.index, &normal_form(field, n, m)))
}

fn containment_under<F: Field>(
    field: &F,
    n: u32,
    source: &[Exponents],
    target: &[Exponents],
    order: MonomialOrder,
) -> Option<Exponents> {
    let mut pieces: BTreeMap<u32, IdealPiece<F>> = BTreeMap::new();
    for m in source {
        let w = weight(n, m);
        let piece = pieces.entry(w).or_insert_with(|| ideal_piece(field, n, w, target, order));
        if !piece.span.contains(&to_vector(field, &piece.index, &normal_form(field, n, *m))) {
            return Some(*m);
        }
    }
    None
}

pub fn render_xyz(e: &Exponents) -> String {
    let parts: Vec<String> = ["x", "y", "z"]
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Parses a monomial in `x, y, z` such as `x^2`, `y`, `x*z^3`.
pub fn parse_monomial(s: &str) -> Result<Exponents, InvariantError> {
    let bad = || InvariantError::InvalidInput(format!("cannot parse monomial {s:?}"));
    let mut e = [0u32; 3];
    let s = s.trim();
    if s == "1" {
        return Ok(e);
    }
    for factor in s.split('*') {
        let (var, pow) = match factor.trim().split_once('^') {
            Some((v, k)) => (v.trim(), k.trim().parse::<u32>().map_err(|_| bad())?),
            None => (factor.trim(), 1),
        };
        let i = match var {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => return Err(bad()),
        };
        e[i] += pow;
    }
    Ok(e)
}

/// Decides `(x, y, z)^source_power ⊆ (target)` in
/// `k[x,y,z]/(x² + y^(n+1) + z²)` with the weighted grading, by degreewise
/// linear algebra under two monomial orders.
pub fn ideal_containment<F: Field>(field: &F, n: u32, source_power: u32, target: &[Exponents]) -> ContainmentResult {
    let mut source: Vec<Exponents> =
        (0..=source_power).flat_map(|a| (0..=source_power - a).map(move |b| [a, b, source_power - a - b])).collect();
    source.sort_by(|p, q| weight(n, p).cmp(&weight(n, q)).then(q[1].cmp(&p[1])).then(q.cmp(p)));
    let lex = containment_under(field, n, &source, target, MonomialOrder::Lex);
    let rev = containment_under(field, n, &source, target, MonomialOrder::ReverseLex);
    ContainmentResult {
        contained: lex.is_none(),
        witness: lex,
        witness_text: lex.as_ref().map(render_xyz),
        monomials_checked: source.len(),
        orders_agree: lex == rev,
    }
}
