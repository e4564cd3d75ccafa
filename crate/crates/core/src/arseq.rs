//! Degreewise Koszul fixed-point sequences and the character-level data that
//! links them to the McKay graph.
//!
//! For an abelian `G` and a linear character `χ_i`, the degree-`d` strand is
//!
//! ```text
//! (S_{d-2} ⊗ ∧²E ⊗ P_i)^G → (S_{d-1} ⊗ E ⊗ P_i)^G → (S_d ⊗ P_i)^G → P_i^G
//! ```
//!
//! with `E = k²` the defining representation, `∂(m ⊗ e1∧e2) = m x1 ⊗ e2 −
//! m x2 ⊗ e1` and `∂(m ⊗ e_j) = m x_j`. `g` acts on a node by
//! `χ_i(g) · (action on S) ⊗ (action on E or ∧²E)`, and each fixed space is the
//! kernel of the stacked `χ_i(g)·A_g − I` over the generators.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{FqField, FqScalar, ScalarRing};
use crate::groups::{CharacterTable, GroupError, MatrixGroup};
use crate::invariants::{action_matrix, character_values, semi_invariant_basis, InvariantError};
use crate::linalg::{self, Matrix};
use crate::mckay::mckay_graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArSeqError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("Koszul strands need an abelian group")]
    NonAbelianUnsupported,
    #[error("strand (i={char_index}, d={degree}) is not a complex")]
    NotAComplex { char_index: usize, degree: u32 },
    #[error("Koszul map does not preserve fixed points in strand (i={char_index}, d={degree})")]
    NotEquivariant { char_index: usize, degree: u32 },
}

impl ArSeqError {
    pub fn is_internal(&self) -> bool {
        match self {
            Self::Group(g) => g.is_internal(),
            Self::Invariant(e) => e.is_internal(),
            Self::NonAbelianUnsupported => false,
            Self::NotAComplex { .. } | Self::NotEquivariant { .. } => true,
        }
    }
}

/// One degree of the Koszul sequence attached to the character `χ_i`.
#[derive(Clone, Debug)]
pub struct KoszulStrand {
    pub char_index: usize,
    pub degree: u32,
    /// Dimensions of the fixed spaces of the left, middle and right node and
    /// of `P_i^G`; the left node sits in polynomial degree `d − 2`, the middle
    /// one in `d − 1`.
    pub dims: [usize; 4],
    /// Ranks of `∂2` and `∂1` restricted to fixed points.
    pub ranks: [usize; 2],
    /// `∂2` and `∂1` in the coordinates of the echelon fixed-point bases.
    pub maps: [Matrix<FqScalar>; 2],
    /// Homology at the left and middle nodes and the cokernel at the right.
    pub homology: [usize; 3],
}

impl KoszulStrand {
    /// Exact away from the right end, and the cokernel there equals `P_i^G`
    /// in degree 0 and vanishes otherwise.
    pub fn is_exact(&self) -> bool {
        let expected_coker = if self.degree == 0 { self.dims[3] } else { 0 };
        self.homology[0] == 0 && self.homology[1] == 0 && self.homology[2] == expected_coker
    }

    pub fn summary(&self) -> StrandSummary {
        StrandSummary {
            char_index: self.char_index,
            degree: self.degree,
            dims: self.dims,
            ranks: self.ranks,
            homology: self.homology,
            exact: self.is_exact(),
        }
    }
}

/// Serializable part of a [`KoszulStrand`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandSummary {
    pub char_index: usize,
    pub degree: u32,
    pub dims: [usize; 4],
    pub ranks: [usize; 2],
    pub homology: [usize; 3],
    pub exact: bool,
}

fn kron(f: &FqField, a: &Matrix<FqScalar>, b: &Matrix<FqScalar>) -> Matrix<FqScalar> {
    let (ra, rb) = (a.len(), b.len());
    let (ca, cb) = (a.first().map_or(0, Vec::len), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![f.zero(); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = f.mul(&a[i][j], &b[k][l]);
                }
            }
        }
    }
    out
}

/// Degree-`d` action matrix, empty for negative degrees.
fn sym_action(f: &FqField, g: &crate::Mat2<FqScalar>, d: i64) -> Matrix<FqScalar> {
    if d < 0 {
        Vec::new()
    } else {
        action_matrix(f, g, d as u32)
    }
}

/// Kernel of the stacked `w(g)·A_g − I` over the generators.
fn fixed_space(f: &FqField, mats: &[(FqScalar, Matrix<FqScalar>)], n: usize) -> linalg::Echelon<FqScalar> {
    let mut rows = Vec::new();
    for (w, a) in mats {
        for (i, row) in a.iter().enumerate() {
            rows.push(
                row.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let y = f.mul(w, x);
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
    linalg::kernel(f, rows, n)
}

/// Full Koszul differentials on the degree-`d` pieces; index `m*2 + j` on the
/// middle node stands for `monomial_m ⊗ e_{j+1}`.
fn koszul_maps(f: &FqField, d: u32) -> (Matrix<FqScalar>, Matrix<FqScalar>) {
    let d = d as i64;
    let (n2, n1, n0) = (sym_dim(d - 2), 2 * sym_dim(d - 1), sym_dim(d));
    let mut d2 = vec![vec![f.zero(); n2]; n1];
    let mut d1 = vec![vec![f.zero(); n1]; n0];
    // A degree-k monomial x1^(k-b) x2^b has index b; multiplying by x1 keeps
    // the index, multiplying by x2 raises it by one.
    for b in 0..n2 {
        d2[b * 2 + 1][b] = f.one();
        d2[(b + 1) * 2][b] = f.neg(&f.one());
    }
    for b in 0..n1 / 2 {
        d1[b][b * 2] = f.one();
        d1[b + 1][b * 2 + 1] = f.one();
    }
    (d2, d1)
}

/// Coordinates of `v` in an echelon basis: its entries at the pivot columns.
fn coordinates(basis: &linalg::Echelon<FqScalar>, v: &[FqScalar]) -> Vec<FqScalar> {
    basis.pivots.iter().map(|&c| v[c].clone()).collect()
}

/// Builds and checks the degree-`d` strand for the linear character `χ_i`.
pub fn koszul_strand(
    group: &MatrixGroup<FqField>,
    table: &CharacterTable,
    i: usize,
    d: u32,
) -> Result<KoszulStrand, ArSeqError> {
    if !group.is_abelian() {
        return Err(ArSeqError::NonAbelianUnsupported);
    }
    let f = group.ring();
    let chi = character_values(group, table, i)?;
    let di = d as i64;
    let mut left = Vec::new();
    let mut middle = Vec::new();
    let mut right = Vec::new();
    let mut target = Vec::new();
    for &s in group.generator_indices() {
        let g = group.element(s);
        let e: Matrix<FqScalar> = (0..2).map(|r| (0..2).map(|c| g.at(r, c).clone()).collect()).collect();
        let det = vec![vec![g.det(f)]];
        left.push((chi[s].clone(), kron(f, &sym_action(f, g, di - 2), &det)));
        middle.push((chi[s].clone(), kron(f, &sym_action(f, g, di - 1), &e)));
        right.push((chi[s].clone(), sym_action(f, g, di)));
        target.push((chi[s].clone(), vec![vec![f.one()]]));
    }
    let b2 = fixed_space(f, &left, sym_dim(di - 2));
    let b1 = fixed_space(f, &middle, 2 * sym_dim(di - 1));
    let b0 = fixed_space(f, &right, sym_dim(di));
    let p_fixed = fixed_space(f, &target, 1).rank();

    let (d2, d1) = koszul_maps(f, d);
    let img2: Vec<Vec<FqScalar>> = b2.rows.iter().map(|v| linalg::mat_vec(f, &d2, v)).collect();
    let img1: Vec<Vec<FqScalar>> = b1.rows.iter().map(|v| linalg::mat_vec(f, &d1, v)).collect();
    let contained = |basis: &linalg::Echelon<FqScalar>, v: &[FqScalar], n: usize| {
        let mut rows = basis.rows.clone();
        rows.push(v.to_vec());
        linalg::rank(f, rows, n) == basis.rank()
    };
    if !img2.iter().all(|v| contained(&b1, v, v.len())) || !img1.iter().all(|v| contained(&b0, v, v.len())) {
        return Err(ArSeqError::NotEquivariant { char_index: i, degree: d });
    }
    for v in &img2 {
        if !linalg::mat_vec(f, &d1, v).iter().all(|x| f.is_zero(x)) {
            return Err(ArSeqError::NotAComplex { char_index: i, degree: d });
        }
    }
    let r2 = linalg::rank(f, img2.clone(), 2 * sym_dim(di - 1));
    let r1 = linalg::rank(f, img1.clone(), sym_dim(di));
    let to_cols = |imgs: &[Vec<FqScalar>], basis: &linalg::Echelon<FqScalar>| -> Matrix<FqScalar> {
        let cols: Vec<Vec<FqScalar>> = imgs.iter().map(|v| coordinates(basis, v)).collect();
        (0..basis.rank()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    };
    let dims = [b2.rank(), b1.rank(), b0.rank(), p_fixed];
    Ok(KoszulStrand {
        char_index: i,
        degree: d,
        dims,
        ranks: [r2, r1],
        maps: [to_cols(&img2, &b1), to_cols(&img1, &b0)],
        homology: [dims[0] - r2, dims[1] - r2 - r1, dims[2] - r1],
    })
}

/// `1` at each irreducible with nonzero fixed vectors, `0` elsewhere. Every
/// irreducible other than the trivial one has none; this is cross-checked by
/// the trace of the averaging projector, `|G|^-1 Σ_g χ_i(g)`, in the residue
/// field.
pub fn fixed_points_of_projectives(
    group: &MatrixGroup<FqField>,
    table: &CharacterTable,
) -> Result<Vec<u8>, ArSeqError> {
    let f = group.ring();
    let inv_order = f
        .inv(&f.from_i64(group.order() as i64))
        .ok_or(GroupError::CharacteristicDividesOrder { p: f.p(), order: group.order() })?;
    let mut out = Vec::with_capacity(table.len());
    for i in 0..table.len() {
        let values = character_values(group, table, i)?;
        let avg = values.iter().fold(f.zero(), |acc, x| f.add(&acc, x));
        let avg = f.mul(&avg, &inv_order);
        let by_average = !f.is_zero(&avg);
        let by_index = i == table.trivial_index();
        if by_average != by_index {
            return Err(GroupError::CharacterInconsistency(format!("irreducible {i} has fixed vectors")).into());
        }
        out.push(by_index as u8);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MiddleTerm {
    pub char_index: usize,
    /// Multiplicity of each `W_j` in `k² ⊗ W_i`.
    pub multiplicities: Vec<u32>,
    /// Agreement with column `i` of the McKay graph.
    pub matches_mckay: bool,
}

/// Decomposes `χ_std · χ_i`; the middle term of the sequence ending at `L_i`
/// is `⊕_j L_j^{c_ji}`.
pub fn middle_term_decomposition(table: &CharacterTable, i: usize) -> MiddleTerm {
    let prod = table.product(&table.std_char, &table.characters[i]);
    let multiplicities: Vec<u32> = table
        .decompose(&prod)
        .expect("characters decompose integrally")
        .into_iter()
        .map(|m| u32::try_from(m).expect("multiplicities are non-negative"))
        .collect();
    let graph = mckay_graph(table);
    let matches_mckay = (0..table.len()).all(|j| graph.arrows[j][i] == multiplicities[j]);
    MiddleTerm { char_index: i, multiplicities, matches_mckay }
}

/// Per-degree comparison of `dim (S_{d-1} ⊗ E ⊗ P_i)^G` with
/// `Σ_j c_ji · dim (S_{d-1} ⊗ P_j)^G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedMiddleCheck {
    pub char_index: usize,
    /// `(degree d, middle dimension, shifted sum)`; polynomials of the middle
    /// node have degree `d − 1`.
    pub rows: Vec<(u32, usize, usize)>,
    pub agrees: bool,
}

pub fn middle_term_graded_check(
    group: &MatrixGroup<FqField>,
    table: &CharacterTable,
    i: usize,
    cap: u32,
) -> Result<GradedMiddleCheck, ArSeqError> {
    let middle = middle_term_decomposition(table, i);
    let mut rows = Vec::new();
    for d in 1..=cap {
        let strand = koszul_strand(group, table, i, d)?;
        let mut sum = 0;
        for (j, &c) in middle.multiplicities.iter().enumerate() {
            if c > 0 {
                sum += c as usize * semi_invariant_basis(group, table, j, d - 1)?.dim();
            }
        }
        rows.push((d, strand.dims[1], sum));
    }
    let agrees = rows.iter().all(|(_, a, b)| a == b);
    Ok(GradedMiddleCheck { char_index: i, rows, agrees })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauMap {
    /// Index of the determinant character `∧²E`.
    pub det_index: usize,
    pub det_trivial: bool,
    /// `map[i]` is the index of `det ⊗ χ_i`.
    pub map: Vec<usize>,
}

impl TauMap {
    pub fn fixes_every_index(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// The left term of the sequence ending at `L_i` is `L_{τ(i)}` with
/// `χ_{τ(i)} = det · χ_i`.
pub fn tau_is_det_twist(table: &CharacterTable) -> Result<TauMap, ArSeqError> {
    let det = table.det_char();
    let det_index = table
        .index_of(&det)
        .ok_or_else(|| GroupError::CharacterInconsistency("determinant is not an irreducible character".into()))?;
    let map = (0..table.len())
        .map(|i| {
            table
                .index_of(&table.product(&det, &table.characters[i]))
                .ok_or_else(|| GroupError::CharacterInconsistency(format!("det ⊗ χ_{i} is not irreducible")).into())
        })
        .collect::<Result<Vec<_>, ArSeqError>>()?;
    Ok(TauMap { det_index, det_trivial: det_index == table.trivial_index(), map })
}

/// Number of monomials of degree `d` in two variables (`0` below zero).
pub fn sym_dim(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        d as usize + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{minimal_extension_degree, DvrRing};
    use crate::groups::{character_table, lift_group, reduce_group, CyclotomicMatrixSpec};

    fn reduced(spec: &CyclotomicMatrixSpec, p: u64) -> MatrixGroup<FqField> {
        let m = minimal_extension_degree(p, spec.order_hint, 12).unwrap();
        reduce_group(&lift_group(spec, &DvrRing::new(p, m, 3).unwrap(), 512).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_strands_are_exact() {
        for n in 1..=3 {
            let g = reduced(&CyclotomicMatrixSpec::cyclic_an(n), 7);
            let t = character_table(&g).unwrap();
            for i in 0..t.len() {
                for d in 0..=8 {
                    let s = koszul_strand(&g, &t, i, d).unwrap();
                    assert!(s.is_exact(), "n={n} i={i} d={d} {:?}", s.summary());
                    let coker = if i == 0 && d == 0 { 1 } else { 0 };
                    assert_eq!(s.homology[2], coker);
                }
            }
        }
    }

    #[test]
    fn trivial_group_is_plain_koszul() {
        let spec = CyclotomicMatrixSpec { order_hint: 1, generators: vec![] };
        let g = reduced(&spec, 5);
        let t = character_table(&g).unwrap();
        for d in 0..=6i64 {
            let s = koszul_strand(&g, &t, 0, d as u32).unwrap();
            assert_eq!(s.dims[..3], [sym_dim(d - 2), 2 * sym_dim(d - 1), sym_dim(d)]);
            assert!(s.is_exact());
        }
        assert_eq!(fixed_points_of_projectives(&g, &t).unwrap(), vec![1]);
        assert_eq!(middle_term_decomposition(&t, 0).multiplicities, vec![2]);
        let tau = tau_is_det_twist(&t).unwrap();
        assert!(tau.det_trivial && tau.fixes_every_index());
    }

    #[test]
    fn fixed_points_indicator() {
        let g = reduced(&CyclotomicMatrixSpec::cyclic_an(2), 7);
        let t = character_table(&g).unwrap();
        assert_eq!(fixed_points_of_projectives(&g, &t).unwrap(), vec![1, 0, 0]);
        let q = reduced(&CyclotomicMatrixSpec::quaternion(), 5);
        let tq = character_table(&q).unwrap();
        assert_eq!(fixed_points_of_projectives(&q, &tq).unwrap(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn quaternion_middle_term() {
        let q = reduced(&CyclotomicMatrixSpec::quaternion(), 5);
        let t = character_table(&q).unwrap();
        let big = t.dims.iter().position(|&d| d == 2).unwrap();
        let m = middle_term_decomposition(&t, big);
        assert!(m.matches_mckay);
        for (j, &c) in m.multiplicities.iter().enumerate() {
            assert_eq!(c, (t.dims[j] == 1) as u32);
        }
        assert_eq!(koszul_strand(&q, &t, 0, 2).unwrap_err(), ArSeqError::NonAbelianUnsupported);
    }

    #[test]
    fn cyclic_middle_term_graded() {
        for n in 1..=4 {
            let g = reduced(&CyclotomicMatrixSpec::cyclic_an(n), 11);
            let t = character_table(&g).unwrap();
            for i in 0..t.len() {
                let m = middle_term_decomposition(&t, i);
                assert!(m.matches_mckay);
                assert_eq!(m.multiplicities.iter().sum::<u32>(), 2);
                assert!(middle_term_graded_check(&g, &t, i, 8).unwrap().agrees);
            }
        }
    }

    #[test]
    fn tau_for_reflection_group_shifts() {
        let g = reduced(&CyclotomicMatrixSpec::diagonal_reflection(3), 7);
        let t = character_table(&g).unwrap();
        let tau = tau_is_det_twist(&t).unwrap();
        assert!(!tau.det_trivial);
        assert_ne!(tau.det_index, 0);
        assert_eq!(tau.map[0], tau.det_index);
        for (i, &j) in tau.map.iter().enumerate() {
            assert_eq!(t.characters[j], t.product(&t.det_char(), &t.characters[i]));
            assert_ne!(i, j);
        }
        let a = reduced(&CyclotomicMatrixSpec::cyclic_an(4), 11);
        assert!(tau_is_det_twist(&character_table(&a).unwrap()).unwrap().fixes_every_index());
    }
}
