//! McKay graphs of the defining 2-dimensional representation.
//!
//! `c[i][j]` counts arrows `W_i → W_j` and equals the multiplicity of `W_i`
//! in `k² ⊗ W_j`. The same numbers arise from the lifted group over `V_N`
//! (projective `V[G]`-modules `P_j` with `P_j / π = W_j`), which
//! [`quiver_equals_mckay`] recomputes along an independent path.

use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{hensel_lift_root, primitive_root_of_unity, DvrRing};
use crate::groups::{character_table, eigen_exponents, reduce_group, CharacterTable, GroupError, MatrixGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McKayError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("arrow count mismatch at ({i}, {j}): character side {mc}, lifted side {t}")]
    MismatchDetected { i: usize, j: usize, mc: i64, t: i64 },
}

impl McKayError {
    pub fn is_internal(&self) -> bool {
        match self {
            Self::Group(g) => g.is_internal(),
            Self::MismatchDetected { .. } => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayGraph {
    pub dims: Vec<u32>,
    /// `arrows[i][j]` = number of arrows `W_i → W_j`.
    pub arrows: Vec<Vec<u32>>,
    pub group_fingerprint: String,
}

/// The `{"dims": [...], "arrows": [[...]]}` export form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayJson {
    pub dims: Vec<u32>,
    pub arrows: Vec<Vec<u32>>,
}

impl McKayGraph {
    pub fn num_vertices(&self) -> usize {
        self.dims.len()
    }

    pub fn to_json(&self) -> McKayJson {
        McKayJson { dims: self.dims.clone(), arrows: self.arrows.clone() }
    }

    /// First column `j` violating `Σ_i c[i][j] dim_i = 2 dim_j`.
    pub fn column_dimension_violation(&self) -> Option<usize> {
        (0..self.num_vertices()).find(|&j| {
            let lhs: u32 = (0..self.num_vertices()).map(|i| self.arrows[i][j] * self.dims[i]).sum();
            lhs != 2 * self.dims[j]
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.num_vertices();
        (0..n).all(|i| (0..n).all(|j| self.arrows[i][j] == self.arrows[j][i]))
    }

    /// Connectivity of the underlying undirected graph.
    #[allow(clippy::needless_range_loop)]
    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && (self.arrows[v][w] > 0 || self.arrows[w][v] > 0) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether some relabelling of the vertices turns this graph into the
    /// template (same dimensions, same arrow matrix). Brute force; meant for
    /// the handful of vertices of the extended Dynkin patterns.
    pub fn matches_template(&self, dims: &[u32], arrows: &[Vec<u32>]) -> bool {
        let n = self.num_vertices();
        if dims.len() != n || n > 9 {
            return false;
        }
        (0..n).permutations(n).any(|perm| {
            (0..n).all(|i| self.dims[perm[i]] == dims[i])
                && (0..n).all(|i| (0..n).all(|j| self.arrows[perm[i]][perm[j]] == arrows[i][j]))
        })
    }

    /// Extended Dynkin diagram `Ã_n` (n ≥ 1): a cycle on `n + 1` vertices of
    /// dimension 1 with one arrow each way, doubled when `n = 1`.
    pub fn is_affine_a(&self, n: usize) -> bool {
        let (dims, arrows) = affine_a_template(n);
        self.matches_template(&dims, &arrows)
    }

    /// Extended Dynkin diagram `D̃_4`: a 2-dimensional centre joined to four
    /// 1-dimensional leaves.
    pub fn is_affine_d4(&self) -> bool {
        let dims = vec![2, 1, 1, 1, 1];
        let arrows: Vec<Vec<u32>> = (0..5).map(|i| (0..5).map(|j| ((i == 0) != (j == 0)) as u32).collect()).collect();
        self.matches_template(&dims, &arrows)
    }
}

fn affine_a_template(n: usize) -> (Vec<u32>, Vec<Vec<u32>>) {
    let v = n + 1;
    let mut arrows = vec![vec![0u32; v]; v];
    for i in 0..v {
        arrows[i][(i + 1) % v] += 1;
        arrows[(i + 1) % v][i] += 1;
    }
    (vec![1; v], arrows)
}

/// `c[i][j] = ⟨χ_i, χ_std · χ_j⟩`.
#[allow(clippy::needless_range_loop)]
pub fn mckay_graph(table: &CharacterTable) -> McKayGraph {
    let n = table.len();
    let mut arrows = vec![vec![0u32; n]; n];
    for j in 0..n {
        let prod = table.product(&table.std_char, &table.characters[j]);
        let mult = table.decompose(&prod).expect("characters decompose integrally");
        for (i, m) in mult.into_iter().enumerate() {
            arrows[i][j] = u32::try_from(m).expect("multiplicities are non-negative");
        }
    }
    McKayGraph { dims: table.dims.clone(), arrows, group_fingerprint: table.group_fingerprint.clone() }
}

/// The McKay graph together with its independent recomputation.
#[derive(Clone, Debug)]
pub struct QuiverComparison {
    pub graph: McKayGraph,
    pub table: CharacterTable,
    /// Arrow matrix obtained from traces of the lifted matrices over `V_N`.
    pub lifted_arrows: Vec<Vec<u32>>,
    pub certificate: bool,
}

/// Computes the arrow counts twice: from the reduced group's character table
/// (class sums, eigenvalues in `k`), and from the lifted group element by
/// element with the eigenvalues of each matrix read in `V_N` against the
/// Hensel lift of the same root of unity.
#[allow(clippy::needless_range_loop)]
pub fn quiver_equals_mckay(lifted: &MatrixGroup<DvrRing>) -> Result<QuiverComparison, McKayError> {
    let reduced = reduce_group(lifted)?;
    let table = character_table(&reduced)?;
    let graph = mckay_graph(&table);

    let ring = lifted.ring();
    let e = table.exponent;
    let zeta = primitive_root_of_unity(ring.residue_field(), e).map_err(GroupError::from)?;
    let theta = hensel_lift_root(ring, e, &zeta).map_err(GroupError::from)?;
    let cyc = table.cyclotomic();
    let lifted_std = lifted
        .elements()
        .iter()
        .enumerate()
        .map(|(idx, g)| {
            let [a, b] = eigen_exponents(ring, g, &theta, e).ok_or_else(|| {
                GroupError::CharacterInconsistency(format!("lifted element {idx} has no μ_e eigenbasis"))
            })?;
            Ok(cyc.add(&cyc.root_power(a as i64), &cyc.root_power(b as i64)))
        })
        .collect::<Result<Vec<_>, GroupError>>()?;

    let n = table.len();
    let order = lifted.order() as i64;
    let mut lifted_arrows = vec![vec![0u32; n]; n];
    for j in 0..n {
        for i in 0..n {
            let mut acc = cyc.zero();
            for (g, std_g) in lifted_std.iter().enumerate() {
                let term = cyc.mul(&cyc.mul(std_g, table.value_at(j, g)), &cyc.conj(table.value_at(i, g)));
                acc = cyc.add(&acc, &term);
            }
            let total = cyc.as_integer(&acc).filter(|t| t % order == 0).map(|t| t / order);
            let t = total.unwrap_or(-1);
            let mc = graph.arrows[i][j] as i64;
            if t != mc {
                return Err(McKayError::MismatchDetected { i, j, mc, t });
            }
            lifted_arrows[i][j] = t as u32;
        }
    }
    Ok(QuiverComparison { certificate: lifted_arrows == graph.arrows, graph, table, lifted_arrows })
}

/// Graphviz rendering. Vertices are `W_i (dim d)`; `c` parallel arrows become
/// one edge labelled `c` when `c > 1`. With `undirected`, each symmetric pair
/// is drawn once as an undirected edge.
pub fn export_dot(graph: &McKayGraph, undirected: bool) -> String {
    let n = graph.num_vertices();
    let mut out = String::new();
    let (kw, arrow) = if undirected { ("graph", "--") } else { ("digraph", "->") };
    writeln!(out, "{kw} mckay {{").unwrap();
    for (i, d) in graph.dims.iter().enumerate() {
        writeln!(out, "    w{i} [label=\"W_{i} (dim {d})\"];").unwrap();
    }
    for i in 0..n {
        for j in 0..n {
            if undirected && j < i {
                continue;
            }
            let c = graph.arrows[i][j];
            if c == 0 {
                continue;
            }
            if c > 1 {
                writeln!(out, "    w{i} {arrow} w{j} [label=\"{c}\"];").unwrap();
            } else {
                writeln!(out, "    w{i} {arrow} w{j};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
