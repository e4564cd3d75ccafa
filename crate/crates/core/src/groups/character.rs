use serde::{Deserialize, Serialize};

use super::{conjugacy_classes, ConjugacyClasses, GroupError, Mat2, MatrixGroup};
use crate::arith::{is_prime, primitive_root_of_unity, CycloInt, Cyclotomic, FqField, PrimeField, ScalarRing};
use crate::linalg;

/// Which backend computes the irreducible characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterMethod {
    /// Direct weight enumeration for abelian groups, Dixon otherwise.
    Auto,
    /// Burnside–Dixon class-algebra eigenvectors for every group.
    Dixon,
}

const AUX_PRIME_BOUND: u64 = 10_000_000;

/// Ordinary character table with values in `Z[ζ_e]`, `e = exp(G)`.
///
/// `ζ_e` corresponds to the residue field's primitive `e`-th root of unity
/// (see [`primitive_root_of_unity`]); the standard character and its
/// eigenvalue exponents are expressed with respect to that choice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group_order: usize,
    pub exponent: u64,
    pub group_fingerprint: String,
    pub abelian: bool,
    pub classes: ConjugacyClasses,
    pub class_inverse: Vec<usize>,
    /// `characters[i][k]` is `χ_i` on class `k`. Sorted by degree, then by
    /// values; the trivial character is always first.
    pub characters: Vec<Vec<CycloInt>>,
    pub dims: Vec<u32>,
    /// Trace of the defining 2-dimensional representation.
    pub std_char: Vec<CycloInt>,
    /// Per class, the exponents `(j1, j2)` of the defining matrix's
    /// eigenvalues `ζ^j1, ζ^j2`, with `j1 ≤ j2`.
    pub std_eigen: Vec<[u64; 2]>,
}

impl CharacterTable {
    pub fn cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::new(self.exponent)
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// `χ(g)` for an element index.
    pub fn value_at(&self, chi: usize, element: usize) -> &CycloInt {
        &self.characters[chi][self.classes.class_of[element]]
    }

    pub fn product(&self, a: &[CycloInt], b: &[CycloInt]) -> Vec<CycloInt> {
        let cyc = self.cyclotomic();
        a.iter().zip(b).map(|(x, y)| cyc.mul(x, y)).collect()
    }

    /// `⟨a, b⟩ = |G|^-1 Σ_g a(g) conj(b(g))`, if it is a rational integer.
    pub fn inner_product(&self, a: &[CycloInt], b: &[CycloInt]) -> Option<i64> {
        let cyc = self.cyclotomic();
        let mut acc = cyc.zero();
        for ((x, y), &size) in a.iter().zip(b).zip(&self.classes.sizes) {
            acc = cyc.add(&acc, &cyc.scale(&cyc.mul(x, &cyc.conj(y)), size as i64));
        }
        let total = cyc.as_integer(&acc)?;
        let n = self.group_order as i64;
        (total % n == 0).then_some(total / n)
    }

    /// Multiplicity of every irreducible in a class function.
    pub fn decompose(&self, class_fn: &[CycloInt]) -> Option<Vec<i64>> {
        self.characters.iter().map(|chi| self.inner_product(class_fn, chi)).collect()
    }

    /// The determinant character `g ↦ det(g)`.
    pub fn det_char(&self) -> Vec<CycloInt> {
        let cyc = self.cyclotomic();
        self.std_eigen.iter().map(|[a, b]| cyc.root_power((a + b) as i64)).collect()
    }

    pub fn index_of(&self, class_fn: &[CycloInt]) -> Option<usize> {
        self.characters.iter().position(|c| c.as_slice() == class_fn)
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    /// `χ_i(g)` as an element of a ring containing a chosen image of `ζ_e`.
    pub fn evaluate<R: ScalarRing>(&self, ring: &R, zeta: &R::Elem, chi: usize, element: usize) -> R::Elem {
        self.cyclotomic().evaluate(ring, self.value_at(chi, element), zeta)
    }
}

/// Exponents `j1 ≤ j2` with eigenvalues `ζ^j1, ζ^j2`, matched against trace
/// and determinant; `None` if `g` is not diagonalizable over `μ_e`.
pub fn eigen_exponents<R: ScalarRing>(ring: &R, g: &Mat2<R::Elem>, zeta: &R::Elem, e: u64) -> Option<[u64; 2]> {
    let powers: Vec<R::Elem> = (0..e).map(|j| ring.pow(zeta, j)).collect();
    let tr = g.trace(ring);
    let det = g.det(ring);
    for j1 in 0..e {
        for j2 in j1..e {
            let (a, b) = (j1 as usize, j2 as usize);
            if ring.add(&powers[a], &powers[b]) == tr && powers[(a + b) % e as usize] == det {
                return Some([j1, j2]);
            }
        }
    }
    None
}

pub fn character_table(group: &MatrixGroup<FqField>) -> Result<CharacterTable, GroupError> {
    character_table_with(group, CharacterMethod::Auto)
}

pub fn character_table_with(
    group: &MatrixGroup<FqField>,
    method: CharacterMethod,
) -> Result<CharacterTable, GroupError> {
    let field = group.ring();
    let order = group.order();
    if !group.is_nonmodular() {
        return Err(GroupError::CharacteristicDividesOrder { p: field.p(), order });
    }
    let classes = conjugacy_classes(group);
    let e = group.exponent();
    let cyc = Cyclotomic::new(e);
    let zeta = primitive_root_of_unity(field, e)?;

    let mut std_eigen = Vec::with_capacity(classes.len());
    for &rep in &classes.representatives {
        let ex = eigen_exponents(field, group.element(rep), &zeta, e).ok_or_else(|| {
            GroupError::CharacterInconsistency(format!("element {rep} is not diagonalizable over μ_{e}"))
        })?;
        std_eigen.push(ex);
    }
    let std_char: Vec<CycloInt> =
        std_eigen.iter().map(|&[a, b]| cyc.add(&cyc.root_power(a as i64), &cyc.root_power(b as i64))).collect();
    let class_inverse = classes.representatives.iter().map(|&r| classes.class_of[group.inverse(r)]).collect();

    let abelian = group.is_abelian();
    let raw = if abelian && method == CharacterMethod::Auto {
        abelian_characters(group, &classes, &cyc, e)
    } else {
        dixon_characters(group, &classes, &cyc, e)?
    };

    let mut rows: Vec<(u32, Vec<CycloInt>)> = raw
        .into_iter()
        .map(|vals| {
            let dim = cyc.as_integer(&vals[0]).unwrap_or(0) as u32;
            (dim, vals)
        })
        .collect();
    let one = cyc.one();
    rows.sort_by(|(da, va), (db, vb)| {
        let ta = va.iter().all(|v| *v == one);
        let tb = vb.iter().all(|v| *v == one);
        (da, !ta, va).cmp(&(db, !tb, vb))
    });
    let (dims, characters): (Vec<u32>, Vec<Vec<CycloInt>>) = rows.into_iter().unzip();
    let table = CharacterTable {
        group_order: order,
        exponent: e,
        group_fingerprint: group.fingerprint(),
        abelian,
        classes,
        class_inverse,
        characters,
        dims,
        std_char,
        std_eigen,
    };
    check_table(&table)?;
    Ok(table)
}

/// Row orthonormality, class count, `Σ dim² = |G|`, trivial character first.
fn check_table(t: &CharacterTable) -> Result<(), GroupError> {
    let fail = |msg: String| Err(GroupError::CharacterInconsistency(msg));
    if t.len() != t.num_classes() {
        return fail(format!("{} characters for {} classes", t.len(), t.num_classes()));
    }
    let sum: u64 = t.dims.iter().map(|&d| d as u64 * d as u64).sum();
    if sum != t.group_order as u64 {
        return fail(format!("Σ dim² = {sum} ≠ |G| = {}", t.group_order));
    }
    let one = t.cyclotomic().one();
    if t.dims[0] != 1 || t.characters[0].iter().any(|v| *v != one) {
        return fail("trivial character is not first".into());
    }
    for i in 0..t.len() {
        for j in i..t.len() {
            let ip = t.inner_product(&t.characters[i], &t.characters[j]);
            if ip != Some((i == j) as i64) {
                return fail(format!("⟨χ_{i}, χ_{j}⟩ = {ip:?}"));
            }
        }
    }
    Ok(())
}

/// Linear characters of an abelian group, extended generator by generator:
/// if `g^k` is the first power of `g` inside the current subgroup `H`, each
/// character of `H` has exactly `k` extensions to `⟨H, g⟩`.
fn abelian_characters(
    group: &MatrixGroup<FqField>,
    classes: &ConjugacyClasses,
    cyc: &Cyclotomic,
    e: u64,
) -> Vec<Vec<CycloInt>> {
    let n = group.order();
    let mut members = vec![0usize];
    let mut in_h = vec![false; n];
    in_h[0] = true;
    // exponent of ζ_e on each member of H
    let mut chars: Vec<Vec<u64>> = vec![vec![0; n]];
    for &g in group.generator_indices() {
        if in_h[g] {
            continue;
        }
        let mut k = 1u64;
        let mut gk = g;
        while !in_h[gk] {
            gk = group.mul(gk, g);
            k += 1;
        }
        let mut cosets = Vec::with_capacity(members.len() * k as usize);
        let mut gj = 0usize;
        for j in 0..k {
            for &h in &members {
                cosets.push((j, h, group.mul(gj, h)));
            }
            gj = group.mul(gj, g);
        }
        let mut next = Vec::with_capacity(chars.len() * k as usize);
        for chi in &chars {
            let t = chi[gk];
            debug_assert_eq!(t % k, 0, "ord(g) | e, so k | e and χ(g^k) is a k-th power");
            for s in 0..k {
                let c = (t / k + s * (e / k)) % e;
                let mut ext = vec![0u64; n];
                for &(j, h, x) in &cosets {
                    ext[x] = (j * c + chi[h]) % e;
                }
                next.push(ext);
            }
        }
        chars = next;
        members = cosets.iter().map(|&(_, _, x)| x).collect();
        for &x in &members {
            in_h[x] = true;
        }
    }
    chars
        .into_iter()
        .map(|chi| classes.representatives.iter().map(|&r| cyc.root_power(chi[r] as i64)).collect())
        .collect()
}

fn aux_prime(e: u64, order: u64) -> Result<u64, GroupError> {
    let lower = 2 * order;
    let mut l = e + 1;
    while l < AUX_PRIME_BOUND {
        if l > lower && is_prime(l) {
            return Ok(l);
        }
        l += e;
    }
    Err(GroupError::AuxPrimeSearchFailed { exponent: e, lower, bound: AUX_PRIME_BOUND })
}

/// Dixon's method: central characters `ω` are the common eigenvectors of the
/// class-multiplication matrices over `F_ℓ`; degrees come from the
/// orthogonality relation and values are lifted to `Z[ζ_e]` through the
/// eigenvalue multiplicities of each element.
fn dixon_characters(
    group: &MatrixGroup<FqField>,
    classes: &ConjugacyClasses,
    cyc: &Cyclotomic,
    e: u64,
) -> Result<Vec<Vec<CycloInt>>, GroupError> {
    let fail = |msg: String| GroupError::CharacterInconsistency(msg);
    let order = group.order() as u64;
    let ell = aux_prime(e, order)?;
    let fl = PrimeField::new(ell).expect("aux prime is prime");
    let r = classes.len();
    let members: Vec<Vec<usize>> = (0..r).map(|c| classes.members(c).collect()).collect();

    // a[i][j][k] = #{(x, y) ∈ C_i × C_j : xy = z} for a fixed z ∈ C_k
    let mut structure = vec![vec![vec![0u64; r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            let row = &mut structure[i][j];
            for &x in &members[i] {
                for &y in &members[j] {
                    row[classes.class_of[group.mul(x, y)]] += 1;
                }
            }
            for (k, count) in row.iter_mut().enumerate() {
                *count /= classes.sizes[k] as u64;
            }
        }
    }
    let class_matrix =
        |i: usize| -> Vec<Vec<u64>> { (0..r).map(|j| (0..r).map(|k| structure[i][j][k] % ell).collect()).collect() };

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|a| (0..r).map(|b| (a == b) as u64).collect()).collect()];
    for i in 0..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(i);
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let u = basis.len();
            // columns: images M b_a, and b_a itself
            let images: Vec<Vec<u64>> = basis.iter().map(|b| linalg::mat_vec(&fl, &m, b)).collect();
            let mut found = 0;
            for lambda in 0..ell {
                let system: Vec<Vec<u64>> = (0..r)
                    .map(|row| (0..u).map(|a| fl.sub(&images[a][row], &fl.mul(&lambda, &basis[a][row]))).collect())
                    .collect();
                let ker = linalg::kernel(&fl, system, u);
                if ker.rank() == 0 {
                    continue;
                }
                found += ker.rank();
                let sub: Vec<Vec<u64>> = ker
                    .rows
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|row| (0..u).fold(0, |acc, a| fl.add(&acc, &fl.mul(&c[a], &basis[a][row]))))
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == u {
                    break;
                }
            }
            if found != u {
                return Err(fail(format!("class matrix {i} is not diagonalizable over F_{ell}")));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(fail(format!("{} common eigenspaces for {r} classes", spaces.len())));
    }

    let z = fl.pow(&fl.primitive_root(), (ell - 1) / e);
    let z_inv = fl.inv(&z).expect("unit");
    let e_inv = fl.inv(&fl.from_i64(e as i64)).expect("e < ℓ");
    let power_class: Vec<Vec<usize>> = classes
        .representatives
        .iter()
        .map(|&g| {
            let mut out = Vec::with_capacity(e as usize);
            let mut x = 0;
            for _ in 0..e {
                out.push(classes.class_of[x]);
                x = group.mul(x, g);
            }
            out
        })
        .collect();
    let max_dim = (order as f64).sqrt() as u64 + 1;

    let mut result = Vec::with_capacity(r);
    for space in spaces {
        let w0 = &space[0];
        let lead = fl.inv(&w0[0]).ok_or_else(|| fail("central character vanishes on 1".into()))?;
        let w: Vec<u64> = w0.iter().map(|x| fl.mul(x, &lead)).collect();
        let size_inv: Vec<u64> =
            classes.sizes.iter().map(|&s| fl.inv(&fl.from_i64(s as i64)).expect("|C| < ℓ")).collect();
        let norm = (0..r).fold(0, |acc, k| {
            let kk = classes.class_of[group.inverse(classes.representatives[k])];
            fl.add(&acc, &fl.mul(&fl.mul(&w[k], &w[kk]), &size_inv[k]))
        });
        let target = fl.mul(&fl.from_i64(order as i64), &fl.inv(&norm).ok_or_else(|| fail("degenerate norm".into()))?);
        let dim = (1..=max_dim)
            .find(|&d| d * d <= order && fl.mul(&d, &d) == target)
            .ok_or_else(|| fail("no integral degree".into()))?;
        let values: Vec<u64> = (0..r).map(|k| fl.mul(&fl.mul(&dim, &w[k]), &size_inv[k])).collect();
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let mut counts = vec![0i64; e as usize];
            let mut total = 0;
            for (j, slot) in counts.iter_mut().enumerate() {
                let zj = fl.pow(&z_inv, j as u64);
                let mut acc = 0;
                let mut zjs = 1;
                for s in 0..e as usize {
                    acc = fl.add(&acc, &fl.mul(&values[power_class[k][s]], &zjs));
                    zjs = fl.mul(&zjs, &zj);
                }
                let mult = fl.mul(&acc, &e_inv);
                if mult > dim {
                    return Err(fail(format!("eigenvalue multiplicity {mult} exceeds degree {dim}")));
                }
                *slot = mult as i64;
                total += mult;
            }
            if total != dim {
                return Err(fail("eigenvalue multiplicities do not sum to the degree".into()));
            }
            row.push(cyc.from_exponent_counts(&counts));
        }
        result.push(row);
    }
    Ok(result)
}

/// Multiplicities of each irreducible in `W_a ⊗ W_b`.
pub fn tensor_multiplicities(table: &CharacterTable, a: usize, b: usize) -> Vec<u32> {
    let prod = table.product(&table.characters[a], &table.characters[b]);
    table
        .decompose(&prod)
        .expect("products of characters decompose integrally")
        .into_iter()
        .map(|m| u32::try_from(m).expect("multiplicities are non-negative"))
        .collect()
}
