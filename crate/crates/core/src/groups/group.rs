use std::collections::HashMap;

use sha2::{Digest, Sha256};

use super::{GroupError, Mat2};
use crate::arith::{gcd, lcm, DvrRing, Field, FqField, ScalarRing};

pub const DEFAULT_ORDER_CAP: usize = 512;

/// A finite matrix group with its Cayley table. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct MatrixGroup<R: ScalarRing> {
    ring: R,
    elements: Vec<Mat2<R::Elem>>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl<R: ScalarRing> MatrixGroup<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2<R::Elem>] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat2<R::Elem> {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn cayley_table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, m: &Mat2<R::Elem>) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    pub fn power(&self, i: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, i))
    }

    pub fn element_order(&self, i: usize) -> u64 {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1, |acc, i| lcm(acc, self.element_order(i)))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i + 1..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Every element has determinant 1.
    pub fn is_special(&self) -> bool {
        self.elements.iter().all(|g| self.ring.is_one(&g.det(&self.ring)))
    }

    /// SHA-256 over the sorted canonical coefficient lists, so the value does
    /// not depend on generator order.
    pub fn fingerprint(&self) -> String {
        let mut rendered: Vec<String> = self.elements.iter().map(|g| format!("{:?}", g.0)).collect();
        rendered.sort();
        let mut hasher = Sha256::new();
        hasher.update(format!("{:?}", self.ring).as_bytes());
        for r in rendered {
            hasher.update(r.as_bytes());
            hasher.update(b";");
        }
        hex::encode(hasher.finalize())
    }

    /// Builds the group structure on an element list already known to be
    /// closed; element 0 must be the identity.
    fn from_closed_elements(ring: R, elements: Vec<Mat2<R::Elem>>, generators: Vec<usize>) -> Result<Self, GroupError> {
        let index: HashMap<&Mat2<R::Elem>, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let row = elements
                .iter()
                .map(|b| {
                    index.get(&a.mul(b, &ring)).copied().ok_or_else(|| GroupError::NotAGroup {
                        reason: "element list is not closed under multiplication".into(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.push(row);
        }
        let inverses = table
            .iter()
            .map(|row| row.iter().position(|&k| k == 0).expect("finite monoid of units is a group"))
            .collect();
        Ok(Self { ring, elements, table, inverses, generators })
    }
}

/// Breadth-first closure of `generators` under right multiplication.
pub fn close_group<R: ScalarRing>(
    ring: &R,
    generators: &[Mat2<R::Elem>],
    cap: usize,
) -> Result<MatrixGroup<R>, GroupError> {
    for (i, g) in generators.iter().enumerate() {
        if !ring.is_unit(&g.det(ring)) {
            return Err(GroupError::SingularGenerator { index: i });
        }
    }
    let identity = Mat2::identity(ring);
    let mut elements = vec![identity];
    let mut index: HashMap<Mat2<R::Elem>, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        for g in generators {
            let y = x.mul(g, ring);
            if !index.contains_key(&y) {
                if elements.len() == cap {
                    return Err(GroupError::OrderCapExceeded { cap });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        head += 1;
    }
    let mut gen_idx: Vec<usize> = Vec::new();
    for g in generators {
        let i = index[g];
        if i != 0 && !gen_idx.contains(&i) {
            gen_idx.push(i);
        }
    }
    let p = ring.residue_characteristic();
    let order = elements.len();
    if (order as u64).is_multiple_of(p) {
        return Err(GroupError::CharacteristicDividesOrder { p, order });
    }
    MatrixGroup::from_closed_elements(ring.clone(), elements, gen_idx)
}

/// Entrywise reduction `GL_2(V_N) → GL_2(k)`, keeping element indices.
pub fn reduce_group(group: &MatrixGroup<DvrRing>) -> Result<MatrixGroup<FqField>, GroupError> {
    let p = group.ring.p();
    if (group.order() as u64).is_multiple_of(p) {
        return Err(GroupError::CharacteristicDividesOrder { p, order: group.order() });
    }
    let ring = group.ring.clone();
    let field = ring.residue_field().clone();
    let reduced: Vec<_> = group.elements.iter().map(|g| g.map(|x| ring.reduce(x))).collect();
    let mut seen: HashMap<&Mat2<_>, usize> = HashMap::new();
    for (i, g) in reduced.iter().enumerate() {
        if let Some(&first) = seen.get(g) {
            return Err(GroupError::InjectivityFailure { first, second: i });
        }
        seen.insert(g, i);
    }
    let out = MatrixGroup::from_closed_elements(field, reduced, group.generators.clone())?;
    if out.table != group.table {
        return Err(GroupError::InjectivityFailure { first: 0, second: 0 });
    }
    Ok(out)
}

/// Non-identity elements with `rank(σ - I) ≤ 1`.
pub fn pseudo_reflections<F: Field>(group: &MatrixGroup<F>) -> Vec<usize> {
    let f = group.ring();
    (1..group.order()).filter(|&i| f.is_zero(&group.element(i).sub_identity(f).det(f))).collect()
}

impl<R: ScalarRing> MatrixGroup<R> {
    /// Whether the characteristic is coprime to `|G|`.
    pub fn is_nonmodular(&self) -> bool {
        gcd(self.order() as u64, self.ring.residue_characteristic()) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{hensel_lift_root, primitive_root_of_unity, FqField};

    #[test]
    fn trivial_group() {
        let f = FqField::new(5, 1).unwrap();
        let g = close_group(&f, &[Mat2::identity(&f)], 16).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generator_indices().is_empty());
        assert!(pseudo_reflections(&g).is_empty());
    }

    #[test]
    fn cyclic_order_four_over_v() {
        let ring = DvrRing::new(7, 2, 5).unwrap();
        let z = primitive_root_of_unity(ring.residue_field(), 4).unwrap();
        let t = hensel_lift_root(&ring, 4, &z).unwrap();
        let tinv = ring.inv(&t).unwrap();
        let g = close_group(&ring, &[Mat2::diag(&ring, t, tinv)], 512).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_special());
        let red = reduce_group(&g).unwrap();
        assert_eq!(red.order(), 4);
        assert_eq!(red.element_order(1), 4);
    }

    #[test]
    fn characteristic_dividing_order() {
        let ring = DvrRing::new(5, 1, 3).unwrap();
        // unipotent element of order p in the residue field has order p^N over V_N
        let u = Mat2::new(ring.one(), ring.one(), ring.zero(), ring.one());
        assert_eq!(
            close_group(&ring, std::slice::from_ref(&u), 1000).unwrap_err(),
            GroupError::CharacteristicDividesOrder { p: 5, order: 125 }
        );
        assert_eq!(close_group(&ring, &[u], 100).unwrap_err(), GroupError::OrderCapExceeded { cap: 100 });
    }

    #[test]
    fn singular_generator_rejected() {
        let f = FqField::new(5, 1).unwrap();
        let s = Mat2::new(f.one(), f.one(), f.one(), f.one());
        assert_eq!(close_group(&f, &[s], 16).unwrap_err(), GroupError::SingularGenerator { index: 0 });
    }

    #[test]
    fn pseudo_reflection_fixture() {
        let f = FqField::new(7, 1).unwrap();
        let z3 = primitive_root_of_unity(&f, 3).unwrap();
        let g = close_group(&f, &[Mat2::diag(&f, z3, f.one())], 16).unwrap();
        assert_eq!(pseudo_reflections(&g), vec![1, 2]);
    }
}
