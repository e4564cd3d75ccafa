use serde::{Deserialize, Serialize};

use super::MatrixGroup;
use crate::arith::ScalarRing;

/// Conjugacy classes, ordered by smallest member; class 0 is `{1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClasses {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of.iter().enumerate().filter(move |(_, &c)| c == class).map(|(i, _)| i)
    }
}

pub fn conjugacy_classes<R: ScalarRing>(group: &MatrixGroup<R>) -> ConjugacyClasses {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(x);
        let mut size = 0;
        for g in 0..n {
            let y = group.mul(group.mul(g, x), group.inverse(g));
            if class_of[y] == usize::MAX {
                class_of[y] = c;
                size += 1;
            }
        }
        sizes.push(size);
    }
    ConjugacyClasses { class_of, representatives, sizes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DvrRing;
    use crate::groups::{lift_group, CyclotomicMatrixSpec};

    #[test]
    fn quaternion_classes() {
        let ring = DvrRing::new(5, 1, 4).unwrap();
        let g = lift_group(&CyclotomicMatrixSpec::quaternion(), &ring, 64).unwrap();
        let cc = conjugacy_classes(&g);
        let mut sizes = cc.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(cc.sizes[0], 1);
        assert_eq!(cc.representatives[0], 0);
        // stable under conjugation
        for x in 0..8 {
            for h in 0..8 {
                let y = g.mul(g.mul(h, x), g.inverse(h));
                assert_eq!(cc.class_of[x], cc.class_of[y]);
            }
        }
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let ring = DvrRing::new(7, 1, 3).unwrap();
        let g = lift_group(&CyclotomicMatrixSpec::cyclic_an(5), &ring, 64).unwrap();
        let cc = conjugacy_classes(&g);
        assert_eq!(cc.len(), 6);
        assert!(cc.sizes.iter().all(|&s| s == 1));
    }
}
