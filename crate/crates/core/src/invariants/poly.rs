use std::collections::BTreeMap;

use crate::arith::ScalarRing;
use crate::groups::Mat2;

/// Exponent vector; unused trailing variables stay 0.
pub type Exponents = [u32; 3];

/// Polynomial in two or three variables truncated above total degree `cap`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly<E> {
    nvars: usize,
    cap: u32,
    terms: BTreeMap<Exponents, E>,
}

pub fn total_degree(e: &Exponents) -> u32 {
    e.iter().sum()
}

/// Degree-`d` monomials in two variables, `x1^d, x1^(d-1) x2, …, x2^d`
/// (graded lex with `x1 > x2`).
pub fn monomials2(d: u32) -> Vec<Exponents> {
    (0..=d).map(|b| [d - b, b, 0]).collect()
}

pub fn monomial_index2(e: &Exponents) -> usize {
    e[1] as usize
}

impl<E: Clone + PartialEq> GradedPoly<E> {
    pub fn zero(nvars: usize, cap: u32) -> Self {
        assert!(nvars == 2 || nvars == 3, "two or three variables");
        Self { nvars, cap, terms: BTreeMap::new() }
    }

    pub fn constant<R: ScalarRing<Elem = E>>(ring: &R, nvars: usize, cap: u32, c: E) -> Self {
        Self::term(ring, nvars, cap, [0; 3], c)
    }

    pub fn term<R: ScalarRing<Elem = E>>(ring: &R, nvars: usize, cap: u32, e: Exponents, c: E) -> Self {
        let mut p = Self::zero(nvars, cap);
        p.add_term(ring, e, c);
        p
    }

    pub fn monomial<R: ScalarRing<Elem = E>>(ring: &R, nvars: usize, cap: u32, e: Exponents) -> Self {
        Self::term(ring, nvars, cap, e, ring.one())
    }

    /// The variable `x_{i+1}`.
    pub fn var<R: ScalarRing<Elem = E>>(ring: &R, nvars: usize, cap: u32, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(ring, nvars, cap, e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// The same polynomial with a different cap; lowering it truncates.
    pub fn with_cap(&self, cap: u32) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| total_degree(e) <= cap).map(|(e, c)| (*e, c.clone())).collect();
        Self { nvars: self.nvars, cap, terms }
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<R: ScalarRing<Elem = E>>(&self, ring: &R, e: &Exponents) -> E {
        self.terms.get(e).cloned().unwrap_or_else(|| ring.zero())
    }

    /// Adds `c·x^e`, dropping it if `e` exceeds the cap.
    pub fn add_term<R: ScalarRing<Elem = E>>(&mut self, ring: &R, e: Exponents, c: E) {
        if total_degree(&e) > self.cap || ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = ring.add(old, &c);
                if ring.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add<R: ScalarRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(ring, *e, c.clone());
        }
        out
    }

    pub fn sub<R: ScalarRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.scale(ring, &ring.neg(&ring.one())))
    }

    pub fn scale<R: ScalarRing<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        let mut out = Self::zero(self.nvars, self.cap);
        for (e, x) in &self.terms {
            out.add_term(ring, *e, ring.mul(x, c));
        }
        out
    }

    pub fn mul<R: ScalarRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.cap.min(other.cap));
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(ring, e, ring.mul(a, b));
            }
        }
        out
    }

    pub fn pow<R: ScalarRing<Elem = E>>(&self, ring: &R, k: u32) -> Self {
        let mut out = Self::constant(ring, self.nvars, self.cap, ring.one());
        for _ in 0..k {
            out = out.mul(ring, self);
        }
        out
    }

    /// Degree-`d` part.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| total_degree(e) == d).map(|(e, c)| (*e, c.clone())).collect();
        Self { nvars: self.nvars, cap: self.cap, terms }
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| total_degree(e) == d)
    }

    /// Coefficient vector of a two-variable form of degree `d` in the
    /// [`monomials2`] basis.
    pub fn to_vector<R: ScalarRing<Elem = E>>(&self, ring: &R, d: u32) -> Vec<E> {
        monomials2(d).iter().map(|e| self.coeff(ring, e)).collect()
    }

    pub fn from_vector<R: ScalarRing<Elem = E>>(ring: &R, cap: u32, d: u32, v: &[E]) -> Self {
        let mut p = Self::zero(2, cap);
        for (e, c) in monomials2(d).into_iter().zip(v) {
            p.add_term(ring, e, c.clone());
        }
        p
    }

    /// Human-readable form, highest degree first.
    pub fn render<R: ScalarRing<Elem = E>>(&self, ring: &R) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = ["x1", "x2", "x3"];
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| total_degree(b).cmp(&total_degree(a)).then(b.cmp(a)));
        keys.iter()
            .map(|e| {
                let mono: Vec<String> = (0..self.nvars)
                    .filter(|&i| e[i] > 0)
                    .map(|i| if e[i] == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e[i]) })
                    .collect();
                let c = ring.format(&self.terms[*e]);
                if mono.is_empty() {
                    c
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `f(x_i ↦ Σ_k g_ki x_k)`: the linear substitution making `GL_2` act on the
/// left of `k[x1, x2]`, so that `act(gh, f) = act(g, act(h, f))`.
pub fn act<R: ScalarRing>(ring: &R, g: &Mat2<R::Elem>, f: &GradedPoly<R::Elem>) -> GradedPoly<R::Elem> {
    assert_eq!(f.nvars(), 2, "the group acts on two variables");
    let cap = f.cap();
    let image = |i: usize| {
        let mut p = GradedPoly::zero(2, cap);
        p.add_term(ring, [1, 0, 0], g.at(0, i).clone());
        p.add_term(ring, [0, 1, 0], g.at(1, i).clone());
        p
    };
    let max_deg = f.terms().keys().map(|e| e[0].max(e[1])).max().unwrap_or(0);
    let powers = |base: GradedPoly<R::Elem>| {
        let mut v = vec![GradedPoly::constant(ring, 2, cap, ring.one())];
        for k in 1..=max_deg as usize {
            let next = v[k - 1].mul(ring, &base);
            v.push(next);
        }
        v
    };
    let (p1, p2) = (powers(image(0)), powers(image(1)));
    let mut out = GradedPoly::zero(2, cap);
    for (e, c) in f.terms() {
        let t = p1[e[0] as usize].mul(ring, &p2[e[1] as usize]).scale(ring, c);
        out = out.add(ring, &t);
    }
    out
}

/// Matrix of `act(g, ·)` on degree-`d` forms; column `j` is the image of the
/// `j`-th monomial of [`monomials2`].
pub fn action_matrix<R: ScalarRing>(ring: &R, g: &Mat2<R::Elem>, d: u32) -> Vec<Vec<R::Elem>> {
    let monos = monomials2(d);
    let n = monos.len();
    let mut m = vec![vec![ring.zero(); n]; n];
    for (j, e) in monos.iter().enumerate() {
        let img = act(ring, g, &GradedPoly::monomial(ring, 2, d, *e));
        for (ei, c) in img.terms() {
            m[monomial_index2(ei)][j] = c.clone();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{primitive_root_of_unity, FqField};
    use proptest::prelude::*;

    fn f49() -> FqField {
        FqField::new(7, 2).unwrap()
    }

    fn random_poly(f: &FqField, coeffs: &[u64], cap: u32) -> GradedPoly<crate::FqScalar> {
        let mut p = GradedPoly::zero(2, cap);
        let mut k = 0;
        for d in 0..=cap {
            for e in monomials2(d) {
                if k < coeffs.len() {
                    p.add_term(f, e, f.element(coeffs[k]));
                }
                k += 1;
            }
        }
        p
    }

    #[test]
    fn identity_acts_trivially() {
        let f = f49();
        let p = random_poly(&f, &[3, 0, 5, 11, 48, 2, 9], 4);
        assert_eq!(act(&f, &Mat2::identity(&f), &p), p);
    }

    #[test]
    fn diagonal_action_on_monomial() {
        let f = f49();
        let z = primitive_root_of_unity(&f, 8).unwrap();
        let zi = f.inv(&z).unwrap();
        let g = Mat2::diag(&f, z.clone(), zi);
        let p = GradedPoly::monomial(&f, 2, 9, [5, 2, 0]);
        let expected = p.scale(&f, &f.pow(&z, 3));
        assert_eq!(act(&f, &g, &p), expected);
    }

    #[test]
    fn truncation_drops_high_terms() {
        let f = f49();
        let x = GradedPoly::var(&f, 2, 3, 0);
        assert!(x.pow(&f, 4).is_zero());
        assert_eq!(x.pow(&f, 3).terms().len(), 1);
    }

    proptest! {
        #[test]
        fn left_action_law(
            a in prop::array::uniform4(0u64..49),
            b in prop::array::uniform4(0u64..49),
            coeffs in prop::collection::vec(0u64..49, 1..15),
        ) {
            let f = f49();
            let g = Mat2(a.map(|i| f.element(i)));
            let h = Mat2(b.map(|i| f.element(i)));
            let p = random_poly(&f, &coeffs, 4);
            let gh = g.mul(&h, &f);
            prop_assert_eq!(act(&f, &gh, &p), act(&f, &g, &act(&f, &h, &p)));
        }
    }
}
