use serde::{Deserialize, Serialize};

use super::{divisors, ScalarRing};

/// The ring of cyclotomic integers `Z[ζ_e] = Z[t]/(Φ_e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u64,
    /// `Φ_e`, monic, low-to-high.
    phi: Vec<i64>,
}

/// An element of `Z[ζ_e]` in the power basis `1, ζ, …, ζ^(φ(e)-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycloInt(Vec<i64>);

impl CycloInt {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
}

impl Cyclotomic {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Self { order, phi: cyclotomic_polynomial(order) }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(e)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn zero(&self) -> CycloInt {
        CycloInt(vec![0; self.degree()])
    }

    pub fn from_integer(&self, c: i64) -> CycloInt {
        let mut v = vec![0; self.degree()];
        v[0] = c;
        CycloInt(v)
    }

    pub fn one(&self) -> CycloInt {
        self.from_integer(1)
    }

    /// `ζ^k`, any integer `k`.
    pub fn root_power(&self, k: i64) -> CycloInt {
        let e = self.order as i64;
        let mut raw = vec![0; self.order as usize];
        raw[k.rem_euclid(e) as usize] = 1;
        self.reduce(raw)
    }

    /// `Σ_j counts[j] ζ^j` for `counts` indexed by exponents `0..e`.
    pub fn from_exponent_counts(&self, counts: &[i64]) -> CycloInt {
        self.reduce(counts.to_vec())
    }

    pub fn add(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        CycloInt(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        CycloInt(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, a: &CycloInt, c: i64) -> CycloInt {
        CycloInt(a.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        let d = self.degree();
        let mut prod = vec![0i64; 2 * d - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }

    /// Complex conjugation `ζ ↦ ζ^(-1)`.
    pub fn conj(&self, a: &CycloInt) -> CycloInt {
        let e = self.order as usize;
        let mut raw = vec![0i64; e];
        for (j, &c) in a.0.iter().enumerate() {
            raw[(e - j) % e] += c;
        }
        self.reduce(raw)
    }

    /// The rational integer `a` represents, if any.
    pub fn as_integer(&self, a: &CycloInt) -> Option<i64> {
        a.0[1..].iter().all(|&c| c == 0).then_some(a.0[0])
    }

    /// Image under the ring map `ζ ↦ zeta`.
    pub fn evaluate<R: ScalarRing>(&self, ring: &R, a: &CycloInt, zeta: &R::Elem) -> R::Elem {
        let mut acc = ring.zero();
        for &c in a.0.iter().rev() {
            acc = ring.add(&ring.mul(&acc, zeta), &ring.from_i64(c));
        }
        acc
    }

    /// Remainder of an integer polynomial modulo `Φ_e`.
    fn reduce(&self, mut raw: Vec<i64>) -> CycloInt {
        let d = self.degree();
        while raw.len() > d {
            let top = raw.pop().expect("nonempty");
            if top != 0 {
                let shift = raw.len() - d;
                for (i, &c) in self.phi[..d].iter().enumerate() {
                    raw[shift + i] -= top * c;
                }
            }
        }
        raw.resize(d, 0);
        CycloInt(raw)
    }
}

/// `Φ_n = (t^n - 1) / Π_{d | n, d < n} Φ_d`.
fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut quot = vec![0i64; num.len() - dl + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1];
        quot[k] = c;
        for (i, &di) in den.iter().enumerate() {
            rem[k + i] -= c * di;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_sum_to_mobius() {
        // Σ_{j<e} ζ^j = 0 for e > 1
        for e in 2..=12u64 {
            let c = Cyclotomic::new(e);
            let s = c.from_exponent_counts(&vec![1; e as usize]);
            assert_eq!(c.as_integer(&s), Some(0), "e={e}");
        }
    }

    #[test]
    fn conjugation_inverts_roots() {
        let c = Cyclotomic::new(8);
        for k in 0..8 {
            let z = c.root_power(k);
            assert_eq!(c.mul(&z, &c.conj(&z)), c.one());
            assert_eq!(c.conj(&z), c.root_power(-k));
        }
    }
}
