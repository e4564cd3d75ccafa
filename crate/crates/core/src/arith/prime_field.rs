use super::{is_prime, ArithError, Field, ScalarRing};

/// `Z/ℓ` with `u64` elements in `[0, ℓ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NonPrimeModulus(p));
        }
        if p >= 1 << 32 {
            return Err(ArithError::InvalidParameters(format!("{p} exceeds 32 bits")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Smallest primitive root modulo `p`.
    pub fn primitive_root(&self) -> u64 {
        let n = self.p - 1;
        let factors = super::prime_factors(n);
        (1..self.p).find(|&g| factors.iter().all(|r| self.pow(&g, n / r) != 1)).expect("Z/p has a primitive root")
    }
}

impl ScalarRing for PrimeField {
    type Elem = u64;

    fn residue_characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(a, self.p - 2))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {}
