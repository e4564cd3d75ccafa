use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

use super::{is_prime, prime_factors, ArithError, Field, ScalarRing};

type Coeffs = SmallVec<[u64; 4]>;

/// `Z/q[t]/(h)` with `q = p^N` and `h` monic of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct GaloisCore {
    p: u64,
    m: usize,
    precision: u32,
    q: u64,
    /// Monic modulus, low-to-high, length `m + 1`.
    poly: Vec<u64>,
}

impl GaloisCore {
    fn new(p: u64, precision: u32, poly: Vec<u64>) -> Result<Self, ArithError> {
        let m = poly.len() - 1;
        let mut q: u64 = 1;
        for _ in 0..precision {
            q = q
                .checked_mul(p)
                .filter(|&q| q < (1 << 62))
                .ok_or_else(|| ArithError::InvalidParameters(format!("{p}^{precision} overflows")))?;
        }
        Ok(Self { p, m, precision, q, poly })
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }

    fn constant(&self, c: u64) -> Coeffs {
        let mut out: Coeffs = smallvec![0; self.m];
        out[0] = c % self.q;
        out
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Coeffs {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.q {
                    s - self.q
                } else {
                    s
                }
            })
            .collect()
    }

    fn neg(&self, a: &[u64]) -> Coeffs {
        a.iter().map(|&x| if x == 0 { 0 } else { self.q - x }).collect()
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Coeffs {
        a.iter().zip(b).map(|(&x, &y)| if x >= y { x - y } else { x + self.q - y }).collect()
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.q as u128) as u64
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let m = self.m;
        if m == 1 {
            return smallvec![self.mulmod(a[0], b[0])];
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let t = prod[i + j] + self.mulmod(x, y);
                prod[i + j] = if t >= self.q { t - self.q } else { t };
            }
        }
        // t^m = -(h_0 + h_1 t + ... + h_{m-1} t^{m-1})
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let s = self.mulmod(c, self.poly[j]);
                let slot = &mut prod[k - m + j];
                *slot = if *slot >= s { *slot - s } else { *slot + self.q - s };
            }
        }
        prod.truncate(m);
        prod.into_iter().collect()
    }

    fn format(&self, a: &[u64]) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

/// The finite field `F_{p^m} = F_p[t]/(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqField {
    core: GaloisCore,
    order: u64,
    generator: FqScalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqScalar {
    coeffs: Coeffs,
}

impl FqScalar {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// JSON form of a scalar: coefficients in `[0, p^N)` plus ring parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub coeffs: Vec<u64>,
    pub p: u64,
    pub m: usize,
    #[serde(rename = "N")]
    pub precision: u32,
}

/// Builds `F_{p^m}` with the lexicographically smallest monic irreducible
/// modulus, coefficient vectors compared constant term first.
pub fn make_field(p: u64, m: usize) -> Result<FqField, ArithError> {
    FqField::new(p, m)
}

impl FqField {
    pub fn new(p: u64, m: usize) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NonPrimeModulus(p));
        }
        if m == 0 {
            return Err(ArithError::InvalidParameters("extension degree must be ≥ 1".into()));
        }
        checked_pow(p, m as u32)
            .filter(|&o| o < (1 << 40))
            .ok_or_else(|| ArithError::InvalidParameters(format!("{p}^{m} is too large")))?;
        let poly = smallest_irreducible(p, m);
        Self::with_modulus(p, poly.into_iter().take(m).collect())
    }

    /// Field with an explicit modulus `t^m + Σ low[i] t^i`; `low` has length `m`.
    pub fn with_modulus(p: u64, low: Vec<u64>) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NonPrimeModulus(p));
        }
        let m = low.len();
        if m == 0 {
            return Err(ArithError::InvalidParameters("empty modulus".into()));
        }
        let mut poly: Vec<u64> = low.iter().map(|c| c % p).collect();
        poly.push(1);
        if !is_irreducible(p, &poly) {
            return Err(ArithError::InvalidParameters(format!("modulus {poly:?} is reducible over F_{p}")));
        }
        let order = checked_pow(p, m as u32)
            .filter(|&o| o < (1 << 40))
            .ok_or_else(|| ArithError::InvalidParameters(format!("{p}^{m} is too large")))?;
        let core = GaloisCore::new(p, 1, poly)?;
        let mut field = Self { core, order, generator: FqScalar { coeffs: smallvec![0; m] } };
        field.generator = field.find_generator();
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.core.p
    }

    pub fn degree(&self) -> usize {
        self.core.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus, low-to-high including the leading 1.
    pub fn modulus_poly(&self) -> &[u64] {
        &self.core.poly
    }

    /// Smallest generator of the multiplicative group in enumeration order.
    pub fn multiplicative_generator(&self) -> &FqScalar {
        &self.generator
    }

    /// The `index`-th element in the fixed enumeration order (constant term
    /// most significant).
    pub fn element(&self, mut index: u64) -> FqScalar {
        let m = self.core.m;
        let mut coeffs: Coeffs = smallvec![0; m];
        for slot in coeffs.iter_mut().rev() {
            *slot = index % self.core.p;
            index /= self.core.p;
        }
        FqScalar { coeffs }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqScalar> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FqScalar {
        let mut c: Coeffs = smallvec![0; self.core.m];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.core.p;
        }
        FqScalar { coeffs: c }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FqScalar) -> u64 {
        let n = self.order - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord.is_multiple_of(r) && self.is_one(&self.pow(a, ord / r)) {
                ord /= r;
            }
        }
        ord
    }

    pub fn to_json(&self, a: &FqScalar) -> ScalarJson {
        ScalarJson { coeffs: a.coeffs.to_vec(), p: self.p(), m: self.degree(), precision: 1 }
    }

    pub fn from_json(&self, j: &ScalarJson) -> Result<FqScalar, ArithError> {
        if j.p != self.p() || j.m != self.degree() || j.precision != 1 || j.coeffs.len() != j.m {
            return Err(ArithError::InvalidParameters("scalar belongs to another field".into()));
        }
        if j.coeffs.iter().any(|&c| c >= self.p()) {
            return Err(ArithError::InvalidParameters("coefficient out of range".into()));
        }
        Ok(self.from_coeffs(&j.coeffs))
    }

    fn find_generator(&self) -> FqScalar {
        let n = self.order - 1;
        let factors = prime_factors(n);
        (1..self.order)
            .map(|i| self.element(i))
            .find(|g| !self.is_zero(g) && factors.iter().all(|r| !self.is_one(&self.pow(g, n / r))))
            .expect("finite field has a cyclic unit group")
    }
}

impl ScalarRing for FqField {
    type Elem = FqScalar;

    fn residue_characteristic(&self) -> u64 {
        self.core.p
    }
    fn zero(&self) -> FqScalar {
        FqScalar { coeffs: smallvec![0; self.core.m] }
    }
    fn one(&self) -> FqScalar {
        FqScalar { coeffs: self.core.constant(1) }
    }
    fn from_i64(&self, v: i64) -> FqScalar {
        FqScalar { coeffs: self.core.constant(self.core.reduce_i64(v)) }
    }
    fn add(&self, a: &FqScalar, b: &FqScalar) -> FqScalar {
        FqScalar { coeffs: self.core.add(&a.coeffs, &b.coeffs) }
    }
    fn sub(&self, a: &FqScalar, b: &FqScalar) -> FqScalar {
        FqScalar { coeffs: self.core.sub(&a.coeffs, &b.coeffs) }
    }
    fn neg(&self, a: &FqScalar) -> FqScalar {
        FqScalar { coeffs: self.core.neg(&a.coeffs) }
    }
    fn mul(&self, a: &FqScalar, b: &FqScalar) -> FqScalar {
        FqScalar { coeffs: self.core.mul(&a.coeffs, &b.coeffs) }
    }
    fn is_zero(&self, a: &FqScalar) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }
    fn inv(&self, a: &FqScalar) -> Option<FqScalar> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.order - 2))
        }
    }
    fn format(&self, a: &FqScalar) -> String {
        self.core.format(&a.coeffs)
    }
}

impl Field for FqField {}

/// The truncated unramified DVR `V_N = Z/p^N[t]/(h)`; `h` is the residue
/// field's modulus read with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DvrRing {
    core: GaloisCore,
    field: FqField,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DvrScalar {
    coeffs: Coeffs,
}

impl DvrScalar {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl DvrRing {
    pub fn new(p: u64, m: usize, precision: u32) -> Result<Self, ArithError> {
        Self::over(FqField::new(p, m)?, precision)
    }

    pub fn over(field: FqField, precision: u32) -> Result<Self, ArithError> {
        if precision == 0 {
            return Err(ArithError::InvalidParameters("precision must be ≥ 1".into()));
        }
        let core = GaloisCore::new(field.p(), precision, field.core.poly.clone())?;
        Ok(Self { core, field })
    }

    pub fn p(&self) -> u64 {
        self.core.p
    }

    pub fn degree(&self) -> usize {
        self.core.m
    }

    pub fn precision(&self) -> u32 {
        self.core.precision
    }

    /// `p^N`.
    pub fn modulus(&self) -> u64 {
        self.core.q
    }

    pub fn lifted_modulus(&self) -> &[u64] {
        &self.core.poly
    }

    pub fn residue_field(&self) -> &FqField {
        &self.field
    }

    pub fn reduce(&self, x: &DvrScalar) -> FqScalar {
        FqScalar { coeffs: x.coeffs.iter().map(|c| c % self.core.p).collect() }
    }

    /// Coefficientwise lift with representatives in `[0, p)`.
    pub fn lift(&self, x: &FqScalar) -> DvrScalar {
        DvrScalar { coeffs: x.coeffs.clone() }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> DvrScalar {
        let mut c: Coeffs = smallvec![0; self.core.m];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.core.q;
        }
        DvrScalar { coeffs: c }
    }

    pub fn to_json(&self, a: &DvrScalar) -> ScalarJson {
        ScalarJson { coeffs: a.coeffs.to_vec(), p: self.p(), m: self.degree(), precision: self.precision() }
    }

    pub fn from_json(&self, j: &ScalarJson) -> Result<DvrScalar, ArithError> {
        if j.p != self.p() || j.m != self.degree() || j.precision != self.precision() || j.coeffs.len() != j.m {
            return Err(ArithError::InvalidParameters("scalar belongs to another ring".into()));
        }
        if j.coeffs.iter().any(|&c| c >= self.modulus()) {
            return Err(ArithError::InvalidParameters("coefficient out of range".into()));
        }
        Ok(self.from_coeffs(&j.coeffs))
    }
}

impl ScalarRing for DvrRing {
    type Elem = DvrScalar;

    fn residue_characteristic(&self) -> u64 {
        self.core.p
    }
    fn zero(&self) -> DvrScalar {
        DvrScalar { coeffs: smallvec![0; self.core.m] }
    }
    fn one(&self) -> DvrScalar {
        DvrScalar { coeffs: self.core.constant(1) }
    }
    fn from_i64(&self, v: i64) -> DvrScalar {
        DvrScalar { coeffs: self.core.constant(self.core.reduce_i64(v)) }
    }
    fn add(&self, a: &DvrScalar, b: &DvrScalar) -> DvrScalar {
        DvrScalar { coeffs: self.core.add(&a.coeffs, &b.coeffs) }
    }
    fn sub(&self, a: &DvrScalar, b: &DvrScalar) -> DvrScalar {
        DvrScalar { coeffs: self.core.sub(&a.coeffs, &b.coeffs) }
    }
    fn neg(&self, a: &DvrScalar) -> DvrScalar {
        DvrScalar { coeffs: self.core.neg(&a.coeffs) }
    }
    fn mul(&self, a: &DvrScalar, b: &DvrScalar) -> DvrScalar {
        DvrScalar { coeffs: self.core.mul(&a.coeffs, &b.coeffs) }
    }
    fn is_zero(&self, a: &DvrScalar) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// Units are exactly the elements with nonzero reduction. The inverse
    /// starts from the residue-field inverse and is refined by the Newton step
    /// `b <- b(2 - ab)`, which doubles the p-adic precision each round.
    fn inv(&self, a: &DvrScalar) -> Option<DvrScalar> {
        let b0 = self.field.inv(&self.reduce(a))?;
        let mut b = self.lift(&b0);
        let two = self.from_i64(2);
        let max_steps = ceil_log2(self.precision()) + 1;
        for _ in 0..=max_steps {
            let ab = self.mul(a, &b);
            if self.is_one(&ab) {
                return Some(b);
            }
            b = self.mul(&b, &self.sub(&two, &ab));
        }
        unreachable!("Newton inversion converges for units")
    }

    fn format(&self, a: &DvrScalar) -> String {
        self.core.format(&a.coeffs)
    }
}

/// Reduction `V_N → k`.
pub fn reduce_scalar(ring: &DvrRing, x: &DvrScalar) -> FqScalar {
    ring.reduce(x)
}

/// A primitive `n`-th root of unity, `g^((q-1)/n)` for the field's fixed
/// multiplicative generator `g`.
pub fn primitive_root_of_unity(field: &FqField, n: u64) -> Result<FqScalar, ArithError> {
    if n == 0 {
        return Err(ArithError::InvalidParameters("root order must be ≥ 1".into()));
    }
    let p = field.p();
    if n.is_multiple_of(p) {
        return Err(ArithError::BadOrder { n, p });
    }
    let units = field.order() - 1;
    if !units.is_multiple_of(n) {
        return Err(ArithError::NoSuchRoot { n, unit_count: units });
    }
    Ok(field.pow(field.multiplicative_generator(), units / n))
}

/// The unique `θ ∈ V_N` with `θ^n = 1` reducing to `zeta`, by Newton
/// iteration on `x^n - 1`.
pub fn hensel_lift_root(ring: &DvrRing, n: u64, zeta: &FqScalar) -> Result<DvrScalar, ArithError> {
    let p = ring.p();
    if n == 0 {
        return Err(ArithError::InvalidParameters("root order must be ≥ 1".into()));
    }
    if n.is_multiple_of(p) {
        return Err(ArithError::BadOrder { n, p });
    }
    let field = ring.residue_field();
    if !field.is_one(&field.pow(zeta, n)) {
        return Err(ArithError::NotARoot { n });
    }
    let one = ring.one();
    let n_elem = ring.from_i64(n as i64);
    let mut x = ring.lift(zeta);
    let max_steps = ceil_log2(ring.precision()) + 1;
    for _ in 0..=max_steps {
        let residual = ring.sub(&ring.pow(&x, n), &one);
        if ring.is_zero(&residual) {
            return Ok(x);
        }
        let derivative = ring.mul(&n_elem, &ring.pow(&x, n - 1));
        let step = ring.mul(&residual, &ring.inv(&derivative).expect("n x^(n-1) is a unit"));
        x = ring.sub(&x, &step);
    }
    unreachable!("Newton iteration for a simple root converges quadratically")
}

fn ceil_log2(n: u32) -> u32 {
    32 - n.saturating_sub(1).leading_zeros()
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let total = checked_pow(p, m as u32).expect("bounded by field order check");
    (0..total)
        .map(|mut idx| {
            // constant term is the most significant digit
            let mut poly = vec![0u64; m + 1];
            for slot in poly[..m].iter_mut().rev() {
                *slot = idx % p;
                idx /= p;
            }
            poly[m] = 1;
            poly
        })
        .find(|poly| is_irreducible(p, poly))
        .expect("irreducible polynomials exist in every degree")
}

/// Ben-Or test: `h` of degree `m` is irreducible iff
/// `gcd(t^(p^i) - t, h) = 1` for `1 ≤ i ≤ m/2`.
fn is_irreducible(p: u64, h: &[u64]) -> bool {
    let m = h.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut power = x.clone();
    for _ in 0..m / 2 {
        power = fp_poly::powmod(p, &power, p, h);
        let diff = fp_poly::sub(p, &power, &x);
        let g = fp_poly::gcd(p, &diff, h);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Dense polynomials over `F_p`, low-to-high, without trailing zeros.
mod fp_poly {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(p: u64, a: u64) -> u64 {
        let mut r = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let b = trim(b.to_vec());
        let lead_inv = inv(p, *b.last().expect("nonzero divisor"));
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * lead_inv % p;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mulmod(p: u64, a: &[u64], b: &[u64], h: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(p, &prod, h)
    }

    pub fn powmod(p: u64, a: &[u64], mut e: u64, h: &[u64]) -> Vec<u64> {
        let mut base = rem(p, a, h);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(p, &acc, &base, h);
            }
            base = mulmod(p, &base, &base, h);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(p, &a, &b);
            a = b;
            b = r;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent irreducibility oracle: no monic factor of degree ≤ m/2.
    fn brute_irreducible(p: u64, h: &[u64]) -> bool {
        let m = h.len() - 1;
        for deg in 1..=m / 2 {
            let count = p.pow(deg as u32);
            for idx in 0..count {
                let mut f = vec![0u64; deg + 1];
                let mut k = idx;
                for slot in f[..deg].iter_mut() {
                    *slot = k % p;
                    k /= p;
                }
                f[deg] = 1;
                if fp_poly::rem(p, h, &f).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn prime_field_and_bad_modulus() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.degree(), 1);
        assert_eq!(make_field(4, 1), Err(ArithError::NonPrimeModulus(4)));
    }

    #[test]
    fn f49_modulus_is_smallest_irreducible() {
        let f = make_field(7, 2).unwrap();
        assert_eq!(f.modulus_poly(), &[1, 0, 1]);
        assert!(brute_irreducible(7, f.modulus_poly()));
        // every lexicographically smaller candidate is reducible
        for c0 in 0..=1u64 {
            for c1 in 0..7u64 {
                if (c0, c1) < (1, 0) {
                    assert!(!brute_irreducible(7, &[c0, c1, 1]));
                }
            }
        }
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for p in [2u64, 3, 5] {
            for m in 2..=4usize {
                for idx in 0..p.pow(m as u32) {
                    let mut h = vec![0u64; m + 1];
                    let mut k = idx;
                    for slot in h[..m].iter_mut() {
                        *slot = k % p;
                        k /= p;
                    }
                    h[m] = 1;
                    assert_eq!(is_irreducible(p, &h), brute_irreducible(p, &h), "p={p} h={h:?}");
                }
            }
        }
    }

    #[test]
    fn roots_of_unity_in_f5() {
        let f = make_field(5, 1).unwrap();
        let z4 = primitive_root_of_unity(&f, 4).unwrap();
        assert_eq!(z4.coeffs(), &[2]);
        // exhaustive: the elements of order exactly 4 are 2 and 3
        let order4: Vec<u64> = (1..5).filter(|&a| f.multiplicative_order(&f.from_coeffs(&[a])) == 4).collect();
        assert_eq!(order4, vec![2, 3]);
        assert!(f.is_one(&primitive_root_of_unity(&f, 1).unwrap()));
        assert_eq!(primitive_root_of_unity(&f, 3), Err(ArithError::NoSuchRoot { n: 3, unit_count: 4 }));
        assert_eq!(primitive_root_of_unity(&f, 5), Err(ArithError::BadOrder { n: 5, p: 5 }));
    }

    #[test]
    fn roots_are_primitive_in_extension_fields() {
        let f = make_field(7, 2).unwrap();
        for n in [1u64, 2, 3, 4, 6, 8, 12, 16, 24, 48] {
            let z = primitive_root_of_unity(&f, n).unwrap();
            assert_eq!(f.multiplicative_order(&z), n);
        }
    }

    #[test]
    fn hensel_lift_unique_mod_5_pow_6() {
        let ring = DvrRing::new(5, 1, 6).unwrap();
        let zeta = ring.residue_field().from_coeffs(&[2]);
        let theta = hensel_lift_root(&ring, 4, &zeta).unwrap();
        // brute force over Z/5^6
        let q = 5u64.pow(6);
        let roots: Vec<u64> =
            (0..q).filter(|&x| x % 5 == 2 && (0..4).fold(1u128, |acc, _| acc * x as u128 % q as u128) == 1).collect();
        assert_eq!(roots, vec![theta.coeffs()[0]]);
        assert_eq!(reduce_scalar(&ring, &theta), zeta);
    }

    #[test]
    fn hensel_trivial_and_errors() {
        let ring = DvrRing::new(5, 1, 3).unwrap();
        let one = ring.residue_field().one();
        assert!(ring.is_one(&hensel_lift_root(&ring, 1, &one).unwrap()));
        assert_eq!(hensel_lift_root(&ring, 5, &one), Err(ArithError::BadOrder { n: 5, p: 5 }));
        let two = ring.residue_field().from_coeffs(&[2]);
        assert_eq!(hensel_lift_root(&ring, 2, &two), Err(ArithError::NotARoot { n: 2 }));
    }

    #[test]
    fn integer_reduction() {
        let ring = DvrRing::new(5, 1, 3).unwrap();
        assert_eq!(ring.reduce(&ring.from_i64(7)).coeffs(), &[2]);
        assert_eq!(ring.from_i64(-1).coeffs(), &[124]);
    }

    #[test]
    fn dvr_units_and_inverses() {
        let ring = DvrRing::new(3, 2, 4).unwrap();
        let a = ring.from_coeffs(&[4, 7]);
        let inv = ring.inv(&a).unwrap();
        assert!(ring.is_one(&ring.mul(&a, &inv)));
        assert!(ring.inv(&ring.from_coeffs(&[3, 6])).is_none());
    }

    #[test]
    fn scalar_json_shape() {
        let ring = DvrRing::new(5, 1, 3).unwrap();
        let x = ring.from_i64(7);
        let j = serde_json::to_value(ring.to_json(&x)).unwrap();
        assert_eq!(j, serde_json::json!({"coeffs": [7], "p": 5, "m": 1, "N": 3}));
        assert_eq!(ring.from_json(&ring.to_json(&x)).unwrap(), x);
    }
}
