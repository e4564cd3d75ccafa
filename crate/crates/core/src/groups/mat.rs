use crate::arith::ScalarRing;

/// A 2×2 matrix, row-major `[a, b, c, d] = [[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2<E>(pub [E; 4]);

impl<E: Clone> Mat2<E> {
    pub fn new(a: E, b: E, c: E, d: E) -> Self {
        Mat2([a, b, c, d])
    }

    /// Entry at `(row, col)`.
    pub fn at(&self, row: usize, col: usize) -> &E {
        &self.0[2 * row + col]
    }

    pub fn map<F, T>(&self, f: F) -> Mat2<T>
    where
        F: Fn(&E) -> T,
    {
        Mat2([f(&self.0[0]), f(&self.0[1]), f(&self.0[2]), f(&self.0[3])])
    }
}

impl<E: Clone> Mat2<E> {
    pub fn identity<R: ScalarRing<Elem = E>>(ring: &R) -> Self {
        Mat2([ring.one(), ring.zero(), ring.zero(), ring.one()])
    }

    pub fn diag<R: ScalarRing<Elem = E>>(ring: &R, a: E, d: E) -> Self {
        Mat2([a, ring.zero(), ring.zero(), d])
    }

    pub fn mul<R: ScalarRing<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &other.0;
        let dot = |x: &E, y: &E, z: &E, w: &E| ring.add(&ring.mul(x, y), &ring.mul(z, w));
        Mat2([dot(a, e, b, g), dot(a, f, b, h), dot(c, e, d, g), dot(c, f, d, h)])
    }

    pub fn det<R: ScalarRing<Elem = E>>(&self, ring: &R) -> E {
        let [a, b, c, d] = &self.0;
        ring.sub(&ring.mul(a, d), &ring.mul(b, c))
    }

    pub fn trace<R: ScalarRing<Elem = E>>(&self, ring: &R) -> E {
        ring.add(&self.0[0], &self.0[3])
    }

    pub fn sub_identity<R: ScalarRing<Elem = E>>(&self, ring: &R) -> Self {
        let [a, b, c, d] = &self.0;
        Mat2([ring.sub(a, &ring.one()), b.clone(), c.clone(), ring.sub(d, &ring.one())])
    }

    pub fn is_identity<R: ScalarRing<Elem = E>>(&self, ring: &R) -> bool
    where
        E: PartialEq,
    {
        *self == Self::identity(ring)
    }

    pub fn format<R: ScalarRing<Elem = E>>(&self, ring: &R) -> String {
        let f = |x: &E| ring.format(x);
        format!("[[{}, {}], [{}, {}]]", f(&self.0[0]), f(&self.0[1]), f(&self.0[2]), f(&self.0[3]))
    }
}
