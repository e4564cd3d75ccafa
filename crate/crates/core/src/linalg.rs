//! Dense Gaussian elimination over an exact [`Field`].

use crate::arith::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row-echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn rref<F: Field>(field: &F, mut rows: Matrix<F::Elem>, ncols: usize) -> Echelon<F::Elem> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&c, y));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

pub fn rank<F: Field>(field: &F, rows: Matrix<F::Elem>, ncols: usize) -> usize {
    rref(field, rows, ncols).rank()
}

/// Basis of `{v : M v = 0}` in reduced row-echelon form.
pub fn kernel<F: Field>(field: &F, rows: Matrix<F::Elem>, ncols: usize) -> Echelon<F::Elem> {
    let ech = rref(field, rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !ech.pivots.contains(c)).collect();
    let basis: Matrix<F::Elem> = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
                v[pc] = field.neg(&row[f]);
            }
            v
        })
        .collect();
    rref(field, basis, ncols)
}

pub fn mat_vec<F: Field>(field: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter().map(|row| row.iter().zip(v).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))).collect()
}

/// Incrementally grown span kept in echelon form; rows are reduced against
/// earlier rows in insertion order so each pivot column is cleared for good.
#[derive(Clone, Debug)]
pub struct EchelonSpan<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonSpan<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Self { field, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[pc]) {
                continue;
            }
            let c = v[pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !self.field.is_zero(x)) else {
            return false;
        };
        let inv = self.field.inv(&r[pc]).expect("nonzero");
        for x in r.iter_mut() {
            *x = self.field.mul(x, &inv);
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    pub fn into_rref(self) -> Echelon<F::Elem> {
        rref(&self.field, self.rows, self.ncols)
    }
}
