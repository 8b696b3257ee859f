//! Dense exact linear algebra over a [`Field`].
//!
//! Row reduction is plain Gauss-Jordan; matrices here stay small (a few
//! hundred rows) and coefficients are exact, so no pivoting strategy beyond
//! "first nonzero" is needed for correctness. [`RowSpace`] is an incremental
//! reduced echelon form used for span membership and quotient coordinates;
//! its pivots sit at the highest-index coordinate of each row, so when
//! columns are ordered by path order the lex-earliest paths survive as
//! quotient representatives.

use crate::field::Field;

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &F {
        &self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set_row(&mut self, i: usize, r: Vec<F::Elem>) {
        assert_eq!(r.len(), self.cols);
        self.data[i * self.cols..(i + 1) * self.cols].clone_from_slice(&r);
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut t = Matrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = f.zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !f.is_zero(a) && !f.is_zero(&v[j]) {
                    acc = f.add(&acc, &f.mul(a, &v[j]));
                }
            }
            out[i] = acc;
        }
        out
    }

    /// In-place Gauss-Jordan; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !f.is_zero(self.get(i, c)) {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{x : Ax = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(ri, fc));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `Ax = b`, if any.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field.clone();
        let mut aug = Matrix::zeros(f.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![f.zero(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(ri, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = self.field.clone();
        let mut aug = Matrix::zeros(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn equals(&self, other: &Matrix<F>) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

/// Incremental reduced echelon form of a set of row vectors.
///
/// Pivots are taken at the highest-index nonzero coordinate, so
/// [`RowSpace::reduce`] maps any vector to its canonical representative
/// supported on non-pivot coordinates.
#[derive(Clone, Debug)]
pub struct RowSpace<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(field: F, cols: usize) -> Self {
        RowSpace {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn pivot_of(&self, v: &[F::Elem]) -> Option<usize> {
        (0..self.cols).rev().find(|&j| !self.field.is_zero(&v[j]))
    }

    /// Reduce `v` against the stored rows (eliminating pivot coordinates).
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let factor = v[p].clone();
                for j in 0..self.cols {
                    if !f.is_zero(&row[j]) {
                        v[j] = f.sub(&v[j], &f.mul(&factor, &row[j]));
                    }
                }
            }
        }
        v
    }

    /// Insert a vector; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = self.pivot_of(&v) else {
            return false;
        };
        let inv = f.inv(&v[p]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // back-eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let factor = row[p].clone();
                for j in 0..self.cols {
                    if !f.is_zero(&v[j]) {
                        row[j] = f.sub(&row[j], &f.mul(&factor, &v[j]));
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Non-pivot coordinates, ascending: a basis of the quotient space.
    pub fn complement(&self) -> Vec<usize> {
        let pivot_set: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        (0..self.cols).filter(|c| !pivot_set.contains(c)).collect()
    }
}

/// Sparse vector over a field: sorted `(index, coefficient)` pairs.
pub type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

pub fn sparse_add<F: Field>(f: &F, a: &[(usize, F::Elem)], b: &[(usize, F::Elem)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let s = f.add(&a[i].1, &b[j].1);
            if !f.is_zero(&s) {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale<F: Field>(f: &F, c: &F::Elem, a: &[(usize, F::Elem)]) -> SparseVec<F> {
    if f.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, f.mul(c, v))).collect()
}

pub fn sparse_to_dense<F: Field>(f: &F, n: usize, a: &[(usize, F::Elem)]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n];
    for (i, v) in a {
        out[*i] = v.clone();
    }
    out
}

pub fn dense_to_sparse<F: Field>(f: &F, a: &[F::Elem]) -> SparseVec<F> {
    a.iter()
        .enumerate()
        .filter(|(_, v)| !f.is_zero(v))
        .map(|(i, v)| (i, v.clone()))
        .collect()
}
