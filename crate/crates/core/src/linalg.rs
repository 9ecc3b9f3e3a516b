//! Dense exact linear algebra over a [`Field`].
//!
//! Pivoting is deterministic: the pivot of each column is the first nonzero
//! entry at or below the current row, so reduced forms and kernel bases are
//! reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::Field;

#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix { field: field.clone(), rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(field: &F, rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows.into_iter().map(|r| r.into_iter().map(|x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !f.is_zero(b) {
                        out.data[base + j] = f.mul_add(&out.data[base + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.mul_add(&acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend(self.row(r).iter().cloned());
            data.extend(other.row(r).iter().cloned());
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let cols: Vec<_> = idx.iter().map(|&c| self.column(c)).collect();
        Self::from_columns(&self.field, self.rows, &cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows = idx.iter().map(|&r| self.row(r).to_vec()).collect();
        Self::from_rows(&self.field, self.cols, rows)
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        self.rref_with(Exec::default())
    }

    pub fn rref_with(&self, exec: Exec) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(exec);
        (m, pivots)
    }

    fn rref_in_place(&mut self, exec: Exec) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let exec = exec.for_work(rows * cols);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == rows {
                break;
            }
            let Some(r) = (prow..rows).find(|&r| !f.is_zero(&self.data[r * cols + c])) else {
                continue;
            };
            if r != prow {
                for k in 0..cols {
                    self.data.swap(r * cols + k, prow * cols + k);
                }
            }
            let inv = f.inv(&self.data[prow * cols + c]);
            for k in c..cols {
                let v = &self.data[prow * cols + k];
                if !f.is_zero(v) {
                    self.data[prow * cols + k] = f.mul(v, &inv);
                }
            }
            let pivot_row: Vec<F::Elem> = self.row(prow)[c..].to_vec();
            let skip = prow;
            exec.for_each_row(&mut self.data, cols, |i, row| {
                if i == skip || f.is_zero(&row[c]) {
                    return;
                }
                let factor = row[c].clone();
                for (k, p) in pivot_row.iter().enumerate() {
                    if !f.is_zero(p) {
                        row[c + k] = f.sub(&row[c + k], &f.mul(&factor, p));
                    }
                }
            });
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn rank_with(&self, exec: Exec) -> usize {
        self.rref_with(exec).1.len()
    }

    /// Columns form a basis of the null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Self {
        self.kernel_basis_with(Exec::default())
    }

    pub fn kernel_basis_with(&self, exec: Exec) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref_with(exec);
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| is_pivot[c].is_none()).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, fc);
                if !f.is_zero(v) {
                    k.set(pc, j, f.neg(v));
                }
            }
        }
        k
    }

    /// One solution of `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let rhs = Self::from_columns(&self.field, self.rows, &[b.to_vec()]);
        Ok(self.solve_many(&rhs).map(|x| x.column(0)))
    }

    /// Solves `self * X = rhs` for all columns at once.
    pub fn solve_many(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let f = &self.field;
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(f, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_many(&Self::identity(&self.field, self.rows))?;
        (self.mul(&x) == Self::identity(&self.field, self.rows)).then_some(x)
    }

    /// Indices of a maximal linearly independent set of columns (pivot columns).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }
}

/// Incrementally built row-echelon basis of a subspace.
///
/// Each stored row has a leading 1 at its pivot and zeros at the pivots of
/// all earlier rows, so reduction in insertion order is exact.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, width: usize) -> Self {
        Echelon { field: field.clone(), width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (k, x) in row.iter().enumerate().skip(p) {
                if !f.is_zero(x) {
                    v[k] = f.sub(&v[k], &f.mul(&c, x));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span. Returns the normalised new row when `v` was
    /// independent of the current span.
    pub fn insert(&mut self, v: &[F::Elem]) -> Option<&[F::Elem]> {
        assert_eq!(v.len(), self.width);
        let f = &self.field;
        let mut r = self.reduce(v);
        let p = r.iter().position(|x| !f.is_zero(x))?;
        let inv = f.inv(&r[p]);
        for x in r.iter_mut().skip(p) {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.rows.last().map(Vec::as_slice)
    }

    pub fn extend<'a, I>(&mut self, vs: I)
    where
        I: IntoIterator<Item = &'a Vec<F::Elem>>,
    {
        for v in vs {
            self.insert(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rref_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let id = Matrix::identity(&f5, 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));

        let q = Rationals;
        let m = Matrix::from_i64(&q, vec![vec![1, 1], vec![1, 1]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(&q, vec![vec![1, 1], vec![0, 0]]));
        assert_eq!(p, vec![0]);

        // [[2,4],[1,3]] mod 5 is invertible (det = 2).
        let m = Matrix::from_i64(&f5, vec![vec![2, 4], vec![1, 3]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::identity(&f5, 2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rank_examples() {
        let q = Rationals;
        assert_eq!(Matrix::zeros(&q, 4, 7).rank(), 0);
        assert_eq!(Matrix::identity(&q, 3).rank(), 3);
        assert_eq!(Matrix::from_i64(&q, vec![vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        assert_eq!(Matrix::identity(&q, 4).kernel_basis().cols(), 0);

        let k = Matrix::from_i64(&q, vec![vec![1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![q.from_i64(-1), q.from_i64(1)]);

        let f2 = PrimeField::new(2).unwrap();
        let k = Matrix::from_i64(&f2, vec![vec![1, 1], vec![1, 1]]).kernel_basis();
        assert_eq!(k.columns(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let q = Rationals;
        let b = vec![q.from_i64(3), q.from_i64(-2)];
        assert_eq!(Matrix::identity(&q, 2).solve(&b).unwrap(), Some(b.clone()));

        let m = Matrix::from_i64(&q, vec![vec![1, 1]]);
        let x = m.solve(&[q.zero()]).unwrap().unwrap();
        assert_eq!(q.add(&x[0], &x[1]), q.zero());

        let m = Matrix::from_i64(&q, vec![vec![1, 0], vec![0, 0]]);
        assert_eq!(m.solve(&[q.zero(), q.one()]).unwrap(), None);
        assert!(matches!(m.solve(&[q.zero()]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn inverse_round_trip() {
        let f7 = PrimeField::new(7).unwrap();
        let m = Matrix::from_i64(&f7, vec![vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv), Matrix::identity(&f7, 3));
        let sing = Matrix::from_i64(&f7, vec![vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn echelon_tracks_span() {
        let q = Rationals;
        let mut e = Echelon::new(&q, 3);
        let v = |a: i64, b: i64, c: i64| vec![q.from_i64(a), q.from_i64(b), q.from_i64(c)];
        assert!(e.insert(&v(0, 2, 2)).is_some());
        assert!(e.insert(&v(1, 1, 1)).is_some());
        assert!(e.insert(&v(1, 3, 3)).is_none());
        assert!(e.contains(&v(2, 0, 0)));
        assert!(!e.contains(&v(0, 0, 1)));
        assert_eq!(e.rank(), 2);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_agree() {
        use rand::{Rng, SeedableRng};
        let f = PrimeField::new(32003).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let rows: Vec<Vec<u64>> = (0..150)
            .map(|_| (0..140).map(|_| if rng.random_bool(0.3) { f.random(&mut rng) } else { 0 }).collect())
            .collect();
        let m = Matrix::from_rows(&f, 140, rows);
        assert_eq!(m.rref_with(Exec::Sequential), m.rref_with(Exec::Parallel));
    }
}
