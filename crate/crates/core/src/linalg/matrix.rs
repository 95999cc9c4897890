//! Dense matrices over an exact field, with row reduction and the derived
//! rank / kernel / image / solve operations.

use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::Field;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Mat<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_vec(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    /// A single column built from `v`.
    pub fn column_vector(field: F, v: Vec<F::Elem>) -> Self {
        let n = v.len();
        Self::from_vec(field, n, 1, v)
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        f.add_mul_assign(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| op(&f, a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled_assign(&mut self, c: &F::Elem, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let f = self.field;
        if f.is_zero(c) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !f.is_zero(b) {
                f.add_mul_assign(a, c, b);
            }
        }
    }

    /// Kronecker product, with `self`'s index varying slowest.
    pub fn kron(&self, other: &Self) -> Self {
        let f = self.field;
        let mut out = Self::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !f.is_zero(b) {
                            out[(i * other.rows + k, j * other.cols + l)] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::from_vec(self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn block_diag(field: F, blocks: &[Mat<F>]) -> Self {
        let rows = blocks.iter().map(Mat::rows).sum();
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Self) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        assert!(row + rows <= self.rows && col + cols <= self.cols);
        let mut out = Self::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(row + i, col + j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend(self.row(i).iter().cloned());
        }
        Self::from_vec(self.field, rows.len(), self.cols, data)
    }

    /// Gauss-Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row, so the result depends only
    /// on the matrix.
    pub fn rref(&self) -> Rref<F> {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(&m[(i, c)])) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(&m[(r, c)]);
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.data[r * m.cols + j].clone();
                    if !f.is_zero(&pv) {
                        f.sub_mul_assign(&mut m.data[i * m.cols + j], &factor, &pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
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
        if self.rows > self.cols * 2 {
            // eliminate on the shorter side
            return self.transpose().rref().rank();
        }
        self.rref().rank()
    }

    /// Columns form a basis of the null space, one per free column of the
    /// reduced echelon form.
    pub fn kernel_basis(&self) -> Mat<F> {
        kernel_from_rref(&self.rref(), self.cols)
    }

    /// Indices of a maximal independent set of columns (first-come order).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// A basis of the column space, taken from the original columns.
    pub fn image_basis(&self) -> Mat<F> {
        self.select_columns(&self.independent_columns())
    }

    /// Solves `self * x = b`. Free variables are set to zero, so the
    /// particular solution is determined by the reduced echelon form.
    pub fn solve(&self, b: &Mat<F>) -> Option<Mat<F>> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = self.hstack(b).rref();
        if aug.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (r, &p) in aug.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = aug.matrix[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// A matrix `L` with `L * self = I`, for `self` of full column rank.
    pub fn left_inverse(&self) -> Option<Mat<F>> {
        let t = self.transpose();
        let rows = t.independent_columns();
        if rows.len() != self.cols {
            return None;
        }
        let square = self.select_rows(&rows);
        let inv = square.inverse()?;
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for (k, &i) in rows.iter().enumerate() {
            for r in 0..self.cols {
                out[(r, i)] = inv[(r, k)].clone();
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        if !self.is_square() {
            return None;
        }
        self.solve(&Mat::identity(self.field, self.rows))
            .filter(|_| self.rank() == self.rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Entries formatted by the field, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.format(x)).collect())
            .collect()
    }
}

fn kernel_from_rref<F: Field>(rref: &Rref<F>, cols: usize) -> Mat<F> {
    let f = rref.matrix.field;
    let mut is_pivot = vec![false; cols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = Mat::zeros(f, cols, free.len());
    for (j, &fc) in free.iter().enumerate() {
        k[(fc, j)] = f.one();
        for (r, &p) in rref.pivots.iter().enumerate() {
            let v = &rref.matrix[(r, fc)];
            if !f.is_zero(v) {
                k[(p, j)] = f.neg(v);
            }
        }
    }
    k
}

impl<F: Field> Index<(usize, usize)> for Mat<F> {
    type Output = F::Elem;

    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_strings()).finish()
    }
}

/// Row echelon form built one row at a time. Used for large, mostly
/// redundant linear systems: at most `cols` rows are ever stored.
#[derive(Clone, Debug)]
pub struct EchelonBuilder<F: Field> {
    field: F,
    cols: usize,
    // sorted by pivot; each row is zero before its pivot and 1 at it
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(field: F, cols: usize) -> Self {
        EchelonBuilder {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn push(&mut self, mut row: Vec<F::Elem>) -> bool {
        assert_eq!(row.len(), self.cols);
        let f = self.field;
        for (p, r) in &self.rows {
            let factor = row[*p].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in *p..self.cols {
                if !f.is_zero(&r[j]) {
                    f.sub_mul_assign(&mut row[j], &factor, &r[j]);
                }
            }
        }
        let Some(p) = row.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&row[p]);
        for x in row.iter_mut().skip(p) {
            *x = f.mul(x, &inv);
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, row));
        true
    }

    pub fn to_mat(&self) -> Mat<F> {
        Mat::from_rows(
            self.field,
            self.rows.iter().map(|(_, r)| r.clone()).collect(),
        )
        .reshape_empty(self.cols)
    }

    /// Basis of the common null space of all pushed rows.
    pub fn kernel_basis(&self) -> Mat<F> {
        let m = self.to_mat();
        kernel_from_rref(&m.rref(), self.cols)
    }
}

impl<F: Field> Mat<F> {
    fn reshape_empty(self, cols: usize) -> Self {
        if self.rows == 0 {
            Mat::zeros(self.field, 0, cols)
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Mat<Rationals> {
        Mat::from_i64(Rationals, rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::identity(Rationals, 2).rank(), 2);
        assert_eq!(Mat::zeros(Rationals, 2, 2).rank(), 0);
        assert_eq!(q(&[&[1, 2, 3], &[1, 2, 3], &[0, 1, 5]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(Rationals, 3).kernel_basis().cols(), 0);
        let z = Mat::zeros(Rationals, 3, 3).kernel_basis();
        assert_eq!(z.cols(), 3);
        assert_eq!(z.rank(), 3);
        let k = q(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, q(&[&[-1], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let b = q(&[&[4, 1], &[-2, 7]]);
        assert_eq!(Mat::identity(Rationals, 2).solve(&b).unwrap(), b);
        assert!(Mat::zeros(Rationals, 2, 2).solve(&q(&[&[1], &[0]])).is_none());
        let x = q(&[&[1, 1], &[0, 1]]).solve(&q(&[&[2], &[1]])).unwrap();
        assert_eq!(x, q(&[&[1], &[1]]));
    }

    #[test]
    fn left_inverse_and_inverse() {
        let m = q(&[&[1, 0], &[2, 1], &[3, 4]]);
        let l = m.left_inverse().unwrap();
        assert_eq!(l.mul(&m), Mat::identity(Rationals, 2));
        let s = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(s.mul(&s.inverse().unwrap()), Mat::identity(Rationals, 2));
        assert!(q(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn echelon_builder_matches_kernel() {
        let m = q(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4]]);
        let mut b = EchelonBuilder::new(Rationals, 4);
        for i in 0..4 {
            b.push(m.row(i).to_vec());
        }
        assert_eq!(b.rank(), m.rank());
        let k = b.kernel_basis();
        assert!(m.mul(&k).is_zero());
        assert_eq!(k.cols(), 4 - m.rank());
    }

    #[test]
    fn prime_field_rank_differs_from_rationals_only_when_p_divides() {
        let m = [&[1i64, 1][..], &[1, 3][..]];
        assert_eq!(Mat::from_i64(Rationals, &m).rank(), 2);
        assert_eq!(Mat::from_i64(PrimeField::new(2).unwrap(), &m).rank(), 1);
    }
}
