//! Dense exact matrices and the elimination primitives the rest of the crate
//! builds on: rank, kernels, right solves, determinants and inverses.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Conjugate, Field};

/// Row-major dense matrix over a field. `0×k` and `k×0` shapes are legal.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of [`Mat::solve_right`]: every solution of `a·x = c` is
/// `particular + kernel·y` column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightSolution<F> {
    pub particular: Mat<F>,
    /// Columns form a basis of `{x : a·x = 0}`.
    pub kernel: Mat<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn scalar(n: usize, value: F) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { value.clone() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Build from rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Mat {
            rows: r,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer rows (panics on ragged input).
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn column(entries: Vec<F>) -> Self {
        let n = entries.len();
        Mat {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R, height: u32) -> Self {
        Self::from_fn(rows, cols, |_, _| F::sample(rng, height))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Matrix product with a shape check.
    pub fn try_mul(&self, rhs: &Mat<F>) -> Result<Mat<F>> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Mat<F> = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn submatrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "submatrix out of range");
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat<F>) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block out of range"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Stack blocks left to right. `rows` fixes the height when `blocks` is empty.
    pub fn hstack(rows: usize, blocks: &[&Mat<F>]) -> Result<Self> {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::ShapeMismatch(format!(
                    "hstack block has {} rows, expected {rows}",
                    b.rows
                )));
            }
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Stack blocks top to bottom. `cols` fixes the width when `blocks` is empty.
    pub fn vstack(cols: usize, blocks: &[&Mat<F>]) -> Result<Self> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::ShapeMismatch(format!(
                    "vstack block has {} cols, expected {cols}",
                    b.cols
                )));
            }
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        Ok(out)
    }

    /// Gauss-Jordan reduction pivoting only in the first `pivot_cols` columns.
    /// Returns the reduced matrix and the pivot column of each nonzero row.
    fn reduce(&self, pivot_cols: usize) -> (Mat<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let delta = factor.clone() * m[(r, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        self.reduce(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of `{x : self·x = 0}`; one column per free variable,
    /// with that variable set to 1.
    pub fn kernel(&self) -> Mat<F> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    /// Kernel basis as a list of column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let k = self.kernel();
        (0..k.cols).map(|j| k.col(j)).collect()
    }

    /// Rows form a basis of `{y : y·self = 0}`.
    pub fn left_kernel(&self) -> Mat<F> {
        self.transpose().kernel().transpose()
    }

    /// Basis of the column space (the pivot columns of `self`).
    pub fn column_space(&self) -> Mat<F> {
        let (_, pivots) = self.rref();
        Mat::from_fn(self.rows, pivots.len(), |i, j| self[(i, pivots[j])].clone())
    }

    /// Solve `self·x = c`. Free variables are set to zero in the particular
    /// solution.
    pub fn solve_right(&self, c: &Mat<F>) -> Result<RightSolution<F>> {
        if c.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side has {} rows, expected {}",
                c.rows, self.rows
            )));
        }
        let aug = Mat::hstack(self.rows, &[self, c])?;
        let (r, pivots) = aug.reduce(self.cols);
        for i in pivots.len()..r.rows {
            if (self.cols..r.cols).any(|j| !r[(i, j)].is_zero()) {
                return Err(Error::NoSolution);
            }
        }
        let mut particular = Mat::zeros(self.cols, c.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..c.cols {
                particular[(pc, j)] = r[(row, self.cols + j)].clone();
            }
        }
        let coeff = r.submatrix(0, r.rows, 0, self.cols);
        let kernel = kernel_from_rref(&coeff, &pivots, self.cols);
        Ok(RightSolution { particular, kernel })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = F::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(p) => {
                        m.swap_rows(k, p);
                        negate = !negate;
                    }
                    None => return Ok(F::zero()),
                }
            }
            let prev_inv = prev.inv().expect("Bareiss pivot is nonzero");
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(i, j)].clone() * m[(k, k)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = num * prev_inv.clone();
                }
                m[(i, k)] = F::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        Ok(if negate { -d } else { d })
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let sol = self.solve_right(&Mat::identity(n)).ok()?;
        if sol.kernel.cols > 0 {
            return None;
        }
        Some(sol.particular)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Entries as a JSON array of rows.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(F::to_json).collect()))
                .collect(),
        )
    }

    /// Parse a JSON array of rows with the expected shape.
    pub fn from_json(value: &Value, rows: usize, cols: usize) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        if arr.len() != rows {
            return Err(Error::ShapeMismatch(format!(
                "matrix has {} rows, expected {rows}",
                arr.len()
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in arr {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "matrix row has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for x in row {
                data.push(F::from_json(x)?);
            }
        }
        Ok(Mat { rows, cols, data })
    }
}

impl<F: Conjugate> Mat<F> {
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }
}

fn kernel_from_rref<F: Field>(r: &Mat<F>, pivots: &[usize], ncols: usize) -> Mat<F> {
    let mut is_pivot = vec![None; ncols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| is_pivot[c].is_none()).collect();
    let mut k = Mat::zeros(ncols, free.len());
    for (idx, &f) in free.iter().enumerate() {
        k[(f, idx)] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            k[(pc, idx)] = -r[(row, f)].clone();
        }
    }
    k
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Mul for &Mat<F> {
    type Output = Mat<F>;
    fn mul(self, rhs: &Mat<F>) -> Mat<F> {
        self.try_mul(rhs).expect("matrix shape mismatch in product")
    }
}

impl<F: Field> Add for &Mat<F> {
    type Output = Mat<F>;
    fn add(self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch in sum");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Field> Sub for &Mat<F> {
    type Output = Mat<F>;
    fn sub(self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch in difference");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Field> Neg for &Mat<F> {
    type Output = Mat<F>;
    fn neg(self) -> Mat<F> {
        self.map(|x| -x.clone())
    }
}

impl<F: fmt::Debug> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| format!("{x:?}"))
                .collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: fmt::Display> fmt::Display for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
