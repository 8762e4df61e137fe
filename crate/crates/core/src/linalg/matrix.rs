use std::fmt;
use std::ops::{Index, IndexMut};

use crate::arith::{Level, Poly, RatFunc, Scalar};
use crate::error::{Error, Result};

use super::Subspace;

/// Dense row-major matrix of exact scalars.
///
/// A matrix with `rows × cols` entries is read as a linear map
/// `K^cols → K^rows` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors of a known width (needed for the
    /// zero-row case).
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers, mostly for tests.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Join of the tower levels of all entries.
    pub fn level(&self) -> Level {
        self.data
            .iter()
            .fold(Level::Rational, |acc, x| acc.join(x.level()))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = out.data[idx].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a map with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| acc.add_mul(a, b))
            })
            .collect())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), self.cols, |r, c| self[(idx[r], c)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of heights {} and {}",
                self.rows, other.rows
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        }))
    }

    /// Reduced row-echelon form with zero rows removed.
    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    /// Reduced row-echelon form together with its pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let rows = self.clone().into_rows();
        let (rows, pivots) = row_reduce(rows, self.cols, self.level().is_parametric());
        let m = Matrix::from_rows(self.cols, rows).expect("row reduction keeps widths");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Null space `{v : M v = 0}` inside `K^cols`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, free)];
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis).expect("kernel vectors have the ambient width")
    }

    /// Column space inside `K^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_generators(self.transpose())
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n)).expect("same height");
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row reduction to RREF. Returns the nonzero rows and their pivot columns.
///
/// Rows over ℚ(t) are first cleared of denominators and eliminated
/// fraction-free (Bareiss) so intermediate entries stay polynomial; the
/// constant levels use Gauss–Jordan that skips zero entries.
fn row_reduce(rows: Vec<Vec<Scalar>>, cols: usize, parametric: bool) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    if parametric {
        bareiss_rref(rows, cols)
    } else {
        gauss_jordan(rows, cols)
    }
}

fn gauss_jordan(mut rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[rank][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &factor * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    let g = a.gcd(b);
    a.mul(b).div_rem(&g).0
}

/// Multiplies a row by the lcm of its entries' denominators so every entry
/// becomes a polynomial in `t` (with Gaussian-rational coefficients).
fn clear_denominators(row: &mut [Scalar]) {
    let mut den = Poly::one();
    for x in row.iter() {
        for part in [x.re(), x.im()] {
            if let RatFunc::Frac(nd) = part {
                den = lcm(&den, &nd.1);
            }
        }
    }
    if den.is_one() {
        return;
    }
    let factor = Scalar::from_real(RatFunc::from_parts(den, Poly::one()).expect("nonzero"));
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x * &factor;
        }
    }
}

fn bareiss_rref(mut rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    for row in rows.iter_mut() {
        clear_denominators(row);
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    let mut prev = Scalar::one();
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let p = rows[rank][c].clone();
        let prev_inv = prev.inv().expect("previous pivot is nonzero");
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let a = row[c].clone();
            for j in c + 1..cols {
                let updated = &p * &row[j] - &a * &pivot_row[j];
                row[j] = if prev.is_one() { updated } else { &updated * &prev_inv };
            }
            row[c] = Scalar::zero();
        }
        prev = p;
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    // Back substitution: normalize pivots and clear entries above them.
    for r in (0..rank).rev() {
        let c = pivots[r];
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &factor * &pivot_row[j];
                }
            }
        }
    }
    (rows, pivots)
}
