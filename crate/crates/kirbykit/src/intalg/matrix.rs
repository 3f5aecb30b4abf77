use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn diagonal(d: &[BigInt]) -> Self {
        let mut m = Self::zero(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
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

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    pub fn add_row_multiple(&mut self, a: usize, b: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(b, j)] * k;
            self[(a, j)] += v;
        }
    }

    /// col[a] += k * col[b]
    pub fn add_col_multiple(&mut self, a: usize, b: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, b)] * k;
            self[(i, a)] += v;
        }
    }

    pub fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    pub fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self[(i, a)].clone();
            self[(i, a)] = v;
        }
    }

    /// Submatrix by row and column index selections.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !m[(r, k)].is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = &v / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * m[(n - 1, n - 1)].clone())
    }

    /// Signature of a symmetric matrix, computed exactly by symmetric
    /// integer congruence reduction (Sylvester's law). Zero rows contribute 0.
    pub fn signature(&self) -> Result<i64, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if !self.is_symmetric() {
            return Err(MatrixError::NotSymmetric);
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut active: Vec<usize> = (0..n).collect();
        let mut sig: i64 = 0;
        while !active.is_empty() {
            // prefer a nonzero diagonal pivot
            let pivot = active.iter().position(|&i| !m[(i, i)].is_zero());
            let i = match pivot {
                Some(p) => active[p],
                None => {
                    // all diagonals zero: find an off-diagonal entry
                    let mut found = None;
                    'outer: for (ai, &i) in active.iter().enumerate() {
                        for &j in active.iter().skip(ai + 1) {
                            if !m[(i, j)].is_zero() {
                                found = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    match found {
                        None => break, // remaining block is zero
                        Some((i, j)) => {
                            // symmetric congruence: e_i <- e_i + e_j gives 2*m[i][j] on the diagonal
                            m.add_row_multiple(i, j, &BigInt::one());
                            m.add_col_multiple(i, j, &BigInt::one());
                            i
                        }
                    }
                }
            };
            let p = m[(i, i)].clone();
            sig += if p.is_positive() { 1 } else { -1 };
            active.retain(|&k| k != i);
            // clear row/col i against the pivot: e_k <- p*e_k - m[k][i]*e_i
            for &k in &active {
                let c = m[(k, i)].clone();
                if c.is_zero() {
                    continue;
                }
                // row then column, keeping symmetry
                for j in 0..n {
                    let v = &m[(k, j)] * &p - &c * &m[(i, j)];
                    m[(k, j)] = v;
                }
                for j in 0..n {
                    let v = &m[(j, k)] * &p - &c * &m[(j, i)];
                    m[(j, k)] = v;
                }
            }
        }
        Ok(sig)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        let entries = self.entries.iter().map(|a| -a).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = IntMatrix::from_i64(&[&[-1]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(-1));
        let m = IntMatrix::from_i64(&[&[0, 1], &[1, 7]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(-1));
        let m = IntMatrix::from_i64(&[&[-1, -2], &[1, 1]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(1));
        let m = IntMatrix::from_i64(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(30));
    }

    #[test]
    fn det_singular_and_empty() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.determinant().unwrap(), BigInt::zero());
        let m = IntMatrix::zero(0, 0);
        assert_eq!(m.determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMatrix::zero(2, 3);
        assert!(matches!(m.determinant(), Err(MatrixError::NotSquare { .. })));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(IntMatrix::from_i64(&[&[-1]]).signature().unwrap(), -1);
        // hyperbolic block has signature 0 for any f
        for f in -5..=5 {
            let m = IntMatrix::from_i64(&[&[0, 1], &[1, f]]);
            assert_eq!(m.signature().unwrap(), 0, "f = {f}");
        }
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, -3]]);
        assert_eq!(m.signature().unwrap(), 0);
        let m = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert_eq!(m.signature().unwrap(), 2);
        // zero rows contribute 0
        let m = IntMatrix::from_i64(&[&[0, 0], &[0, -4]]);
        assert_eq!(m.signature().unwrap(), -1);
    }

    #[test]
    fn signature_rejects_asymmetric() {
        let m = IntMatrix::from_i64(&[&[0, 1], &[2, 0]]);
        assert_eq!(m.signature(), Err(MatrixError::NotSymmetric));
    }

    #[test]
    fn e8_signature() {
        // E8 Cartan-style form, signature 8
        let mut m = IntMatrix::zero(8, 8);
        for i in 0..8 {
            m[(i, i)] = BigInt::from(2);
        }
        for i in 0..6 {
            m[(i, i + 1)] = BigInt::one();
            m[(i + 1, i)] = BigInt::one();
        }
        m[(4, 7)] = BigInt::one();
        m[(7, 4)] = BigInt::one();
        assert_eq!(m.signature().unwrap(), 8);
        assert_eq!(m.determinant().unwrap(), BigInt::one());
    }
}
