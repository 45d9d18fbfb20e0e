//! Polynomial matrices: Pfaffians, signed submaximal Pfaffians, determinants
//! and minors, all by memoized expansion over index subsets.

use std::collections::HashMap;

use thiserror::Error;

use crate::polyring::{same_ring, Polynomial, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not alternating (entry ({0}, {1}))")]
    NotAlternating(usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("submaximal Pfaffians of an even-size alternating matrix all vanish")]
    DegenerateEven,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid index selection: {0}")]
    Selection(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Row-major matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(RingError::RingMismatch.into());
        }
        Ok(Self { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Self { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(ring, rows, cols, entries).expect("entries built in the matrix ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(RingError::RingMismatch.into());
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        PolyMatrix::new(&self.ring, self.rows, other.cols, entries)
    }

    /// Row vector times matrix.
    pub fn left_mul_vector(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>, MatrixError> {
        let row = PolyMatrix::new(&self.ring, 1, v.len(), v.to_vec())?;
        Ok(row.mul(self)?.entries)
    }

    /// Matrix times column vector.
    pub fn mul_vector(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>, MatrixError> {
        let col = PolyMatrix::new(&self.ring, v.len(), 1, v.to_vec())?;
        Ok(self.mul(&col)?.entries)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn map_to_ring(&self, target: &Ring) -> Result<PolyMatrix, MatrixError> {
        let entries = self.entries.iter().map(|e| e.map_to_ring(target)).collect::<Result<Vec<_>, _>>()?;
        PolyMatrix::new(target, self.rows, self.cols, entries)
    }

    /// Square, zero diagonal, `M[i][j] = -M[j][i]`.
    pub fn check_alternating(&self) -> Result<(), MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        for i in 0..self.rows {
            if !self.get(i, i).is_zero() {
                return Err(MatrixError::NotAlternating(i, i));
            }
            for j in i + 1..self.cols {
                if !(self.get(i, j) + self.get(j, i)).is_zero() {
                    return Err(MatrixError::NotAlternating(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_alternating(&self) -> bool {
        self.check_alternating().is_ok()
    }

    /// Pfaffian; zero for odd size.
    pub fn pfaffian(&self) -> Result<Polynomial, MatrixError> {
        let mut table = PfaffianTable::new(self)?;
        Ok(table.pfaffian(full_mask(self.rows)))
    }

    /// `F_i = (-1)^(offset - i) * Pf(M with row and column i removed)`, `i` 1-based.
    pub fn signed_submax_pfaffians(&self, offset: i64) -> Result<Vec<Polynomial>, MatrixError> {
        let mut table = PfaffianTable::new(self)?;
        if self.rows.is_multiple_of(2) {
            return Err(MatrixError::DegenerateEven);
        }
        let full = full_mask(self.rows);
        Ok((0..self.rows)
            .map(|i| {
                let pf = table.pfaffian(full & !(1 << i));
                if (offset - (i as i64 + 1)).rem_euclid(2) == 1 {
                    -&pf
                } else {
                    pf
                }
            })
            .collect())
    }

    /// Determinant by Laplace expansion along rows, memoized on column subsets.
    pub fn determinant(&self) -> Result<Polynomial, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let mut memo = HashMap::new();
        Ok(self.minor_memo(&rows, 0, full_mask(self.cols), &mut memo))
    }

    /// Determinant of the rows `rows[depth..]` against the columns in `cols`.
    fn minor_memo(&self, rows: &[usize], depth: usize, cols: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if depth == rows.len() {
            return Polynomial::one(&self.ring);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign_negative = false;
        for c in 0..self.cols {
            if cols >> c & 1 == 0 {
                continue;
            }
            let a = self.get(rows[depth], c);
            if !a.is_zero() {
                let sub = self.minor_memo(rows, depth + 1, cols & !(1 << c), memo);
                let term = a * &sub;
                acc = if sign_negative { &acc - &term } else { &acc + &term };
            }
            sign_negative = !sign_negative;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// All `k x k` minors, row subsets outer and column subsets inner, both lexicographic.
    pub fn minors(&self, k: usize) -> Vec<Polynomial> {
        if k == 0 {
            return vec![Polynomial::one(&self.ring)];
        }
        if k > self.rows || k > self.cols {
            return Vec::new();
        }
        let mut out = Vec::new();
        for rows in subsets(self.rows, k) {
            let mut memo = HashMap::new();
            for cols in subsets(self.cols, k) {
                let mask = cols.iter().fold(0u32, |m, &c| m | 1 << c);
                out.push(self.minor_memo(&rows, 0, mask, &mut memo));
            }
        }
        out
    }

    /// All maximal minors of a matrix with `rows <= cols`, column subsets in lexicographic order.
    pub fn maximal_minors(&self) -> Result<Vec<Polynomial>, MatrixError> {
        if self.rows > self.cols {
            return Err(MatrixError::Shape(format!("{} rows exceed {} columns", self.rows, self.cols)));
        }
        Ok(self.minors(self.rows))
    }

    /// Determinant of the columns `cols` (0-based, distinct), optionally with
    /// row `drop_row` removed.
    pub fn delta(&self, cols: &[usize], drop_row: Option<usize>) -> Result<Polynomial, MatrixError> {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| Some(r) != drop_row).collect();
        if let Some(r) = drop_row {
            if r >= self.rows {
                return Err(MatrixError::Selection(format!("row {r} out of range")));
            }
        }
        if cols.len() != rows.len() {
            return Err(MatrixError::Shape(format!("{} columns for {} rows", cols.len(), rows.len())));
        }
        let mut mask = 0u32;
        for &c in cols {
            if c >= self.cols || mask >> c & 1 == 1 {
                return Err(MatrixError::Selection(format!("column {c} repeated or out of range")));
            }
            mask |= 1 << c;
        }
        // keep the caller's column order: permute into a fresh matrix
        let sub = self.submatrix(&rows, cols);
        sub.determinant()
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Pfaffians of principal submatrices of one alternating matrix, memoized
/// on the index subset (bit `i` set = row/column `i` kept).
pub struct PfaffianTable<'a> {
    matrix: &'a PolyMatrix,
    memo: HashMap<u32, Polynomial>,
}

impl<'a> PfaffianTable<'a> {
    pub fn new(matrix: &'a PolyMatrix) -> Result<Self, MatrixError> {
        matrix.check_alternating()?;
        if matrix.rows > 32 {
            return Err(MatrixError::Shape("more than 32 rows".into()));
        }
        Ok(Self { matrix, memo: HashMap::new() })
    }

    /// Pfaffian of the principal submatrix on `mask`, by expansion along its
    /// first row: `Pf = Σ_j (-1)^(j+1) a_{s0,sj} Pf(without s0, sj)`.
    pub fn pfaffian(&mut self, mask: u32) -> Polynomial {
        let ring = self.matrix.ring.clone();
        let size = mask.count_ones();
        if size == 0 {
            return Polynomial::one(&ring);
        }
        if size % 2 == 1 {
            return Polynomial::zero(&ring);
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut acc = Polynomial::zero(&ring);
        let mut negative = false;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = self.matrix.get(first, j).clone();
            if !a.is_zero() {
                let sub = self.pfaffian(rest & !(1 << j));
                let term = &a * &sub;
                acc = if negative { &acc - &term } else { &acc + &term };
            }
            negative = !negative;
        }
        self.memo.insert(mask, acc.clone());
        acc
    }

    /// Pfaffian of the matrix with the listed (0-based) rows and columns deleted.
    pub fn pfaffian_deleting(&mut self, deleted: &[usize]) -> Polynomial {
        let mask = deleted.iter().fold(full_mask(self.matrix.rows), |m, &i| m & !(1 << i));
        self.pfaffian(mask)
    }
}
