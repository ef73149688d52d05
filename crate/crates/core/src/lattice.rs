//! Exact integer linear algebra: gcds, 2×2 determinants, Smith normal form
//! and the component count of the subgroup cut out by an integer matrix.
//!
//! A full-row-rank integer matrix `A` (k × l) defines the closed subgroup
//! `{v ∈ T^l : A·v ≡ 0 (mod 1)}` of the torus. Its number of connected
//! components equals the product of the elementary divisors of `A`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyShape { rows: usize, cols: usize },
    #[error("expected {expected} entries for the given shape, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("matrix has row rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
}

/// Greatest common divisor with `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

/// `a·d − b·c`, the determinant of `[[a, b], [c, d]]`.
pub fn det2(a: i64, b: i64, c: i64, d: i64) -> i128 {
    a as i128 * d as i128 - b as i128 * c as i128
}

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LatticeError> {
        if rows == 0 || cols == 0 {
            return Err(LatticeError::EmptyShape { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(LatticeError::ShapeMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from nested rows of machine integers. All rows must
    /// have the same nonzero length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LatticeError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(LatticeError::ShapeMismatch {
                    expected: rows.len() * cols,
                    got: entries.len() + row.len(),
                });
            }
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    fn get_mut(&mut self, row: usize, col: usize) -> &mut BigInt {
        &mut self.entries[row * self.cols + col]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes for product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.get(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.get_mut(i, j) += lhs * other.get(k, j);
                }
            }
        }
        out
    }

    /// Fraction-free (Bareiss) determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    *m.get_mut(i, j) = v;
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor · row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * factor;
            *self.get_mut(dst, j) += v;
        }
    }

    /// col[dst] += factor · col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * factor;
            *self.get_mut(i, dst) += v;
        }
    }

    fn negate_row(&mut self, row: usize) {
        for j in 0..self.cols {
            let v = -self.get(row, j);
            *self.get_mut(row, j) = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

/// Elementary divisors together with unimodular witnesses:
/// `left · original · right` is the diagonal matrix holding `diagonal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal as a matrix with the shape of the original input.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows, self.right.cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            *d.get_mut(i, i) = v.clone();
        }
        d
    }
}

/// Position of a nonzero entry of minimal absolute value in the trailing
/// submatrix starting at `(t, t)`; ties resolve to the first in row-major order.
fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if best.as_ref().is_none_or(|(_, m)| mag < *m) {
                best = Some(((i, j), mag));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form by pivoting on a minimal-magnitude entry.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let steps = m.rows.min(m.cols);

    'diag: for t in 0..steps {
        loop {
            let Some((pi, pj)) = min_pivot(&a, t) else {
                break 'diag;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            for i in t + 1..a.rows {
                let q = a.get(i, t) / &pivot;
                if !q.is_zero() {
                    let neg = -q;
                    a.add_row_multiple(i, t, &neg);
                    left.add_row_multiple(i, t, &neg);
                }
            }
            for j in t + 1..a.cols {
                let q = a.get(t, j) / &pivot;
                if !q.is_zero() {
                    let neg = -q;
                    a.add_col_multiple(j, t, &neg);
                    right.add_col_multiple(j, t, &neg);
                }
            }

            let residue = (t + 1..a.rows).any(|i| !a.get(i, t).is_zero())
                || (t + 1..a.cols).any(|j| !a.get(t, j).is_zero());
            if residue {
                continue;
            }

            let offender = (t + 1..a.rows).find(|&i| {
                (t + 1..a.cols).any(|j| !a.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..steps).map(|i| a.get(i, i).clone()).collect();
    SmithForm {
        diagonal,
        left,
        right,
    }
}

/// Number of connected components of `{v : m·v ≡ 0 (mod 1)}`, i.e. the
/// product of the elementary divisors of `m`. Requires full row rank.
pub fn component_count(m: &IntMatrix) -> Result<BigInt, LatticeError> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    if rank < m.rows {
        return Err(LatticeError::RankDeficient { rank, rows: m.rows });
    }
    Ok(snf.diagonal.iter().product())
}

pub fn is_connected_subgroup(m: &IntMatrix) -> Result<bool, LatticeError> {
    component_count(m).map(|c| c.is_one())
}
