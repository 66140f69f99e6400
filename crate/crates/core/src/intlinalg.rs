//! Exact integer linear algebra.
//!
//! Everything here is arbitrary precision: normal-form pivoting blows up
//! intermediate entries, and fixed-width arithmetic would silently corrupt
//! invariant factors. Matrices are dense and row-major; the intended scale
//! is desk-sized (tens of rows), not numerical computing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("{rows}x{cols} matrix needs {} entries, got {got}", rows * cols)]
    BadEntryCount {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}x{1} is not compatible with {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not unimodular")]
    NotUnimodular,
}

/// Dense matrix over the integers, row-major, arbitrary precision.
///
/// A matrix with zero rows is legal and stands for the zero lattice in
/// `cols` ambient coordinates; this removes special cases downstream.
///
/// The derived ordering (row count, then column count, then entries) is the
/// deterministic ordering used for canonical-form listings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::BadEntryCount {
                rows,
                cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Matrix with no rows: the zero lattice in `cols` coordinates.
    pub fn empty(cols: usize) -> Self {
        Self {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows, all of which must have length `cols`.
    pub fn from_rows_with_cols(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, LinAlgError> {
        for r in &rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from a non-empty list of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(cols, rows)
    }

    /// Convenience constructor from machine integers, mostly for tests and
    /// fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = a * other.at(k, c);
                    *out.at_mut(r, c) += prod;
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`; column counts must agree.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.cols {
            return Err(LinAlgError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn without_zero_rows(&self) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|x| !x.is_zero()))
            .map(|r| self.row(r).to_vec())
            .collect();
        Self::from_rows_with_cols(self.cols, rows).expect("rows keep their length")
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.row_vecs();
        let mut negated = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap(k, swap);
                negated = !negated;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negated { -d } else { d })
    }

    pub fn is_unimodular(&self) -> Result<bool, LinAlgError> {
        Ok(self.det()?.abs().is_one())
    }

    /// Inverse of a unimodular matrix, computed over the integers.
    pub fn inverse_unimodular(&self) -> Result<Self, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare(self.rows, self.cols));
        }
        let hf = hnf(self);
        if !hf.h.is_identity() {
            return Err(LinAlgError::NotUnimodular);
        }
        Ok(hf.u)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(self.at_mut(r, c));
            *self.at_mut(r, c) = v;
        }
    }

    /// row[target] += k · row[source]
    fn add_scaled_row(&mut self, target: usize, source: usize, k: &BigInt) {
        for c in 0..self.cols {
            let delta = k * self.at(source, c);
            *self.at_mut(target, c) += delta;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// col[target] += k · col[source]
    fn add_scaled_col(&mut self, target: usize, source: usize, k: &BigInt) {
        for r in 0..self.rows {
            let delta = k * self.at(r, source);
            *self.at_mut(r, target) += delta;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 {
            return write!(f, "[]");
        }
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Row Hermite normal form `H` of a matrix `A`, with the unimodular row
/// transformation `U` such that `U·A = H`.
///
/// Convention: pivots are strictly positive, entries above a pivot are
/// reduced into `[0, pivot)`, zero rows come last. With zero rows trimmed
/// this is the unique canonical basis of the row lattice, so two matrices
/// have equal row lattices iff their trimmed Hermite forms are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

impl HermiteForm {
    /// The canonical basis of the row lattice: `h` with zero rows trimmed.
    pub fn lattice_basis(&self) -> IntMatrix {
        self.h.without_zero_rows()
    }
}

/// Smith normal form `S = U·A·V` with unimodular `U`, `V`.
///
/// The diagonal is nonnegative and forms a divisibility chain; nonzero
/// entries come first. `invariant_factors` is exactly that diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

/// Row Hermite normal form with transformation matrix.
///
/// Pivot strategy: the minimum-absolute-value nonzero entry of the working
/// column, which keeps coefficient growth in check; correctness does not
/// depend on the choice.
pub fn hnf(a: &IntMatrix) -> HermiteForm {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivot_row = 0;

    for col in 0..n {
        if pivot_row == m {
            break;
        }
        // Euclid down the column until everything below the pivot is zero.
        loop {
            let best = (pivot_row..m)
                .filter(|&r| !h.at(r, col).is_zero())
                .min_by_key(|&r| h.at(r, col).abs());
            let Some(best) = best else { break };
            h.swap_rows(best, pivot_row);
            u.swap_rows(best, pivot_row);
            let mut cleared = true;
            for r in pivot_row + 1..m {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let q = -h.at(r, col).div_floor(h.at(pivot_row, col));
                if !q.is_zero() {
                    h.add_scaled_row(r, pivot_row, &q);
                    u.add_scaled_row(r, pivot_row, &q);
                }
                if !h.at(r, col).is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = -h.at(r, col).div_floor(h.at(pivot_row, col));
            if !q.is_zero() {
                h.add_scaled_row(r, pivot_row, &q);
                u.add_scaled_row(r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }

    HermiteForm { h, u }
}

/// Smith normal form with both transformation matrices.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let m = a.rows();
    let n = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let k = m.min(n);
    let mut t = 0;

    'stage: while t < k {
        // Minimum-absolute-value nonzero entry of the trailing submatrix.
        let mut pos = None;
        let mut best: Option<BigInt> = None;
        for r in t..m {
            for c in t..n {
                if s.at(r, c).is_zero() {
                    continue;
                }
                let a = s.at(r, c).abs();
                if best.as_ref().is_none_or(|b| a < *b) {
                    best = Some(a);
                    pos = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pos else { break };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        // Clear row and column t; any remainder is smaller than the pivot
        // and forces a re-selection.
        let mut clean = true;
        for r in t + 1..m {
            if s.at(r, t).is_zero() {
                continue;
            }
            let q = -s.at(r, t).div_floor(s.at(t, t));
            if !q.is_zero() {
                s.add_scaled_row(r, t, &q);
                u.add_scaled_row(r, t, &q);
            }
            if !s.at(r, t).is_zero() {
                clean = false;
            }
        }
        for c in t + 1..n {
            if s.at(t, c).is_zero() {
                continue;
            }
            let q = -s.at(t, c).div_floor(s.at(t, t));
            if !q.is_zero() {
                s.add_scaled_col(c, t, &q);
                v.add_scaled_col(c, t, &q);
            }
            if !s.at(t, c).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue 'stage;
        }

        // The pivot must divide the rest of the submatrix; folding an
        // offending row into row t shrinks the pivot to a gcd next round.
        for r in t + 1..m {
            if (t + 1..n).any(|c| !s.at(r, c).mod_floor(s.at(t, t)).is_zero()) {
                let one = BigInt::one();
                s.add_scaled_row(t, r, &one);
                u.add_scaled_row(t, r, &one);
                continue 'stage;
            }
        }

        if s.at(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..k).map(|i| s.at(i, i).clone()).collect();
    SmithForm {
        s,
        u,
        v,
        invariant_factors,
    }
}

/// Decides whether `v` is an integer combination of the rows of `basis`,
/// by reduction against the Hermite form.
pub fn lattice_member(basis: &IntMatrix, v: &[BigInt]) -> Result<bool, LinAlgError> {
    if basis.cols() != v.len() {
        return Err(LinAlgError::DimensionMismatch {
            expected: basis.cols(),
            got: v.len(),
        });
    }
    let h = hnf(basis).h;
    let mut rem = v.to_vec();
    for r in 0..h.rows() {
        let Some(p) = (0..h.cols()).find(|&c| !h.at(r, c).is_zero()) else {
            break;
        };
        let (q, rest) = rem[p].div_mod_floor(h.at(r, p));
        if !rest.is_zero() {
            return Ok(false);
        }
        if !q.is_zero() {
            for c in p..h.cols() {
                let delta = &q * h.at(r, c);
                rem[c] -= delta;
            }
        }
    }
    Ok(rem.iter().all(Zero::is_zero))
}
