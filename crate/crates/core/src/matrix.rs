//! Dense matrices over an exact field, plus the independent elimination
//! oracle used to cross-check every structured fast path in this crate.
//!
//! [`DenseMatrix`] is a plain row-major matrix of [`Scalar`]s with explicit
//! dimensions. It exists for exactness and clarity, not speed: the structured
//! O(n²) routines live in [`crate::cauchy`], and this module supplies the
//! O(n³) classical algorithms ([`gaussian_inverse_oracle`], [`solve_oracle`],
//! [`DenseMatrix::rank`]) they are tested against.

use std::fmt;

use thiserror::Error;

use crate::scalar::{common_field, Field, FieldError, Scalar};

/// Errors from matrix construction and dense linear algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    /// Entry count does not equal `n_rows * n_cols`, or a dimension is zero.
    #[error("bad shape: {n_rows}x{n_cols} with {n_entries} entries")]
    BadShape {
        /// Declared row count.
        n_rows: usize,
        /// Declared column count.
        n_cols: usize,
        /// Number of entries supplied.
        n_entries: usize,
    },
    /// Dimensions incompatible for the requested operation.
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols} for {operation}")]
    DimensionMismatch {
        /// Rows of the left operand.
        left_rows: usize,
        /// Columns of the left operand.
        left_cols: usize,
        /// Rows of the right operand.
        right_rows: usize,
        /// Columns of the right operand.
        right_cols: usize,
        /// Human-readable name of the operation.
        operation: &'static str,
    },
    /// A square-only operation was applied to a non-square matrix.
    #[error("matrix is {n_rows}x{n_cols}, but {operation} needs a square matrix")]
    NotSquare {
        /// Row count.
        n_rows: usize,
        /// Column count.
        n_cols: usize,
        /// Human-readable name of the operation.
        operation: &'static str,
    },
    /// Inversion of a singular matrix; carries the rank found by elimination.
    #[error("matrix is singular (rank {rank})")]
    Singular {
        /// Rank established by the elimination.
        rank: usize,
    },
    /// Scalar-level failure (mixed fields, division by zero).
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A dense row-major matrix over one exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries; all entries must share one
    /// field and the shape must be non-empty and consistent.
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<Scalar>) -> Result<Self, MatrixError> {
        if n_rows == 0 || n_cols == 0 || entries.len() != n_rows * n_cols {
            return Err(MatrixError::BadShape {
                n_rows,
                n_cols,
                n_entries: entries.len(),
            });
        }
        common_field(&entries)?;
        Ok(DenseMatrix {
            n_rows,
            n_cols,
            entries,
        })
    }

    /// Builds a matrix by evaluating `f(row, col)` at every position.
    pub fn from_fn(
        n_rows: usize,
        n_cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Self, MatrixError> {
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                entries.push(f(i, j));
            }
        }
        DenseMatrix::new(n_rows, n_cols, entries)
    }

    /// The n×n identity over `field`.
    pub fn identity(n: usize, field: &Field) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        DenseMatrix {
            n_rows: n,
            n_cols: n,
            entries,
        }
    }

    /// The n×n diagonal matrix with the given diagonal.
    pub fn diagonal(diag: &[Scalar]) -> Result<Self, MatrixError> {
        let field = common_field(diag)?;
        let n = diag.len();
        let mut m = DenseMatrix::identity(n, &field);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        Ok(m)
    }

    /// Row count.
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    /// Column count.
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// The common field of the entries.
    pub fn field(&self) -> Field {
        self.entries[0].field()
    }

    /// Whether the matrix is square.
    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    /// Borrows the entry at `(row, col)`.
    ///
    /// # Panics
    ///
    /// Panics if the position is out of bounds.
    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        assert!(row < self.n_rows && col < self.n_cols, "index out of bounds");
        &self.entries[row * self.n_cols + col]
    }

    /// Replaces the entry at `(row, col)`.
    ///
    /// # Panics
    ///
    /// Panics if the position is out of bounds.
    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.n_rows && col < self.n_cols, "index out of bounds");
        self.entries[row * self.n_cols + col] = value;
    }

    /// Borrows the row-major entry slice.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Borrows one row as a slice.
    pub fn row(&self, row: usize) -> &[Scalar] {
        assert!(row < self.n_rows, "row out of bounds");
        &self.entries[row * self.n_cols..(row + 1) * self.n_cols]
    }

    /// Clones one column into a vector.
    pub fn column(&self, col: usize) -> Vec<Scalar> {
        assert!(col < self.n_cols, "column out of bounds");
        (0..self.n_rows).map(|i| self.get(i, col).clone()).collect()
    }

    /// The transpose.
    pub fn transpose(&self) -> DenseMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.n_cols {
            for i in 0..self.n_rows {
                entries.push(self.get(i, j).clone());
            }
        }
        DenseMatrix {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            entries,
        }
    }

    /// Entrywise negation.
    pub fn negated(&self) -> DenseMatrix {
        DenseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: self.entries.iter().map(|e| e.negate()).collect(),
        }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
        self.zip_entrywise(other, "matrix addition", |a, b| a.try_add(b))
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
        self.zip_entrywise(other, "matrix subtraction", |a, b| a.try_sub(b))
    }

    fn zip_entrywise(
        &self,
        other: &DenseMatrix,
        operation: &'static str,
        f: impl Fn(&Scalar, &Scalar) -> Result<Scalar, FieldError>,
    ) -> Result<DenseMatrix, MatrixError> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.n_rows,
                left_cols: self.n_cols,
                right_rows: other.n_rows,
                right_cols: other.n_cols,
                operation,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DenseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries,
        })
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
        if self.n_cols != other.n_rows {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.n_rows,
                left_cols: self.n_cols,
                right_rows: other.n_rows,
                right_cols: other.n_cols,
                operation: "matrix multiplication",
            });
        }
        let field = self.field();
        if other.field() != field {
            return Err(FieldError::MismatchedFields {
                left: field,
                right: other.field(),
            }
            .into());
        }
        let mut entries = Vec::with_capacity(self.n_rows * other.n_cols);
        for i in 0..self.n_rows {
            for j in 0..other.n_cols {
                let mut acc = field.zero();
                for k in 0..self.n_cols {
                    acc += &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(DenseMatrix {
            n_rows: self.n_rows,
            n_cols: other.n_cols,
            entries,
        })
    }

    /// Scales every entry by `c`.
    pub fn scale(&self, c: &Scalar) -> DenseMatrix {
        DenseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Matrix–vector product `self · v`.
    pub fn matvec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, MatrixError> {
        if v.len() != self.n_cols {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.n_rows,
                left_cols: self.n_cols,
                right_rows: v.len(),
                right_cols: 1,
                operation: "matrix-vector product",
            });
        }
        let field = self.field();
        let mut out = Vec::with_capacity(self.n_rows);
        for i in 0..self.n_rows {
            let mut acc = field.zero();
            for (j, vj) in v.iter().enumerate() {
                acc += &(self.get(i, j) * vj);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Whether every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Whether this is the identity matrix.
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.entries.iter().enumerate().all(|(idx, e)| {
                let (i, j) = (idx / self.n_cols, idx % self.n_cols);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
    }

    /// Rank, by exact Gaussian elimination (partial pivot on the first
    /// nonzero entry of each column).
    pub fn rank(&self) -> usize {
        let mut work = self.entries.clone();
        let (rank, _) = eliminate(&mut work, self.n_rows, self.n_cols);
        rank
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n_rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row-echelon elimination in place over a row-major buffer; returns
/// `(rank, pivot columns)`. Pivoting picks the first row with a nonzero
/// entry in the current column.
fn eliminate(entries: &mut [Scalar], n_rows: usize, n_cols: usize) -> (usize, Vec<usize>) {
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..n_cols {
        if pivot_row == n_rows {
            break;
        }
        let Some(src) = (pivot_row..n_rows).find(|&r| !entries[r * n_cols + col].is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..n_cols {
                entries.swap(pivot_row * n_cols + c, src * n_cols + c);
            }
        }
        let pivot = entries[pivot_row * n_cols + col].clone();
        let pivot_inv = pivot.inv().expect("pivot is nonzero by selection");
        for c in col..n_cols {
            let v = &entries[pivot_row * n_cols + c] * &pivot_inv;
            entries[pivot_row * n_cols + c] = v;
        }
        for r in 0..n_rows {
            if r == pivot_row || entries[r * n_cols + col].is_zero() {
                continue;
            }
            let factor = entries[r * n_cols + col].clone();
            for c in col..n_cols {
                let delta = &entries[pivot_row * n_cols + c] * &factor;
                let v = &entries[r * n_cols + c] - &delta;
                entries[r * n_cols + c] = v;
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    (pivot_row, pivot_cols)
}

/// Exact inverse by Gauss–Jordan elimination on `[m | I]` with partial
/// pivoting on the first nonzero entry. This is the independent O(n³) oracle
/// the structured Cauchy inverse is checked against; it shares no code with
/// the structured path.
pub fn gaussian_inverse_oracle(m: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare {
            n_rows: m.n_rows,
            n_cols: m.n_cols,
            operation: "inversion",
        });
    }
    let n = m.n_rows;
    let field = m.field();
    let width = 2 * n;
    let mut work = Vec::with_capacity(n * width);
    for i in 0..n {
        work.extend(m.row(i).iter().cloned());
        for j in 0..n {
            work.push(if i == j { field.one() } else { field.zero() });
        }
    }
    // Forward elimination restricted to the left block decides rank.
    let mut pivot_row = 0usize;
    for col in 0..n {
        let Some(src) = (pivot_row..n).find(|&r| !work[r * width + col].is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..width {
                work.swap(pivot_row * width + c, src * width + c);
            }
        }
        let pivot_inv = work[pivot_row * width + col]
            .inv()
            .expect("pivot is nonzero by selection");
        for c in 0..width {
            let v = &work[pivot_row * width + c] * &pivot_inv;
            work[pivot_row * width + c] = v;
        }
        for r in 0..n {
            if r == pivot_row || work[r * width + col].is_zero() {
                continue;
            }
            let factor = work[r * width + col].clone();
            for c in 0..width {
                let delta = &work[pivot_row * width + c] * &factor;
                let v = &work[r * width + c] - &delta;
                work[r * width + c] = v;
            }
        }
        pivot_row += 1;
    }
    if pivot_row < n {
        return Err(MatrixError::Singular { rank: pivot_row });
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(work[i * width + n + j].clone());
        }
    }
    Ok(DenseMatrix {
        n_rows: n,
        n_cols: n,
        entries,
    })
}

/// Exact linear solve `m · y = rhs` by Gaussian elimination on the augmented
/// system (the O(n³) oracle the structured solve is checked against).
pub fn solve_oracle(m: &DenseMatrix, rhs: &[Scalar]) -> Result<Vec<Scalar>, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare {
            n_rows: m.n_rows,
            n_cols: m.n_cols,
            operation: "linear solve",
        });
    }
    let n = m.n_rows;
    if rhs.len() != n {
        return Err(MatrixError::DimensionMismatch {
            left_rows: n,
            left_cols: n,
            right_rows: rhs.len(),
            right_cols: 1,
            operation: "linear solve",
        });
    }
    let width = n + 1;
    let mut work = Vec::with_capacity(n * width);
    for i in 0..n {
        work.extend(m.row(i).iter().cloned());
        work.push(rhs[i].clone());
    }
    let mut pivot_row = 0usize;
    for col in 0..n {
        let Some(src) = (pivot_row..n).find(|&r| !work[r * width + col].is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..width {
                work.swap(pivot_row * width + c, src * width + c);
            }
        }
        let pivot_inv = work[pivot_row * width + col]
            .inv()
            .expect("pivot is nonzero by selection");
        for c in col..width {
            let v = &work[pivot_row * width + c] * &pivot_inv;
            work[pivot_row * width + c] = v;
        }
        for r in 0..n {
            if r == pivot_row || work[r * width + col].is_zero() {
                continue;
            }
            let factor = work[r * width + col].clone();
            for c in col..width {
                let delta = &work[pivot_row * width + c] * &factor;
                let v = &work[r * width + c] - &delta;
                work[r * width + c] = v;
            }
        }
        pivot_row += 1;
    }
    if pivot_row < n {
        return Err(MatrixError::Singular { rank: pivot_row });
    }
    Ok((0..n).map(|i| work[i * width + n].clone()).collect())
}
