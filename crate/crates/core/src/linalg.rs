//! Exact linear algebra over a [`FieldSpec`]: vectors, matrices, row
//! reduction, kernels, images, inverses and affine solving.
//!
//! Subspaces are canonicalized by reduced row-echelon form so that subspace
//! equality is representation equality.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry at index {index} lives in {found}, expected {expected}")]
    FieldMismatch {
        index: usize,
        expected: FieldSpec,
        found: FieldSpec,
    },
    #[error("expected {expected} entries, got {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("matrix is not invertible (rank {rank} < dimension {dim})")]
    NotInvertible { rank: usize, dim: usize },
    #[error("linear system has no solution")]
    NoSolution,
}

/// A coordinate vector with all entries in one field.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Vector {
    #[serde(skip)]
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: FieldSpec, entries: Vec<Scalar>) -> Result<Vector, LinalgError> {
        for (index, e) in entries.iter().enumerate() {
            if e.field() != field {
                return Err(LinalgError::FieldMismatch {
                    index,
                    expected: field,
                    found: e.field(),
                });
            }
        }
        Ok(Vector { field, entries })
    }

    pub fn zero(field: FieldSpec, len: usize) -> Vector {
        Vector {
            field,
            entries: vec![field.zero(); len],
        }
    }

    pub fn standard_basis(field: FieldSpec, len: usize, i: usize) -> Vector {
        assert!(i < len, "basis index {i} out of range for length {len}");
        let mut v = Vector::zero(field, len);
        v.entries[i] = field.one();
        v
    }

    pub fn from_i64(field: FieldSpec, entries: &[i64]) -> Vector {
        Vector {
            field,
            entries: entries.iter().map(|&n| field.from_i64(n)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entry(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn set(&mut self, i: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "field mismatch in Vector::set");
        self.entries[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A dense row-major matrix over one field.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Matrix {
    #[serde(skip)]
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Matrix, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        for (index, e) in entries.iter().enumerate() {
            if e.field() != field {
                return Err(LinalgError::FieldMismatch {
                    index,
                    expected: field,
                    found: e.field(),
                });
            }
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vector]) -> Matrix {
        let cols = rows.first().map(Vector::len).unwrap_or(0);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            assert_eq!(r.field(), field, "field mismatch in from_rows");
            entries.extend_from_slice(r.entries());
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            entries: entries.iter().map(|&n| field.from_i64(n)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "field mismatch in Matrix::set");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn col(&self, c: usize) -> Vector {
        Vector {
            field: self.field,
            entries: (0..self.rows).map(|r| self.get(r, c).clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch in mul");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c) + &(a * b);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        let mut out = Vector::zero(self.field, self.rows);
        for c in 0..self.cols {
            let x = v.entry(c);
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = self.get(r, c);
                if a.is_zero() {
                    continue;
                }
                let cur = out.entry(r) + &(a * x);
                out.set(r, cur);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count mismatch in vstack");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Puts `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(&self.entries[r * self.cols..(r + 1) * self.cols]);
            entries.extend_from_slice(&other.entries[r * other.cols..(r + 1) * other.cols]);
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols,
            entries,
        }
    }

    /// Reduced row-echelon form via Gauss-Jordan elimination.
    ///
    /// Returns the RREF together with the pivot columns; the row space is
    /// preserved and the result is canonical for it.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            let inv = m.get(pivot_row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(pivot_row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {v : self * v = 0} as a canonical subspace of K^cols.
    pub fn kernel_basis(&self) -> Subspace {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut rows = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = Vector::zero(self.field, self.cols);
            v.set(free, self.field.one());
            for (row, &pc) in pivots.iter().enumerate() {
                let coeff = rref.get(row, free);
                if !coeff.is_zero() {
                    v.set(pc, -coeff);
                }
            }
            rows.push(v);
        }
        Subspace::from_vectors(self.field, self.cols, &rows)
    }

    /// Column space as a canonical subspace of K^rows.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_matrix_rows(self.transpose())
    }

    /// Inverse of a square matrix.
    pub fn invert(&self) -> Result<Matrix, LinalgError> {
        assert_eq!(self.rows, self.cols, "invert requires a square matrix");
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (rref, pivots) = aug.rref();
        let rank_left = pivots.iter().filter(|&&c| c < n).count();
        if rank_left < n {
            return Err(LinalgError::NotInvertible {
                rank: rank_left,
                dim: n,
            });
        }
        let mut out = Matrix::zero(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, rref.get(r, n + c).clone());
            }
        }
        Ok(out)
    }

    /// Full solution set of self * x = rhs as particular solution plus kernel.
    pub fn solve_affine(&self, rhs: &Vector) -> Result<(Vector, Subspace), LinalgError> {
        assert_eq!(self.rows, rhs.len(), "rhs length mismatch in solve_affine");
        let rhs_col = Matrix {
            field: self.field,
            rows: rhs.len(),
            cols: 1,
            entries: rhs.entries().to_vec(),
        };
        let aug = self.hstack(&rhs_col);
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut particular = Vector::zero(self.field, self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            particular.set(pc, rref.get(row, self.cols).clone());
        }
        Ok((particular, self.kernel_basis()))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// A linear subspace of K^ambient_dim, stored as an RREF basis matrix with
/// full row rank. Two equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Subspace {
    #[serde(skip)]
    field: FieldSpec,
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Matrix::zero(field, 0, ambient_dim),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    /// Canonicalizes the row space of `m` (RREF, zero rows dropped).
    pub fn from_matrix_rows(m: Matrix) -> Subspace {
        let ambient_dim = m.cols();
        let field = m.field();
        let (rref, pivots) = m.rref();
        let rank = pivots.len();
        let mut entries = Vec::with_capacity(rank * ambient_dim);
        for r in 0..rank {
            entries.extend(rref.row(r).entries().iter().cloned());
        }
        Subspace {
            field,
            ambient_dim,
            basis: Matrix::new(field, rank, ambient_dim, entries).expect("validated rows"),
        }
    }

    pub fn from_vectors(field: FieldSpec, ambient_dim: usize, vectors: &[Vector]) -> Subspace {
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "spanning vector has wrong length");
        }
        if vectors.is_empty() {
            return Subspace::zero(field, ambient_dim);
        }
        Subspace::from_matrix_rows(Matrix::from_rows(field, vectors))
    }

    pub fn span_of(v: &Vector) -> Subspace {
        Subspace::from_vectors(v.field(), v.len(), std::slice::from_ref(v))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        (0..self.dim()).map(|r| self.basis.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &Vector) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector/ambient mismatch");
        // Reduce v against the RREF basis: each basis row has a 1 in its
        // pivot column and zeros there in all other rows.
        let (_, pivots) = self.basis.rref();
        let mut rem = v.clone();
        for (row, &pc) in pivots.iter().enumerate() {
            let coeff = rem.entry(pc).clone();
            if coeff.is_zero() {
                continue;
            }
            rem = rem.sub(&self.basis.row(row).scale(&coeff));
        }
        rem.is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(&other.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::from_matrix_rows(self.basis.vstack(&other.basis))
    }

    /// Direct complement spanned by the standard basis vectors at the
    /// non-pivot coordinates of the basis. Deterministic by construction.
    pub fn complement(&self) -> Subspace {
        let (_, pivots) = self.basis.rref();
        let mut is_pivot = vec![false; self.ambient_dim];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let rows: Vec<Vector> = (0..self.ambient_dim)
            .filter(|&c| !is_pivot[c])
            .map(|c| Vector::standard_basis(self.field, self.ambient_dim, c))
            .collect();
        Subspace::from_vectors(self.field, self.ambient_dim, &rows)
    }

    /// True if `self` and `other` intersect trivially (checked via the rank
    /// of the stacked bases).
    pub fn independent_from(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim() + other.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    /// Independent elimination oracle: forward elimination to echelon form
    /// without eliminating above pivots, then a separate backward pass.
    /// Structured differently from Matrix::rref on purpose.
    fn rref_oracle(m: &Matrix) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..m.rows())
            .map(|r| m.row(r).entries().to_vec())
            .collect();
        let cols = m.cols();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        // forward pass: echelon form with unnormalized pivots
        for col in 0..cols {
            let Some(sel) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(next, sel);
            for r in next + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = &rows[r][col] / &rows[next][col];
                for c in col..cols {
                    rows[r][c] = &rows[r][c] - &(&factor * &rows[next][c]);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        // backward pass: normalize and clear above
        for (row, &col) in pivots.iter().enumerate().rev() {
            let inv = rows[row][col].inv().unwrap();
            for c in 0..cols {
                rows[row][c] = &rows[row][c] * &inv;
            }
            for r in 0..row {
                let factor = rows[r][col].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..cols {
                    rows[r][c] = &rows[r][c] - &(&factor * &rows[row][c]);
                }
            }
        }
        let vectors: Vec<Vector> = rows
            .into_iter()
            .map(|r| Vector::new(m.field(), r).unwrap())
            .collect();
        (Matrix::from_rows(m.field(), &vectors), pivots)
    }

    #[test]
    fn rref_zero_matrix() {
        let m = Matrix::zero(q(), 2, 2);
        let (r, pivots) = m.rref();
        assert_eq!(r, m);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_identity_gf2() {
        let m = Matrix::identity(gf(2), 3);
        let (r, pivots) = m.rref();
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one_example() {
        let m = Matrix::from_i64(q(), 2, 2, &[2, 4, 1, 2]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Matrix::from_i64(q(), 2, 2, &[1, 2, 0, 0]));
        assert_eq!(pivots, vec![0]);
        let (or, op) = rref_oracle(&m);
        assert_eq!(r, or);
        assert_eq!(pivots, op);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert!(Matrix::identity(q(), 4).kernel_basis().is_zero());
    }

    #[test]
    fn kernel_of_zero_map_is_full() {
        let k = Matrix::zero(gf(3), 2, 2).kernel_basis();
        assert!(k.is_full());
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn image_of_identity_and_zero() {
        assert!(Matrix::identity(q(), 3).image_basis().is_full());
        assert!(Matrix::zero(q(), 3, 3).image_basis().is_zero());
    }

    #[test]
    fn image_of_bijective_alpha_is_full() {
        // determinant 1, so invertible; image must be the whole plane
        let alpha = Matrix::from_i64(q(), 2, 2, &[1, 1, 0, 1]);
        assert!(alpha.image_basis().is_full());
        let inv = alpha.invert().unwrap();
        assert!(alpha.mul(&inv).is_identity());
    }

    #[test]
    fn invert_identity() {
        let id = Matrix::identity(gf(5), 3);
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn invert_scalar_two_over_gf3() {
        let m = Matrix::from_i64(gf(3), 2, 2, &[2, 0, 0, 2]);
        assert_eq!(m.invert().unwrap(), m); // 2 * 2 = 1 mod 3
    }

    #[test]
    fn invert_rank_deficient_fails() {
        let m = Matrix::from_i64(q(), 2, 2, &[1, 1, 1, 1]);
        assert_eq!(
            m.invert(),
            Err(LinalgError::NotInvertible { rank: 1, dim: 2 })
        );
    }

    #[test]
    fn complement_of_full_and_zero() {
        assert!(Subspace::full(q(), 3).complement().is_zero());
        assert!(Subspace::zero(q(), 3).complement().is_full());
    }

    #[test]
    fn complement_uses_non_pivot_coordinates() {
        let s = Subspace::span_of(&Vector::from_i64(q(), &[1, 0, 0]));
        let c = s.complement();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&Vector::from_i64(q(), &[0, 1, 0])));
        assert!(c.contains(&Vector::from_i64(q(), &[0, 0, 1])));
        assert!(s.independent_from(&c));
    }

    #[test]
    fn solve_affine_identity() {
        let id = Matrix::identity(q(), 3);
        let b = Vector::from_i64(q(), &[1, -2, 3]);
        let (part, hom) = id.solve_affine(&b).unwrap();
        assert_eq!(part, b);
        assert!(hom.is_zero());
    }

    #[test]
    fn solve_affine_inconsistent() {
        let zero = Matrix::zero(q(), 2, 2);
        let b = Vector::from_i64(q(), &[1, 0]);
        assert_eq!(zero.solve_affine(&b), Err(LinalgError::NoSolution));
    }

    #[test]
    fn solve_affine_gf2_line() {
        // One equation x0 + x1 = 1 over GF(2); exhaustive check over the
        // 4 candidate vectors says solutions are exactly (1,0) and (0,1).
        let m = Matrix::from_i64(gf(2), 1, 2, &[1, 1]);
        let b = Vector::from_i64(gf(2), &[1]);
        let (part, hom) = m.solve_affine(&b).unwrap();
        assert_eq!(part, Vector::from_i64(gf(2), &[1, 0]));
        assert_eq!(hom.dim(), 1);
        assert!(hom.contains(&Vector::from_i64(gf(2), &[1, 1])));
        let mut solutions = Vec::new();
        for x0 in 0..2 {
            for x1 in 0..2 {
                let v = Vector::from_i64(gf(2), &[x0, x1]);
                if m.mul_vec(&v) == b {
                    solutions.push(v);
                }
            }
        }
        assert_eq!(solutions.len(), 2);
        for s in solutions {
            assert!(hom.contains(&s.sub(&part)));
        }
    }

    fn small_matrix(field: FieldSpec) -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-4i64..5, r * c)
                .prop_map(move |v| Matrix::from_i64(field, r, c, &v))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix(FieldSpec::Rationals)) {
            prop_assert_eq!(m.kernel_basis().dim() + m.image_basis().dim(), m.cols());
        }

        #[test]
        fn rank_nullity_gf5(m in small_matrix(FieldSpec::prime(5).unwrap())) {
            prop_assert_eq!(m.kernel_basis().dim() + m.image_basis().dim(), m.cols());
        }

        #[test]
        fn rref_is_idempotent(m in small_matrix(FieldSpec::Rationals)) {
            let (r1, _) = m.rref();
            let (r2, _) = r1.rref();
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn rref_matches_independent_oracle(m in small_matrix(FieldSpec::prime(7).unwrap())) {
            let (r, p) = m.rref();
            let (or, op) = rref_oracle(&m);
            prop_assert_eq!(r, or);
            prop_assert_eq!(p, op);
        }

        #[test]
        fn kernel_vectors_are_killed(m in small_matrix(FieldSpec::Rationals)) {
            let k = m.kernel_basis();
            for v in k.basis_vectors() {
                prop_assert!(m.mul_vec(&v).is_zero());
            }
        }

        #[test]
        fn complement_splits_ambient(m in small_matrix(FieldSpec::prime(3).unwrap())) {
            let s = Subspace::from_matrix_rows(m);
            let c = s.complement();
            prop_assert_eq!(s.dim() + c.dim(), s.ambient_dim());
            prop_assert!(s.independent_from(&c));
        }

        #[test]
        fn inverse_is_two_sided(m in small_matrix(FieldSpec::prime(5).unwrap())) {
            prop_assume!(m.rows() == m.cols());
            if let Ok(inv) = m.invert() {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(inv.mul(&m).is_identity());
            }
        }

        #[test]
        fn solve_affine_solutions_solve(m in small_matrix(FieldSpec::Rationals)) {
            let rhs = m.mul_vec(&Vector::from_i64(FieldSpec::Rationals, &vec![1; m.cols()]));
            let (part, hom) = m.solve_affine(&rhs).unwrap();
            prop_assert_eq!(m.mul_vec(&part), rhs.clone());
            for v in hom.basis_vectors() {
                prop_assert_eq!(m.mul_vec(&part.add(&v)), rhs.clone());
            }
        }
    }
}
