//! Coordinate subspaces in canonical (reduced-echelon) form.
//!
//! A subspace is stored as the unique reduced row-echelon basis of its row
//! space, so two values are equal as Rust values exactly when they are equal
//! as subspaces. This is what makes "computed two ways, compared exactly"
//! checks decidable downstream.

use crate::matrix::{LinAlgError, Matrix};
use crate::scalar::Scalar;

/// A subspace of `Q^ambient_dim` with a canonical echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonicalizes the span of the given vectors.
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == ambient_dim),
            "spanning vector has wrong length"
        );
        if rows.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let (reduced, pivots) = Matrix::from_rows(rows).rref();
        let basis = Matrix::from_fn(pivots.len(), ambient_dim, |r, c| reduced.get(r, c).clone());
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    /// The span of the columns of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Subspace::from_rows(
            m.rows(),
            (0..m.cols()).map(|c| m.column(c)).collect(),
        )
    }

    pub fn spanned_by(ambient_dim: usize, v: Vec<Scalar>) -> Self {
        Subspace::from_rows(ambient_dim, vec![v])
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical basis, one vector per row.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.basis.rows()).map(|r| self.basis.row(r))
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut rem = v.to_vec();
        for (row, &pivot) in self.pivots.iter().enumerate() {
            if rem[pivot].is_zero() {
                continue;
            }
            let factor = rem[pivot].clone();
            for (r, b) in rem.iter_mut().zip(self.basis.row(row)) {
                *r = &*r - &factor * b;
            }
        }
        rem.iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().all(|v| self.contains(v))
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let rows = self
            .basis_vectors()
            .chain(other.basis_vectors())
            .map(<[Scalar]>::to_vec)
            .collect();
        Ok(Subspace::from_rows(self.ambient_dim, rows))
    }

    /// Intersection by the Zassenhaus block construction.
    ///
    /// Rows of `[A | A]` over `[B | 0]` are reduced; rows whose left half
    /// vanishes carry an intersection basis in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let ka = self.dim();
        let kb = other.dim();
        let block = Matrix::from_fn(ka + kb, 2 * n, |r, c| {
            if r < ka {
                self.basis.get(r, c % n).clone()
            } else if c < n {
                other.basis.get(r - ka, c).clone()
            } else {
                Scalar::zero()
            }
        });
        let (reduced, _) = block.rref();
        let mut rows = Vec::new();
        for r in 0..reduced.rows() {
            let left_zero = (0..n).all(|c| reduced.get(r, c).is_zero());
            if left_zero {
                let right: Vec<Scalar> = (n..2 * n).map(|c| reduced.get(r, c).clone()).collect();
                if !right.iter().all(Scalar::is_zero) {
                    rows.push(right);
                }
            }
        }
        Ok(Subspace::from_rows(n, rows))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinAlgError::DimensionMismatch(format!(
                "subspaces live in dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}) {:?}",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}
