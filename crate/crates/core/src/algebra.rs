//! Finite-dimensional C*-algebras as direct sums of full matrix blocks.
//!
//! Every finite-dimensional C*-algebra is of the form `M_{n_1} ⊕ … ⊕ M_{n_r}`,
//! so an algebra is just its list of block sizes. Elements carry one square
//! complex matrix per block. The vector-space basis used everywhere else in
//! the crate is the family of matrix units `E^{(b)}_{pq}`, ordered by block,
//! then row, then column.

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64, ONE, ZERO};

/// Default tolerance for positivity checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CStarAlgebra {
    block_dims: Vec<usize>,
    offsets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    blocks: Vec<CMatrix>,
}

impl CStarAlgebra {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() || block_dims.contains(&0) {
            return Err(Error::Structural(format!(
                "block sizes must be a non-empty list of positive integers, got {block_dims:?}"
            )));
        }
        let mut offsets = Vec::with_capacity(block_dims.len());
        let mut acc = 0;
        for &n in &block_dims {
            offsets.push(acc);
            acc += n * n;
        }
        Ok(CStarAlgebra { block_dims, offsets })
    }

    /// The algebra ℂ.
    pub fn scalars() -> Self {
        CStarAlgebra::new(vec![1]).expect("non-empty")
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    /// Vector-space dimension `Σ n_i²`.
    pub fn dim(&self) -> usize {
        self.block_dims.iter().map(|n| n * n).sum()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self.block_dims.iter().map(|&n| CMatrix::zeros(n, n)).collect(),
        }
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self.block_dims.iter().map(|&n| CMatrix::identity(n, n)).collect(),
        }
    }

    pub fn element(&self, blocks: Vec<CMatrix>) -> Result<AlgebraElement> {
        let a = AlgebraElement { blocks };
        self.check(&a)?;
        Ok(a)
    }

    /// Diagonal-block convenience constructor for commutative algebras.
    pub fn diagonal(&self, entries: &[C64]) -> Result<AlgebraElement> {
        if entries.len() != self.block_dims.len() || self.block_dims.iter().any(|&n| n != 1) {
            return Err(Error::Structural("diagonal() needs a commutative algebra".into()));
        }
        Ok(AlgebraElement {
            blocks: entries.iter().map(|&z| CMatrix::from_element(1, 1, z)).collect(),
        })
    }

    pub fn owns(&self, a: &AlgebraElement) -> bool {
        a.blocks.len() == self.block_dims.len()
            && a.blocks.iter().zip(&self.block_dims).all(|(m, &n)| m.nrows() == n && m.ncols() == n)
    }

    pub fn check(&self, a: &AlgebraElement) -> Result<()> {
        if self.owns(a) {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "element with block shapes {:?} does not belong to algebra {:?}",
                a.shapes(),
                self.block_dims
            )))
        }
    }

    /// Index of the matrix unit `E^{(block)}_{row,col}`.
    pub fn basis_index(&self, block: usize, row: usize, col: usize) -> usize {
        self.offsets[block] + row * self.block_dims[block] + col
    }

    /// `(block, row, col)` of a basis index.
    pub fn basis_position(&self, idx: usize) -> (usize, usize, usize) {
        let block = self.offsets.partition_point(|&o| o <= idx) - 1;
        let n = self.block_dims[block];
        let local = idx - self.offsets[block];
        (block, local / n, local % n)
    }

    /// Index of `E_{qp}` given the index of `E_{pq}`, i.e. of the adjoint matrix unit.
    pub fn basis_adjoint(&self, idx: usize) -> usize {
        let (b, p, q) = self.basis_position(idx);
        self.basis_index(b, q, p)
    }

    pub fn basis_element(&self, idx: usize) -> AlgebraElement {
        let (b, p, q) = self.basis_position(idx);
        let mut a = self.zero();
        a.blocks[b][(p, q)] = ONE;
        a
    }

    pub fn basis(&self) -> Vec<AlgebraElement> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    pub fn to_coeffs(&self, a: &AlgebraElement) -> CVector {
        let mut v = CVector::zeros(self.dim());
        for (b, m) in a.blocks.iter().enumerate() {
            let n = self.block_dims[b];
            for p in 0..n {
                for q in 0..n {
                    v[self.basis_index(b, p, q)] = m[(p, q)];
                }
            }
        }
        v
    }

    pub fn from_coeffs(&self, v: &CVector) -> Result<AlgebraElement> {
        if v.len() != self.dim() {
            return Err(Error::Structural(format!(
                "coefficient vector of length {} for algebra of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        let blocks = self
            .block_dims
            .iter()
            .enumerate()
            .map(|(b, &n)| CMatrix::from_fn(n, n, |p, q| v[self.basis_index(b, p, q)]))
            .collect();
        Ok(AlgebraElement { blocks })
    }

    /// Faithful trace `τ(a) = Σ_i Tr(a_i)`.
    pub fn trace(&self, a: &AlgebraElement) -> C64 {
        a.trace()
    }
}

impl AlgebraElement {
    pub(crate) fn from_blocks_unchecked(blocks: Vec<CMatrix>) -> Self {
        AlgebraElement { blocks }
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<CMatrix> {
        self.blocks
    }

    fn shapes(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|m| m.shape()).collect()
    }

    fn same_shape(&self, other: &AlgebraElement) -> Result<()> {
        if self.shapes() == other.shapes() {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "mismatched owner algebras: {:?} vs {:?}",
                self.shapes(),
                other.shapes()
            )))
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_shape(other)?;
        Ok(AlgebraElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_shape(other)?;
        Ok(AlgebraElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_shape(other)?;
        Ok(AlgebraElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn scale(&self, z: C64) -> AlgebraElement {
        AlgebraElement {
            blocks: self.blocks.iter().map(|a| a * z).collect(),
        }
    }

    /// Blockwise conjugate transpose.
    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement {
            blocks: self.blocks.iter().map(|a| a.adjoint()).collect(),
        }
    }

    /// C*-norm: the largest singular value over all blocks.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.blocks.iter().map(|m| m.norm_squared()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        self.blocks.iter().map(|m| m.trace()).fold(ZERO, |a, b| a + b)
    }

    /// Hermitian to `tol` with every eigenvalue `≥ -tol` in each block.
    pub fn is_positive(&self, tol: f64) -> bool {
        self.blocks.iter().all(|m| {
            linalg::max_abs(&(m - m.adjoint())) <= tol
                && linalg::hermitian_eigenvalues(m).first().is_none_or(|&e| e >= -tol)
        })
    }

    /// Smallest eigenvalue of the Hermitian part, over all blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .filter_map(|m| linalg::hermitian_eigenvalues(m).first().copied())
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn diagonal_multiplication() {
        let a = CStarAlgebra::new(vec![1, 1]).unwrap();
        let x = a.diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let y = a.diagonal(&[c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        let expected = a.diagonal(&[c(3.0, 0.0), c(8.0, 0.0)]).unwrap();
        assert_eq!(x.mul(&y).unwrap(), expected);
    }

    #[test]
    fn involution_is_conjugate_transpose() {
        let a = CStarAlgebra::new(vec![2]).unwrap();
        let x = a.element(vec![CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO])]).unwrap();
        let want = a.element(vec![CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ONE, ZERO])]).unwrap();
        assert_eq!(x.adjoint(), want);
    }

    #[test]
    fn norm_of_diagonal_and_unit() {
        let a = CStarAlgebra::new(vec![1, 1]).unwrap();
        let x = a.diagonal(&[c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((x.norm() - 4.0).abs() < 1e-12);
        let b = CStarAlgebra::new(vec![1, 2, 3]).unwrap();
        assert!((b.unit().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn positivity_examples() {
        let a = CStarAlgebra::new(vec![2]).unwrap();
        let d = |x: f64, y: f64| {
            a.element(vec![CMatrix::from_diagonal(&CVector::from_vec(vec![c(x, 0.0), c(y, 0.0)]))])
                .unwrap()
        };
        assert!(d(1.0, 0.0).is_positive(DEFAULT_TOL));
        assert!(!d(1.0, -1.0).is_positive(DEFAULT_TOL));
    }

    #[test]
    fn trace_of_unit_counts_dimension() {
        let a = CStarAlgebra::new(vec![1, 2]).unwrap();
        assert_eq!(a.trace(&a.unit()), c(3.0, 0.0));
    }

    #[test]
    fn mismatched_owners_are_rejected() {
        let a = CStarAlgebra::new(vec![1, 1]).unwrap();
        let b = CStarAlgebra::new(vec![2]).unwrap();
        assert!(matches!(a.unit().mul(&b.unit()), Err(Error::Structural(_))));
        assert!(b.check(&a.unit()).is_err());
    }

    #[test]
    fn basis_indexing_round_trips() {
        let a = CStarAlgebra::new(vec![1, 2, 3]).unwrap();
        for i in 0..a.dim() {
            let (b, p, q) = a.basis_position(i);
            assert_eq!(a.basis_index(b, p, q), i);
            let e = a.basis_element(i);
            assert_eq!(e.adjoint(), a.basis_element(a.basis_adjoint(i)));
            assert_eq!(a.from_coeffs(&a.to_coeffs(&e)).unwrap(), e);
        }
        assert!(CStarAlgebra::new(vec![]).is_err());
        assert!(CStarAlgebra::new(vec![2, 0]).is_err());
    }
}
