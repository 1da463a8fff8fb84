//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Largest singular value; zero for empty matrices.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0_f64, |acc, &s| acc.max(s))
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let h = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Hermitian eigendecomposition, eigenvalues ascending with matching columns.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let h = (m + m.adjoint()).scale(0.5);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Orthonormal basis (columns) of the null space of `m`, using `tol` as the
/// singular-value cutoff.
pub fn null_space(m: &CMatrix, tol: f64) -> CMatrix {
    let n = m.ncols();
    // Pad to at least square so the thin SVD carries a full right basis.
    let rows = m.nrows().max(n);
    let mut padded = CMatrix::zeros(rows, n);
    padded.view_mut((0, 0), m.shape()).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let top = svd.singular_values.iter().fold(0.0_f64, |a, &s| a.max(s));
    let cut = tol * top.max(1.0);
    let cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] < cut)
        .collect();
    CMatrix::from_fn(n, cols.len(), |r, c| v_t[(cols[c], r)].conj())
}

/// Numerical rank with relative cutoff `rel_tol` on singular values.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().fold(0.0_f64, |a, &s| a.max(s));
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Minimum-norm least-squares solution of `m x = b`.
pub fn least_squares(m: &CMatrix, b: &CVector, rel_tol: f64) -> CVector {
    let svd = m.clone().svd(true, true);
    let top = svd.singular_values.iter().fold(0.0_f64, |a, &s| a.max(s));
    let eps = (rel_tol * top).max(f64::MIN_POSITIVE);
    svd.solve(b, eps).expect("svd computed with both factors")
}

/// Inverse of a Hermitian positive-definite matrix.
pub fn inverse_pd(m: &CMatrix) -> Option<CMatrix> {
    let h = (m + m.adjoint()).scale(0.5);
    h.cholesky().map(|c| c.inverse())
}

/// Lower Cholesky factor of a Hermitian positive-definite matrix.
pub fn cholesky_factor(m: &CMatrix) -> Option<CMatrix> {
    let h = (m + m.adjoint()).scale(0.5);
    h.cholesky().map(|c| c.l())
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_norm_of_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(3.0, 0.0), c(0.0, 4.0)]));
        assert!((spectral_norm(&m) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = CMatrix::from_row_slice(2, 2, &[ONE, ONE, ONE, ONE]);
        let ns = null_space(&m, 1e-9);
        assert_eq!(ns.ncols(), 1);
        assert!((&m * &ns).norm() < 1e-12);
        assert_eq!(rank(&m, 1e-12), 1);
    }

    #[test]
    fn least_squares_recovers_solution() {
        let m = CMatrix::from_row_slice(3, 2, &[ONE, ZERO, ZERO, ONE, ONE, ONE]);
        let x = CVector::from_vec(vec![c(1.0, 2.0), c(-0.5, 0.0)]);
        let b = &m * &x;
        let got = least_squares(&m, &b, 1e-12);
        assert!((got - x).norm() < 1e-12);
    }
}
