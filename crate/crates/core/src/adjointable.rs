//! Adjointable maps between ladder levels.
//!
//! Adjoints and operator norms are computed on the Hilbert space obtained by
//! scalarizing the module inner product with the faithful trace. Adjointable
//! module maps form a C*-algebra represented faithfully there, so the scalar
//! adjoint is the module adjoint and the scalar operator norm is the module
//! operator norm.

use crate::algebra::AlgebraElement;
use crate::bimodule::{Bimodule, ModuleElement, Side};
use crate::error::{Error, Result};
use crate::ladder::TensorLadder;
use crate::linalg::{self, CMatrix, CVector, C64};

/// Tolerance on linearity residuals of computed adjoints, relative to `max(1, ‖T‖)`.
pub const LINEARITY_TOL: f64 = 1e-9;
/// Tolerance on `‖T − T^n_η‖` after symbol extraction, relative to `max(1, ‖T‖)`.
pub const EXTRACT_TOL: f64 = 1e-8;
/// Residual allowed in `Σ ⟨u_i, v_i⟩_L = 1`.
pub const UNIT_TOL: f64 = 1e-10;

/// A linear map between two ladder levels.
///
/// `Side::Right` maps are right `A`-linear (elements of `L_R`), which is the
/// default. Right creation operators `y ↦ y ⊗ z` are left-linear and carry
/// `Side::Left`; their adjoint is taken for the left inner products.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointableMap {
    side: Side,
    source: i32,
    target: i32,
    matrix: CMatrix,
}

impl AdjointableMap {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn source(&self) -> i32 {
        self.source
    }

    pub fn target(&self) -> i32 {
        self.target
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &ModuleElement) -> Result<ModuleElement> {
        if x.len() != self.matrix.ncols() {
            return Err(Error::Structural(format!(
                "map from a level of dimension {} applied to a vector of length {}",
                self.matrix.ncols(),
                x.len()
            )));
        }
        Ok(&self.matrix * x)
    }

    fn same_shape(&self, other: &AdjointableMap) -> Result<()> {
        if (self.side, self.source, self.target) == (other.side, other.source, other.target) {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "maps {}→{} and {}→{} are not comparable",
                self.source, self.target, other.source, other.target
            )))
        }
    }

    pub fn add(&self, other: &AdjointableMap) -> Result<AdjointableMap> {
        self.same_shape(other)?;
        Ok(AdjointableMap {
            matrix: &self.matrix + &other.matrix,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &AdjointableMap) -> Result<AdjointableMap> {
        self.same_shape(other)?;
        Ok(AdjointableMap {
            matrix: &self.matrix - &other.matrix,
            ..self.clone()
        })
    }

    pub fn scale(&self, z: C64) -> AdjointableMap {
        AdjointableMap {
            matrix: &self.matrix * z,
            ..self.clone()
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AdjointableMap) -> Result<AdjointableMap> {
        if other.target != self.source || other.side != self.side {
            return Err(Error::Structural(format!(
                "cannot compose {}→{} after {}→{}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(AdjointableMap {
            side: self.side,
            source: other.source,
            target: self.target,
            matrix: &self.matrix * &other.matrix,
        })
    }
}

impl TensorLadder {
    /// Wraps a matrix as a right-linear map from level `source` to level `target`.
    pub fn map(&self, source: i32, target: i32, matrix: CMatrix) -> Result<AdjointableMap> {
        self.map_on_side(Side::Right, source, target, matrix)
    }

    pub fn map_on_side(&self, side: Side, source: i32, target: i32, matrix: CMatrix) -> Result<AdjointableMap> {
        let (dd, dc) = (self.dim(source)?, self.dim(target)?);
        if matrix.shape() != (dc, dd) {
            return Err(Error::Structural(format!(
                "map {source}→{target} needs a {dc}x{dd} matrix, got {:?}",
                matrix.shape()
            )));
        }
        Ok(AdjointableMap {
            side,
            source,
            target,
            matrix,
        })
    }

    pub fn zero_map(&self, source: i32, target: i32) -> Result<AdjointableMap> {
        let (dd, dc) = (self.dim(source)?, self.dim(target)?);
        self.map(source, target, CMatrix::zeros(dc, dd))
    }

    pub fn identity_map(&self, n: i32) -> Result<AdjointableMap> {
        let d = self.dim(n)?;
        self.map(n, n, CMatrix::identity(d, d))
    }

    /// Largest violation of `T(xb) = T(x)b` (right) or `T(ax) = aT(x)` (left) over basis elements.
    pub fn linearity_residual(&self, t: &AdjointableMap) -> Result<f64> {
        let dom = self.level(t.source)?;
        let cod = self.level(t.target)?;
        let (d_act, c_act) = match t.side {
            Side::Right => (dom.right_action_tensor(), cod.right_action_tensor()),
            Side::Left => (dom.left_action_tensor(), cod.left_action_tensor()),
        };
        Ok(d_act
            .iter()
            .zip(c_act)
            .map(|(a, b)| linalg::spectral_norm(&(&t.matrix * a - b * &t.matrix)))
            .fold(0.0, f64::max))
    }

    /// Operator norm for the module norms, through the τ-localized Hilbert space.
    pub fn op_norm(&self, t: &AdjointableMap) -> Result<f64> {
        let ld = linalg::cholesky_factor(self.level(t.source)?.gram(t.side))
            .ok_or_else(|| Error::InvalidModule(format!("level {} Gram form not definite", t.source)))?;
        let lc = linalg::cholesky_factor(self.level(t.target)?.gram(t.side))
            .ok_or_else(|| Error::InvalidModule(format!("level {} Gram form not definite", t.target)))?;
        let ld_inv_h = ld
            .adjoint()
            .try_inverse()
            .ok_or_else(|| Error::InvalidModule("singular Cholesky factor".into()))?;
        Ok(linalg::spectral_norm(&(lc.adjoint() * &t.matrix * ld_inv_h)))
    }

    /// `‖T − S‖` in operator norm.
    pub fn distance(&self, t: &AdjointableMap, s: &AdjointableMap) -> Result<f64> {
        self.op_norm(&t.sub(s)?)
    }

    /// The module adjoint: `⟨Tx, y⟩ = ⟨x, T*y⟩` for the inner product of `T`'s side.
    pub fn adjoint(&self, t: &AdjointableMap) -> Result<AdjointableMap> {
        let matrix = self.scalar_adjoint(t.side, t.source, t.target, &t.matrix)?;
        let s = AdjointableMap {
            side: t.side,
            source: t.target,
            target: t.source,
            matrix,
        };
        let res = self.linearity_residual(&s)?;
        let scale = self.op_norm(t)?.max(1.0);
        if res > LINEARITY_TOL * scale {
            return Err(Error::NotAdjointable(res));
        }
        Ok(s)
    }

    /// `T^n_y : X^{⊗n} → X^{⊗(n+p)}`, `z ↦ y ⊗ z` for `y ∈ X^{⊗p}`.
    pub fn creation_left(&self, p: i32, y: &ModuleElement, n: i32) -> Result<AdjointableMap> {
        let k = self.contraction(p, n)?;
        self.level(p)?.check_element(y)?;
        let dn = self.dim(n)?;
        let ycol = CMatrix::from_column_slice(y.len(), 1, y.as_slice());
        let matrix = k * linalg::kron(&ycol, &CMatrix::identity(dn, dn));
        self.map(n, n + p, matrix)
    }

    /// `R_z : X^{⊗n} → X^{⊗(n+q)}`, `y ↦ y ⊗ z` for `z ∈ X^{⊗q}`. Left-linear.
    pub fn creation_right(&self, q: i32, z: &ModuleElement, n: i32) -> Result<AdjointableMap> {
        let k = self.contraction(n, q)?;
        self.level(q)?.check_element(z)?;
        let dn = self.dim(n)?;
        let zcol = CMatrix::from_column_slice(z.len(), 1, z.as_slice());
        let matrix = k * linalg::kron(&CMatrix::identity(dn, dn), &zcol);
        self.map_on_side(Side::Left, n, n + q, matrix)
    }

    fn symbol_unchecked(&self, t: &AdjointableMap) -> Result<ModuleElement> {
        let (n, m) = (t.source, t.target);
        let k = m - n;
        self.check_level(k)?;
        let pairs = unit_decomposition(self.level(n)?)?;
        let mut eta = CVector::zeros(self.dim(k)?);
        for (u, v) in &pairs {
            let r = self.creation_right(n, v, k)?;
            let r_adj = self.scalar_adjoint(Side::Left, k, m, r.matrix())?;
            eta += r_adj * (&t.matrix * u);
        }
        Ok(eta)
    }

    /// The unique `η ∈ X^{⊗(m−n)}` with `T = T^n_η`, for `T : X^{⊗n} → X^{⊗m}`.
    ///
    /// `η = Σ_i (R_{v_i})^*(T u_i)` where `Σ_i ⟨u_i, v_i⟩_L = 1` on level `n`.
    pub fn extract_symbol(&self, t: &AdjointableMap) -> Result<ModuleElement> {
        if t.side != Side::Right {
            return Err(Error::Structural("symbols are defined for right-linear maps".into()));
        }
        let eta = self.symbol_unchecked(t)?;
        let rebuilt = self.creation_left(t.target - t.source, &eta, t.source)?;
        let res = self.distance(t, &rebuilt)?;
        if res > EXTRACT_TOL * self.op_norm(t)?.max(1.0) {
            return Err(Error::NotCreationOperator(res));
        }
        Ok(eta)
    }

    /// `H(φ)` for `φ : A → X^{⊗p}`: the map `bz ↦ φ(b) ⊗ z` on level `n`.
    pub fn multiplier_h(&self, phi: &AdjointableMap, n: i32) -> Result<AdjointableMap> {
        if phi.source != 0 || phi.side != Side::Right {
            return Err(Error::Structural("H expects a right-linear map out of level 0".into()));
        }
        let one = self.algebra().to_coeffs(&self.algebra().unit());
        let y = phi.apply(&one)?;
        self.creation_left(phi.target, &y, n)
    }

    /// `J(T)` for `T : X^{⊗n} → X^{⊗(n+p)}`: the map `b ↦ ηb` on level 0.
    pub fn multiplier_j(&self, t: &AdjointableMap) -> Result<AdjointableMap> {
        let eta = self.extract_symbol(t)?;
        self.creation_left(t.target - t.source, &eta, 0)
    }

    /// `α^{n,m}`: `L_R(X^{⊗n}, X^{⊗m}) → L_R(X^{⊗n−1}, X^{⊗m−1})`.
    pub fn alpha_shift(&self, t: &AdjointableMap) -> Result<AdjointableMap> {
        self.check_level(t.source - 1)?;
        self.check_level(t.target - 1)?;
        let eta = self.extract_symbol(t)?;
        self.creation_left(t.target - t.source, &eta, t.source - 1)
    }

    /// Inverse of [`TensorLadder::alpha_shift`], raising both levels by one.
    pub fn alpha_unshift(&self, t: &AdjointableMap) -> Result<AdjointableMap> {
        self.check_level(t.source + 1)?;
        self.check_level(t.target + 1)?;
        let eta = self.extract_symbol(t)?;
        self.creation_left(t.target - t.source, &eta, t.source + 1)
    }

    /// `α` without the reconstruction guard; used by the Toeplitz predicate,
    /// which measures the mismatch itself.
    pub(crate) fn alpha_shift_unchecked(&self, t: &AdjointableMap) -> Result<AdjointableMap> {
        self.check_level(t.source - 1)?;
        self.check_level(t.target - 1)?;
        let eta = self.symbol_unchecked(t)?;
        self.creation_left(t.target - t.source, &eta, t.source - 1)
    }

    /// `(a·T)(z) = aT(z)`.
    pub fn act_left_on_map(&self, a: &AlgebraElement, t: &AdjointableMap) -> Result<AdjointableMap> {
        let l = self.level(t.target)?;
        l.left_algebra().check(a)?;
        Ok(AdjointableMap {
            matrix: l.left_action_matrix(a) * &t.matrix,
            ..t.clone()
        })
    }

    /// `(T·b)(z) = T(bz)`.
    pub fn act_right_on_map(&self, t: &AdjointableMap, b: &AlgebraElement) -> Result<AdjointableMap> {
        let l = self.level(t.source)?;
        l.left_algebra().check(b)?;
        Ok(AdjointableMap {
            matrix: &t.matrix * l.left_action_matrix(b),
            ..t.clone()
        })
    }
}

/// Pairs `(u_i, v_i)` with `Σ_i ⟨u_i, v_i⟩_L = 1`, obtained by a least-squares
/// solve over all basis pairs. One pair per basis vector: `u_i = e_i`.
pub fn unit_decomposition(z: &Bimodule) -> Result<Vec<(ModuleElement, ModuleElement)>> {
    let alg = z.left_algebra();
    let d = z.dim();
    let mut m = CMatrix::zeros(alg.dim(), d * d);
    for i in 0..d {
        for j in 0..d {
            let v = alg.to_coeffs(&z.inner_left(&z.basis_element(i), &z.basis_element(j)));
            m.set_column(i * d + j, &v);
        }
    }
    let rank = linalg::rank(&m, 1e-10);
    if rank < alg.dim() {
        return Err(Error::NotFull {
            rank,
            expected: alg.dim(),
        });
    }
    let one = alg.to_coeffs(&alg.unit());
    let c = linalg::least_squares(&m, &one, 1e-12);
    let pairs: Vec<(ModuleElement, ModuleElement)> = (0..d)
        .map(|i| {
            let v = CVector::from_fn(d, |j, _| c[i * d + j].conj());
            (z.basis_element(i), v)
        })
        .collect();
    let mut total = alg.zero();
    for (u, v) in &pairs {
        total = total.add(&z.inner_left(u, v))?;
    }
    let res = total.sub(&alg.unit())?.norm();
    if res > UNIT_TOL {
        return Err(Error::NotFull {
            rank,
            expected: alg.dim(),
        });
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CStarAlgebra;
    use crate::linalg::c;

    fn scalar_ladder() -> TensorLadder {
        TensorLadder::build(Bimodule::algebra(&CStarAlgebra::scalars()), 2).unwrap()
    }

    fn s(z: C64) -> CVector {
        CVector::from_vec(vec![z])
    }

    #[test]
    fn scalar_adjoint_is_conjugate() {
        let l = scalar_ladder();
        let t = l.map(1, 1, CMatrix::from_element(1, 1, c(2.0, 3.0))).unwrap();
        let a = l.adjoint(&t).unwrap();
        assert!((a.matrix()[(0, 0)] - c(2.0, -3.0)).norm() < 1e-14);
    }

    #[test]
    fn scalar_creation_is_multiplication() {
        let l = scalar_ladder();
        let lam = c(0.5, -1.5);
        for n in -2..=2 {
            let t = l.creation_left(1, &s(lam), n).unwrap();
            assert!((t.matrix()[(0, 0)] - lam).norm() < 1e-14);
            assert!((l.op_norm(&t).unwrap() - lam.norm()).abs() < 1e-12);
            let r = l.creation_right(1, &s(lam), n).unwrap();
            assert!((r.matrix()[(0, 0)] - lam).norm() < 1e-14);
        }
    }

    #[test]
    fn scalar_unit_decomposition() {
        let l = scalar_ladder();
        let pairs = unit_decomposition(l.level(1).unwrap()).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!((pairs[0].1[0] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn scalar_symbol_and_multipliers() {
        let l = scalar_ladder();
        let t = l.map(1, 2, CMatrix::from_element(1, 1, c(-2.0, 0.5))).unwrap();
        let eta = l.extract_symbol(&t).unwrap();
        assert!((eta[0] - c(-2.0, 0.5)).norm() < 1e-12);
        let j = l.multiplier_j(&t).unwrap();
        assert!((j.matrix()[(0, 0)] - c(-2.0, 0.5)).norm() < 1e-12);
        let h = l.multiplier_h(&j, 1).unwrap();
        assert!((h.matrix() - t.matrix()).norm() < 1e-12);
        let a = l.alpha_shift(&t).unwrap();
        assert_eq!((a.source(), a.target()), (0, 1));
        assert!((a.matrix() - t.matrix()).norm() < 1e-12);
    }

    #[test]
    fn non_module_map_is_rejected() {
        // Over ℂ⊕ℂ a map swapping the two coordinates of level 0 is not right-linear.
        let alg = CStarAlgebra::new(vec![1, 1]).unwrap();
        let l = TensorLadder::build(Bimodule::algebra(&alg), 1).unwrap();
        let swap = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let t = l.map(0, 0, swap).unwrap();
        assert!(l.linearity_residual(&t).unwrap() > 0.5);
        assert!(matches!(l.adjoint(&t), Err(Error::NotAdjointable(_))));
        assert!(matches!(l.extract_symbol(&t), Err(Error::NotCreationOperator(_))));
    }

    #[test]
    fn map_shape_is_checked() {
        let l = scalar_ladder();
        assert!(l.map(0, 1, CMatrix::zeros(2, 1)).is_err());
        assert!(l.map(0, 9, CMatrix::zeros(1, 1)).is_err());
    }
}
