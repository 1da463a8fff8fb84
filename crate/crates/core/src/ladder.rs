//! The tensor-power ladder `X^{⊗n}`, `n ∈ [-2R, 2R]`, and its contraction maps.
//!
//! Level 0 is `A` over itself, level 1 is `X`, level `n ≥ 2` is the Gram
//! quotient of `X^{⊗(n-1)} ⊗ X`, and level `-n` is the dual of level `n`.
//! For every admissible pair `(m, n)` the ladder caches the bilinear map
//! `X^{⊗m} × X^{⊗n} → X^{⊗(m+n)}` realizing the identifications
//! `a⊗x = ax`, `x⊗a = xa`, `x̃⊗y = ⟨x,y⟩_R` and `x⊗ỹ = ⟨x,y⟩_L`, stored as a
//! `d_{m+n} × (d_m·d_n)` matrix acting on `s ⊗ t` (Kronecker order).

use crate::algebra::CStarAlgebra;
use crate::bimodule::{Bimodule, ModuleElement, Side, TensorProduct};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};

/// Residual tolerance used when validating the base module at build time.
pub const BUILD_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct TensorLadder {
    radius: usize,
    max: i32,
    levels: Vec<Bimodule>,
    // embeddings[n] for n >= 2: level n as the quotient of level (n-1) ⊗ X
    embeddings: Vec<Option<TensorProduct>>,
    contractions: Vec<Option<CMatrix>>,
}

impl TensorLadder {
    /// Builds levels `-2·radius ..= 2·radius` and caches every contraction map.
    pub fn build(base: Bimodule, radius: usize) -> Result<Self> {
        if radius == 0 {
            return Err(Error::Structural("ladder radius must be positive".into()));
        }
        if base.left_algebra() != base.right_algebra() {
            return Err(Error::Structural(
                "ladder base must be a bimodule over a single algebra".into(),
            ));
        }
        base.validate(BUILD_TOL).into_result()?;
        let max = 2 * radius as i32;
        let alg = base.left_algebra().clone();

        let mut positive: Vec<Bimodule> = vec![Bimodule::algebra(&alg), base.clone()];
        let mut embeddings: Vec<Option<TensorProduct>> = vec![None, None];
        for _ in 2..=max {
            let tp = positive.last().expect("non-empty").tensor_product(&base)?;
            positive.push(tp.module.clone());
            embeddings.push(Some(tp));
        }
        let mut levels = Vec::with_capacity(2 * max as usize + 1);
        for n in (1..=max).rev() {
            levels.push(positive[n as usize].dual());
        }
        levels.extend(positive);

        let side = (2 * max + 1) as usize;
        let mut ladder = TensorLadder {
            radius,
            max,
            levels,
            embeddings,
            contractions: vec![None; side * side],
        };
        ladder.fill_contractions()?;
        Ok(ladder)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Largest `|n|` with a constructed level.
    pub fn max_level(&self) -> i32 {
        self.max
    }

    pub fn algebra(&self) -> &CStarAlgebra {
        self.levels[self.max as usize].left_algebra()
    }

    pub fn base(&self) -> &Bimodule {
        &self.levels[(self.max + 1) as usize]
    }

    pub fn contains(&self, n: i32) -> bool {
        n.abs() <= self.max
    }

    pub fn check_level(&self, n: i32) -> Result<()> {
        if self.contains(n) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                level: n,
                max: self.max,
            })
        }
    }

    pub fn level(&self, n: i32) -> Result<&Bimodule> {
        self.check_level(n)?;
        Ok(&self.levels[(n + self.max) as usize])
    }

    fn lvl(&self, n: i32) -> &Bimodule {
        &self.levels[(n + self.max) as usize]
    }

    pub fn dim(&self, n: i32) -> Result<usize> {
        Ok(self.level(n)?.dim())
    }

    /// Quotient data exhibiting level `n ≥ 2` as `X^{⊗(n-1)} ⊗ X`.
    pub fn embedding(&self, n: i32) -> Option<&TensorProduct> {
        if n >= 2 && n <= self.max {
            self.embeddings[n as usize].as_ref()
        } else {
            None
        }
    }

    fn slot(&self, m: i32, n: i32) -> usize {
        let side = (2 * self.max + 1) as usize;
        (m + self.max) as usize * side + (n + self.max) as usize
    }

    /// The cached contraction matrix for `(m, n)`.
    pub fn contraction(&self, m: i32, n: i32) -> Result<&CMatrix> {
        self.check_level(m)?;
        self.check_level(n)?;
        self.check_level(m + n)?;
        Ok(self.contractions[self.slot(m, n)]
            .as_ref()
            .expect("every admissible contraction is cached at build time"))
    }

    fn k(&self, m: i32, n: i32) -> &CMatrix {
        self.contractions[self.slot(m, n)].as_ref().expect("filled in dependency order")
    }

    fn set(&mut self, m: i32, n: i32, k: CMatrix) {
        let s = self.slot(m, n);
        self.contractions[s] = Some(k);
    }

    /// Identified tensor product of `s ∈ X^{⊗m}` and `t ∈ X^{⊗n}` in `X^{⊗(m+n)}`.
    pub fn contract(&self, m: i32, n: i32, s: &ModuleElement, t: &ModuleElement) -> Result<ModuleElement> {
        let k = self.contraction(m, n)?;
        self.lvl(m).check_element(s)?;
        self.lvl(n).check_element(t)?;
        Ok(k * s.kronecker(t))
    }

    /// The Fell-bundle involution `X^{⊗n} → X^{⊗-n}`: `a ↦ a*` on level 0,
    /// `x ↦ x̃` (reverse dual) elsewhere.
    pub fn involution(&self, n: i32, x: &ModuleElement) -> Result<ModuleElement> {
        self.check_level(n)?;
        self.lvl(n).check_element(x)?;
        if n == 0 {
            let alg = self.algebra();
            let a = alg.from_coeffs(x)?;
            Ok(alg.to_coeffs(&a.adjoint()))
        } else {
            Ok(Bimodule::tilde(x))
        }
    }

    fn fill_contractions(&mut self) -> Result<()> {
        let max = self.max;
        // Actions of level 0 on either side.
        for n in -max..=max {
            let lv = self.lvl(n).clone();
            let d = lv.dim();
            let da = lv.left_algebra().dim();
            let left = CMatrix::from_fn(d, da * d, |r, c| lv.left_action_tensor()[c / d][(r, c % d)]);
            self.set(0, n, left);
            if n != 0 {
                let right = CMatrix::from_fn(d, d * da, |r, c| lv.right_action_tensor()[c % da][(r, c / da)]);
                self.set(n, 0, right);
            }
        }
        // Positive levels: (m, 1) is the quotient map of level m+1.
        for m in 1..max {
            let q = self.embeddings[(m + 1) as usize]
                .as_ref()
                .expect("positive levels carry embeddings")
                .quotient
                .clone();
            self.set(m, 1, q);
        }
        // (m, n), n >= 2, by associativity through the lift of level n.
        for n in 2..max {
            for m in 1..=(max - n) {
                let lift = self.embeddings[n as usize].as_ref().expect("n >= 2").lift.clone();
                let dm = self.lvl(m).dim();
                let dn = self.lvl(n).dim();
                let dprev = self.lvl(n - 1).dim();
                let dx = self.lvl(1).dim();
                let dout = self.lvl(m + n).dim();
                let kprev = self.k(m, n - 1).clone();
                let kstep = self.k(m + n - 1, 1).clone();
                let eye_x = CMatrix::identity(dx, dx);
                let mut k = CMatrix::zeros(dout, dm * dn);
                for i in 0..dm {
                    let mut ei = CVector::zeros(dm);
                    ei[i] = linalg::ONE;
                    let v = &kprev * linalg::kron(&CMatrix::from_column_slice(dm, 1, ei.as_slice()), &CMatrix::identity(dprev, dprev));
                    let block = &kstep * linalg::kron(&v, &eye_x) * &lift;
                    for t in 0..dn {
                        k.set_column(i * dn + t, &block.column(t));
                    }
                }
                self.set(m, n, k);
            }
        }
        // Both negative: x̃ ⊗ ỹ = (y ⊗ x)~.
        for p in 1..max {
            for q in 1..=(max - p) {
                let src = self.k(q, p).clone();
                let (dp, dq) = (self.lvl(p).dim(), self.lvl(q).dim());
                let k = CMatrix::from_fn(src.nrows(), dp * dq, |r, c| {
                    let (i, j) = (c / dq, c % dq);
                    src[(r, j * dp + i)].conj()
                });
                self.set(-p, -q, k);
            }
        }
        // Mixed signs, collapsing dual pairs at the interface.
        for m in 1..=max {
            for q in 1..=max {
                if (m - q).abs() > max {
                    continue;
                }
                let k = self.mixed_positive_negative(m, q)?;
                self.set(m, -q, k);
                let k = self.mixed_negative_positive(m, q)?;
                self.set(-m, q, k);
            }
        }
        Ok(())
    }

    /// Matrix of `y ↦ contract(a, b, y, t)` for fixed `t ∈ X^{⊗b}`.
    fn right_creation_matrix(&self, a: i32, b: i32, t: &CVector) -> CMatrix {
        let da = self.lvl(a).dim();
        let tcol = CMatrix::from_column_slice(t.len(), 1, t.as_slice());
        self.k(a, b) * linalg::kron(&CMatrix::identity(da, da), &tcol)
    }

    /// Matrix of `z ↦ contract(a, b, s, z)` for fixed `s ∈ X^{⊗a}`.
    fn left_creation_matrix(&self, a: i32, b: i32, s: &CVector) -> CMatrix {
        let db = self.lvl(b).dim();
        let scol = CMatrix::from_column_slice(s.len(), 1, s.as_slice());
        self.k(a, b) * linalg::kron(&scol, &CMatrix::identity(db, db))
    }

    /// Adjoint of `map: level dom → level cod` for the scalarized `side` form.
    pub fn scalar_adjoint(&self, side: Side, dom: i32, cod: i32, map: &CMatrix) -> Result<CMatrix> {
        let gd = self.level(dom)?.gram(side);
        let gc = self.level(cod)?.gram(side);
        let inv = linalg::inverse_pd(gd)
            .ok_or_else(|| Error::InvalidModule(format!("Gram form of level {dom} is not definite")))?;
        Ok(inv * map.adjoint() * gc)
    }

    // s ⊗ t̃ with s ∈ X^{⊗m}, t ∈ X^{⊗q}.
    fn mixed_positive_negative(&self, m: i32, q: i32) -> Result<CMatrix> {
        let (dm, dq) = (self.lvl(m).dim(), self.lvl(q).dim());
        let dout = self.lvl(m - q).dim();
        let mut k = CMatrix::zeros(dout, dm * dq);
        for j in 0..dq {
            for i in 0..dm {
                let col = if m >= q {
                    // (R_t)^*(s), R_t: y ↦ y ⊗ t on level m-q, left adjoint
                    let r = self.right_creation_matrix(m - q, q, &unit(dq, j));
                    self.scalar_adjoint(Side::Left, m - q, m, &r)? * unit(dm, i)
                } else {
                    // (R_s)^*(t)~, R_s: y ↦ y ⊗ s on level q-m, left adjoint
                    let r = self.right_creation_matrix(q - m, m, &unit(dm, i));
                    (self.scalar_adjoint(Side::Left, q - m, q, &r)? * unit(dq, j)).conjugate()
                };
                k.set_column(i * dq + j, &col);
            }
        }
        Ok(k)
    }

    // s̃ ⊗ t with s ∈ X^{⊗p}, t ∈ X^{⊗n}.
    fn mixed_negative_positive(&self, p: i32, n: i32) -> Result<CMatrix> {
        let (dp, dn) = (self.lvl(p).dim(), self.lvl(n).dim());
        let dout = self.lvl(n - p).dim();
        let mut k = CMatrix::zeros(dout, dp * dn);
        for i in 0..dp {
            for j in 0..dn {
                let col = if n >= p {
                    // (T_s)^*(t), T_s: z ↦ s ⊗ z on level n-p, right adjoint
                    let t = self.left_creation_matrix(p, n - p, &unit(dp, i));
                    self.scalar_adjoint(Side::Right, n - p, n, &t)? * unit(dn, j)
                } else {
                    // (T_t)^*(s)~, T_t: z ↦ t ⊗ z on level p-n, right adjoint
                    let t = self.left_creation_matrix(n, p - n, &unit(dn, j));
                    (self.scalar_adjoint(Side::Right, p - n, p, &t)? * unit(dp, i)).conjugate()
                };
                k.set_column(i * dn + j, &col);
            }
        }
        Ok(k)
    }
}

fn unit(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = linalg::ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn scalar_ladder(r: usize) -> TensorLadder {
        TensorLadder::build(Bimodule::algebra(&CStarAlgebra::scalars()), r).unwrap()
    }

    #[test]
    fn scalar_levels_are_one_dimensional() {
        let l = scalar_ladder(3);
        assert_eq!(l.max_level(), 6);
        for n in -6..=6 {
            assert_eq!(l.dim(n).unwrap(), 1);
        }
        assert!(l.level(7).is_err());
    }

    #[test]
    fn dual_pairing_collapses_to_right_inner_product() {
        let l = scalar_ladder(1);
        let lam = c(1.5, -2.0);
        let mu = c(0.25, 3.0);
        // coefficients of λ̃ are conj(λ)
        let got = l
            .contract(-1, 1, &CVector::from_vec(vec![lam.conj()]), &CVector::from_vec(vec![mu]))
            .unwrap();
        assert!((got[0] - lam.conj() * mu).norm() < 1e-14);
    }

    #[test]
    fn out_of_range_contraction() {
        let l = scalar_ladder(1);
        let one = CVector::from_vec(vec![linalg::ONE]);
        assert!(matches!(l.contract(2, 1, &one, &one), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn involution_on_level_zero_is_adjoint() {
        let alg = CStarAlgebra::new(vec![2]).unwrap();
        let l = TensorLadder::build(Bimodule::algebra(&alg), 1).unwrap();
        let a = CVector::from_vec(vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, 3.0), c(4.0, -1.0)]);
        let got = l.involution(0, &a).unwrap();
        let want = CVector::from_vec(vec![c(1.0, -1.0), c(0.0, -3.0), c(2.0, 0.0), c(4.0, 1.0)]);
        assert!((got - want).norm() < 1e-15);
    }
}
