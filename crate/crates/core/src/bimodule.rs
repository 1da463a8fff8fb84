//! Imprimitivity bimodules given by explicit structure tensors.
//!
//! A bimodule `X` over `A`–`B` of dimension `d` is stored through four
//! families of `d × d` complex matrices, one per matrix unit of the relevant
//! algebra:
//!
//! * `left_action[α]`: the action of `E_α ∈ A` on coefficient vectors,
//! * `right_action[β]`: the map `x ↦ x·E_β`,
//! * `inner_left[α][i][j]`: coefficient of `E_α` in `⟨e_i, e_j⟩_L`,
//! * `inner_right[β][i][j]`: coefficient of `E_β` in `⟨e_i, e_j⟩_R`.
//!
//! `⟨·,·⟩_R` is conjugate-linear in its first slot and `⟨·,·⟩_L` in its second.

use crate::algebra::{AlgebraElement, CStarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64, ONE, ZERO};

/// Module elements are coefficient vectors over the bimodule's basis.
pub type ModuleElement = CVector;

/// Relative Gram–Schmidt drop threshold for tensor-product quotients.
pub const NULL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub struct Bimodule {
    left: CStarAlgebra,
    right: CStarAlgebra,
    dim: usize,
    left_action: Vec<CMatrix>,
    right_action: Vec<CMatrix>,
    inner_left: Vec<CMatrix>,
    inner_right: Vec<CMatrix>,
    // τ-scalarized forms: (x, y)_R = x^H gram_right y, (x, y)_L = y^H gram_left x.
    gram_right: CMatrix,
    gram_left: CMatrix,
}

/// A tensor product `X ⊗_B Y` together with its quotient data.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub module: Bimodule,
    /// Map from the algebraic basis `e_i ⊗ f_j` (index `i·d_Y + j`) onto the quotient basis.
    pub quotient: CMatrix,
    /// Columns express each quotient basis vector in the algebraic basis.
    pub lift: CMatrix,
    /// The τ-scalarized Gram matrix on the algebraic basis.
    pub gram: CMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest value among the residual-type checks (fullness and
    /// definiteness excluded).
    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| !c.name.starts_with("fullness") && !c.name.ends_with("definiteness"))
            .map(|c| c.value)
            .fold(0.0, f64::max)
    }

    /// Turns a failed report into an axiom-violation error naming the first failure.
    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::AxiomViolation {
                axiom: c.name.to_string(),
                residual: c.value,
            }),
        }
    }
}

fn diag_trace_sum(alg: &CStarAlgebra, tensors: &[CMatrix], dim: usize) -> CMatrix {
    let mut g = CMatrix::zeros(dim, dim);
    for (idx, t) in tensors.iter().enumerate() {
        let (_, p, q) = alg.basis_position(idx);
        if p == q {
            g += t;
        }
    }
    g
}

impl Bimodule {
    pub fn new(
        left: CStarAlgebra,
        right: CStarAlgebra,
        dim: usize,
        left_action: Vec<CMatrix>,
        right_action: Vec<CMatrix>,
        inner_left: Vec<CMatrix>,
        inner_right: Vec<CMatrix>,
    ) -> Result<Self> {
        let check = |what: &str, ts: &[CMatrix], n: usize| -> Result<()> {
            if ts.len() != n {
                return Err(Error::Structural(format!(
                    "{what}: expected {n} structure matrices, got {}",
                    ts.len()
                )));
            }
            if let Some(bad) = ts.iter().find(|m| m.shape() != (dim, dim)) {
                return Err(Error::Structural(format!(
                    "{what}: expected {dim}x{dim} matrices, got {:?}",
                    bad.shape()
                )));
            }
            Ok(())
        };
        check("left_action", &left_action, left.dim())?;
        check("right_action", &right_action, right.dim())?;
        check("inner_left", &inner_left, left.dim())?;
        check("inner_right", &inner_right, right.dim())?;
        let gram_right = diag_trace_sum(&right, &inner_right, dim);
        let gram_left = diag_trace_sum(&left, &inner_left, dim).transpose();
        Ok(Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
            inner_left,
            inner_right,
            gram_right,
            gram_left,
        })
    }

    /// `A` as an `A`–`A` bimodule: multiplication actions, `⟨a,b⟩_L = ab*`, `⟨a,b⟩_R = a*b`.
    pub fn algebra(alg: &CStarAlgebra) -> Self {
        Self::twisted(alg, &|a: &AlgebraElement| a.clone(), &|a: &AlgebraElement| a.clone())
    }

    /// `A` with right action twisted by an automorphism `θ`:
    /// `a·x = ax`, `x·b = xθ(b)`, `⟨x,y⟩_L = xy*`, `⟨x,y⟩_R = θ⁻¹(x*y)`.
    pub fn twisted(
        alg: &CStarAlgebra,
        theta: &dyn Fn(&AlgebraElement) -> AlgebraElement,
        theta_inv: &dyn Fn(&AlgebraElement) -> AlgebraElement,
    ) -> Self {
        let d = alg.dim();
        let basis = alg.basis();
        let mul = |a: &AlgebraElement, b: &AlgebraElement| a.mul(b).expect("same algebra");
        let mut left_action = Vec::with_capacity(d);
        let mut right_action = Vec::with_capacity(d);
        for e in &basis {
            let te = theta(e);
            left_action.push(CMatrix::from_fn(d, d, |r, c| alg.to_coeffs(&mul(e, &basis[c]))[r]));
            right_action.push(CMatrix::from_fn(d, d, |r, c| alg.to_coeffs(&mul(&basis[c], &te))[r]));
        }
        let mut inner_left = vec![CMatrix::zeros(d, d); d];
        let mut inner_right = vec![CMatrix::zeros(d, d); d];
        for i in 0..d {
            for j in 0..d {
                let l = alg.to_coeffs(&mul(&basis[i], &basis[j].adjoint()));
                let r = alg.to_coeffs(&theta_inv(&mul(&basis[i].adjoint(), &basis[j])));
                for g in 0..d {
                    inner_left[g][(i, j)] = l[g];
                    inner_right[g][(i, j)] = r[g];
                }
            }
        }
        Bimodule::new(
            alg.clone(),
            alg.clone(),
            d,
            left_action,
            right_action,
            inner_left,
            inner_right,
        )
        .expect("shapes are consistent by construction")
    }

    pub fn left_algebra(&self) -> &CStarAlgebra {
        &self.left
    }

    pub fn right_algebra(&self) -> &CStarAlgebra {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action_tensor(&self) -> &[CMatrix] {
        &self.left_action
    }

    pub fn right_action_tensor(&self) -> &[CMatrix] {
        &self.right_action
    }

    pub fn inner_left_tensor(&self) -> &[CMatrix] {
        &self.inner_left
    }

    pub fn inner_right_tensor(&self) -> &[CMatrix] {
        &self.inner_right
    }

    /// Gram matrix of the scalarized form for `side`, arranged so that the
    /// scalar product is `y^H G x` (left) or `x^H G y` (right).
    pub fn gram(&self, side: Side) -> &CMatrix {
        match side {
            Side::Left => &self.gram_left,
            Side::Right => &self.gram_right,
        }
    }

    pub fn check_element(&self, x: &ModuleElement) -> Result<()> {
        if x.len() == self.dim {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "module element of length {} for module of dimension {}",
                x.len(),
                self.dim
            )))
        }
    }

    pub fn zero_element(&self) -> ModuleElement {
        CVector::zeros(self.dim)
    }

    pub fn basis_element(&self, i: usize) -> ModuleElement {
        let mut v = self.zero_element();
        v[i] = ONE;
        v
    }

    pub fn left_action_matrix(&self, a: &AlgebraElement) -> CMatrix {
        let coeffs = self.left.to_coeffs(a);
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (c, t) in coeffs.iter().zip(&self.left_action) {
            if *c != ZERO {
                m += t * *c;
            }
        }
        m
    }

    pub fn right_action_matrix(&self, b: &AlgebraElement) -> CMatrix {
        let coeffs = self.right.to_coeffs(b);
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (c, t) in coeffs.iter().zip(&self.right_action) {
            if *c != ZERO {
                m += t * *c;
            }
        }
        m
    }

    pub fn act_left(&self, a: &AlgebraElement, x: &ModuleElement) -> Result<ModuleElement> {
        self.left.check(a)?;
        self.check_element(x)?;
        Ok(self.left_action_matrix(a) * x)
    }

    pub fn act_right(&self, x: &ModuleElement, b: &AlgebraElement) -> Result<ModuleElement> {
        self.right.check(b)?;
        self.check_element(x)?;
        Ok(self.right_action_matrix(b) * x)
    }

    fn inner_right_unchecked(&self, x: &ModuleElement, y: &ModuleElement) -> AlgebraElement {
        let xa = x.adjoint();
        let coeffs = CVector::from_iterator(
            self.right.dim(),
            self.inner_right.iter().map(|p| (&xa * p * y)[(0, 0)]),
        );
        self.right.from_coeffs(&coeffs).expect("dimension matches")
    }

    fn inner_left_unchecked(&self, x: &ModuleElement, y: &ModuleElement) -> AlgebraElement {
        let xt = x.transpose();
        let yc = y.conjugate();
        let coeffs = CVector::from_iterator(
            self.left.dim(),
            self.inner_left.iter().map(|q| (&xt * q * &yc)[(0, 0)]),
        );
        self.left.from_coeffs(&coeffs).expect("dimension matches")
    }

    /// Evaluates `⟨x, y⟩_L ∈ A` or `⟨x, y⟩_R ∈ B`.
    pub fn inner(&self, side: Side, x: &ModuleElement, y: &ModuleElement) -> Result<AlgebraElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(match side {
            Side::Left => self.inner_left_unchecked(x, y),
            Side::Right => self.inner_right_unchecked(x, y),
        })
    }

    pub fn inner_right(&self, x: &ModuleElement, y: &ModuleElement) -> AlgebraElement {
        self.inner(Side::Right, x, y).expect("module element dimension")
    }

    pub fn inner_left(&self, x: &ModuleElement, y: &ModuleElement) -> AlgebraElement {
        self.inner(Side::Left, x, y).expect("module element dimension")
    }

    /// Scalarized inner product `τ(⟨x, y⟩)` for `side`.
    pub fn scalar_inner(&self, side: Side, x: &ModuleElement, y: &ModuleElement) -> C64 {
        match side {
            Side::Right => (x.adjoint() * &self.gram_right * y)[(0, 0)],
            Side::Left => (y.adjoint() * &self.gram_left * x)[(0, 0)],
        }
    }

    /// `‖x‖ = ‖⟨x, x⟩_R‖^{1/2}`.
    pub fn module_norm(&self, x: &ModuleElement) -> f64 {
        self.inner_right(x, x).norm().sqrt()
    }

    /// `‖⟨x, x⟩_L‖^{1/2}`, equal to [`Bimodule::module_norm`] on imprimitivity bimodules.
    pub fn module_norm_left(&self, x: &ModuleElement) -> f64 {
        self.inner_left(x, x).norm().sqrt()
    }

    /// The dual `B`–`A` bimodule on the conjugate space. An element `x̃` is
    /// stored through the complex conjugate of the coefficients of `x`.
    pub fn dual(&self) -> Bimodule {
        let conj_at = |ts: &[CMatrix], alg: &CStarAlgebra| -> Vec<CMatrix> {
            (0..alg.dim()).map(|i| ts[alg.basis_adjoint(i)].conjugate()).collect()
        };
        Bimodule::new(
            self.right.clone(),
            self.left.clone(),
            self.dim,
            conj_at(&self.right_action, &self.right),
            conj_at(&self.left_action, &self.left),
            self.inner_right.clone(),
            self.inner_left.clone(),
        )
        .expect("dual of a well-formed module is well-formed")
    }

    /// Conjugation `x ↦ x̃` between a module and its dual.
    pub fn tilde(x: &ModuleElement) -> ModuleElement {
        x.conjugate()
    }

    /// `X ⊗_B Y` as the quotient of the algebraic tensor product by the null
    /// space of its τ-scalarized right Gram form.
    pub fn tensor_product(&self, other: &Bimodule) -> Result<TensorProduct> {
        if self.right != other.left {
            return Err(Error::Structural(format!(
                "middle algebras differ: {:?} vs {:?}",
                self.right.block_dims(),
                other.left.block_dims()
            )));
        }
        let (dx, dy) = (self.dim, other.dim);
        let n = dx * dy;
        let mid = &self.right;

        // τ⟨f_j, ⟨e_i,e_k⟩_R f_l⟩_R
        let mut gram = CMatrix::zeros(n, n);
        for beta in 0..mid.dim() {
            let p = &self.inner_right[beta];
            if p.iter().all(|z| *z == ZERO) {
                continue;
            }
            gram += linalg::kron(p, &(&other.gram_right * &other.left_action[beta]));
        }
        gram = (&gram + gram.adjoint()).scale(0.5);

        let eig = linalg::hermitian_eigenvalues(&gram);
        let top = eig.last().copied().unwrap_or(0.0).max(0.0);
        if let Some(&low) = eig.first() {
            if low < -1e-9 * top.max(1.0) {
                return Err(Error::InvalidModule(format!(
                    "tensor Gram matrix has negative eigenvalue {low:.3e}"
                )));
            }
        }
        let null_tol = NULL_TOL * top;

        // Gram–Schmidt over the lexicographic algebraic basis.
        let mut kept: Vec<CVector> = Vec::new();
        for idx in 0..n {
            let mut w = CVector::zeros(n);
            w[idx] = ONE;
            for _ in 0..2 {
                for q in &kept {
                    let coef = (q.adjoint() * &gram * &w)[(0, 0)];
                    w -= q * coef;
                }
            }
            let norm2 = (w.adjoint() * &gram * &w)[(0, 0)].re;
            if norm2 > null_tol {
                kept.push(w / C64::new(norm2.sqrt(), 0.0));
            }
        }
        let r = kept.len();
        let lift = CMatrix::from_fn(n, r, |row, col| kept[col][row]);
        let quotient = lift.adjoint() * &gram;

        let eye_x = CMatrix::identity(dx, dx);
        let eye_y = CMatrix::identity(dy, dy);
        let left_action = self
            .left_action
            .iter()
            .map(|l| &quotient * linalg::kron(l, &eye_y) * &lift)
            .collect();
        let right_action = other
            .right_action
            .iter()
            .map(|rm| &quotient * linalg::kron(&eye_x, rm) * &lift)
            .collect();

        // ⟨x1⊗y1, x2⊗y2⟩_R = ⟨y1, ⟨x1,x2⟩_R y2⟩_R
        let inner_right = (0..other.right.dim())
            .map(|gamma| {
                let mut alg = CMatrix::zeros(n, n);
                for beta in 0..mid.dim() {
                    let p = &self.inner_right[beta];
                    if p.iter().all(|z| *z == ZERO) {
                        continue;
                    }
                    alg += linalg::kron(p, &(&other.inner_right[gamma] * &other.left_action[beta]));
                }
                lift.adjoint() * alg * &lift
            })
            .collect();

        // ⟨x1⊗y1, x2⊗y2⟩_L = ⟨x1⟨y1,y2⟩_L, x2⟩_L
        let inner_left = (0..self.left.dim())
            .map(|alpha| {
                let mut alg = CMatrix::zeros(n, n);
                for beta in 0..mid.dim() {
                    let q = &other.inner_left[beta];
                    if q.iter().all(|z| *z == ZERO) {
                        continue;
                    }
                    alg += linalg::kron(&(self.right_action[beta].transpose() * &self.inner_left[alpha]), q);
                }
                lift.transpose() * alg * lift.conjugate()
            })
            .collect();

        let module = Bimodule::new(
            self.left.clone(),
            other.right.clone(),
            r,
            left_action,
            right_action,
            inner_left,
            inner_right,
        )?;
        Ok(TensorProduct {
            module,
            quotient,
            lift,
            gram,
        })
    }

    /// Checks every bimodule axiom on basis tuples and reports named residuals.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let d = self.dim;
        let basis: Vec<ModuleElement> = (0..d).map(|i| self.basis_element(i)).collect();
        let abasis = self.left.basis();
        let bbasis = self.right.basis();
        let mut checks = Vec::new();
        let mut push = |name: &'static str, value: f64| {
            checks.push(ValidationCheck {
                name,
                value,
                passed: value < tol,
            });
        };
        let alg_diff = |a: &AlgebraElement, b: &AlgebraElement| a.sub(b).expect("same algebra").norm();
        let eye = CMatrix::identity(d, d);

        push(
            "left_action_unit",
            linalg::spectral_norm(&(self.left_action_matrix(&self.left.unit()) - &eye)),
        );
        push(
            "right_action_unit",
            linalg::spectral_norm(&(self.right_action_matrix(&self.right.unit()) - &eye)),
        );

        let mut r = 0.0_f64;
        for (a, ea) in abasis.iter().enumerate() {
            for (b, eb) in abasis.iter().enumerate() {
                let prod = self.left_action_matrix(&ea.mul(eb).expect("same algebra"));
                r = r.max(linalg::spectral_norm(&(prod - &self.left_action[a] * &self.left_action[b])));
            }
        }
        push("left_action_multiplicative", r);

        let mut r = 0.0_f64;
        for (a, ea) in bbasis.iter().enumerate() {
            for (b, eb) in bbasis.iter().enumerate() {
                let prod = self.right_action_matrix(&ea.mul(eb).expect("same algebra"));
                r = r.max(linalg::spectral_norm(&(prod - &self.right_action[b] * &self.right_action[a])));
            }
        }
        push("right_action_multiplicative", r);

        let mut r = 0.0_f64;
        for la in &self.left_action {
            for rb in &self.right_action {
                r = r.max(linalg::spectral_norm(&(la * rb - rb * la)));
            }
        }
        push("actions_commute", r);

        let ir: Vec<Vec<AlgebraElement>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.inner_right_unchecked(x, y)).collect())
            .collect();
        let il: Vec<Vec<AlgebraElement>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.inner_left_unchecked(x, y)).collect())
            .collect();

        // (2) ⟨x, yb⟩_R = ⟨x, y⟩_R b
        let mut r = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                for (bi, eb) in bbasis.iter().enumerate() {
                    let lhs = self.inner_right_unchecked(&basis[i], &(&self.right_action[bi] * &basis[j]));
                    r = r.max(alg_diff(&lhs, &ir[i][j].mul(eb).expect("same algebra")));
                }
            }
        }
        push("right_inner_module_linearity", r);

        // (2') ⟨ax, y⟩_L = a⟨x, y⟩_L
        let mut r = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                for (ai, ea) in abasis.iter().enumerate() {
                    let lhs = self.inner_left_unchecked(&(&self.left_action[ai] * &basis[i]), &basis[j]);
                    r = r.max(alg_diff(&lhs, &ea.mul(&il[i][j]).expect("same algebra")));
                }
            }
        }
        push("left_inner_module_linearity", r);

        // (3) symmetry
        let mut rr = 0.0_f64;
        let mut rl = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                rr = rr.max(alg_diff(&ir[j][i], &ir[i][j].adjoint()));
                rl = rl.max(alg_diff(&il[j][i], &il[i][j].adjoint()));
            }
        }
        push("right_inner_hermitian", rr);
        push("left_inner_hermitian", rl);

        // (4) positivity of the matrix of inner products in M_d(B) blockwise
        push("right_inner_positivity", positivity_deficit(&self.right, &ir));
        push("left_inner_positivity", positivity_deficit(&self.left, &il));

        // (5) definiteness through the faithful trace
        // Zero when the smallest Gram eigenvalue exceeds tol, otherwise at least tol.
        let def = |g: &CMatrix| -> f64 {
            let low = linalg::hermitian_eigenvalues(g).first().copied().unwrap_or(0.0);
            if low > tol {
                0.0
            } else {
                2.0 * tol - low
            }
        };
        push("right_inner_definiteness", def(&self.gram_right));
        push("left_inner_definiteness", def(&self.gram_left));

        // ⟨x, y⟩_L z = x⟨y, z⟩_R
        let mut r = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                let lmat = self.left_action_matrix(&il[i][j]);
                for k in 0..d {
                    let lhs = &lmat * &basis[k];
                    let rhs = self.right_action_matrix(&ir[j][k]) * &basis[i];
                    r = r.max((lhs - rhs).norm());
                }
            }
        }
        push("imprimitivity", r);

        // ⟨xb, y⟩_L = ⟨x, yb*⟩_L and ⟨ax, y⟩_R = ⟨x, a*y⟩_R
        let mut r = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                for (bi, eb) in bbasis.iter().enumerate() {
                    let lhs = self.inner_left_unchecked(&(&self.right_action[bi] * &basis[i]), &basis[j]);
                    let rhs = self
                        .inner_left_unchecked(&basis[i], &(self.right_action_matrix(&eb.adjoint()) * &basis[j]));
                    r = r.max(alg_diff(&lhs, &rhs));
                }
            }
        }
        push("adjointable_left", r);
        let mut r = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                for (ai, ea) in abasis.iter().enumerate() {
                    let lhs = self.inner_right_unchecked(&(&self.left_action[ai] * &basis[i]), &basis[j]);
                    let rhs = self
                        .inner_right_unchecked(&basis[i], &(self.left_action_matrix(&ea.adjoint()) * &basis[j]));
                    r = r.max(alg_diff(&lhs, &rhs));
                }
            }
        }
        push("adjointable_right", r);

        push(
            "fullness_right",
            (self.right.dim() - span_rank(&self.right, &ir).min(self.right.dim())) as f64,
        );
        push(
            "fullness_left",
            (self.left.dim() - span_rank(&self.left, &il).min(self.left.dim())) as f64,
        );

        let mut r = 0.0_f64;
        for x in norm_probes(d) {
            let nl = self.inner_left_unchecked(&x, &x).norm();
            let nr = self.inner_right_unchecked(&x, &x).norm();
            r = r.max((nl - nr).abs());
        }
        push("norm_consistency", r);

        ValidationReport { checks }
    }
}

/// Deterministic probe vectors: basis vectors, pairwise sums with phases 1 and i.
fn norm_probes(d: usize) -> Vec<ModuleElement> {
    let mut out = Vec::new();
    for i in 0..d {
        let mut v = CVector::zeros(d);
        v[i] = ONE;
        out.push(v);
        for j in (i + 1)..d {
            for phase in [ONE, C64::new(0.0, 1.0)] {
                let mut w = CVector::zeros(d);
                w[i] = ONE;
                w[j] = phase;
                out.push(w);
            }
        }
    }
    out
}

fn positivity_deficit(alg: &CStarAlgebra, inner: &[Vec<AlgebraElement>]) -> f64 {
    let d = inner.len();
    let mut worst = 0.0_f64;
    for (b, &n) in alg.block_dims().iter().enumerate() {
        let big = CMatrix::from_fn(d * n, d * n, |r, c| inner[r / n][c / n].blocks()[b][(r % n, c % n)]);
        if let Some(&low) = linalg::hermitian_eigenvalues(&big).first() {
            worst = worst.max(-low);
        }
    }
    worst
}

fn span_rank(alg: &CStarAlgebra, inner: &[Vec<AlgebraElement>]) -> usize {
    let d = inner.len();
    let m = CMatrix::from_fn(alg.dim(), d * d, |r, c| alg.to_coeffs(&inner[c / d][c % d])[r]);
    linalg::rank(&m, 1e-10)
}
