//! The truncated module `ℓ²(X)` over a window `[-N, N]` and block matrices on it.

use crate::adjointable::AdjointableMap;
use crate::algebra::AlgebraElement;
use crate::bimodule::ModuleElement;
use crate::error::{Error, Result};
use crate::ladder::TensorLadder;
use crate::linalg::C64;

/// Default tolerance of the Toeplitz predicate.
pub const TOEPLITZ_TOL: f64 = 1e-8;

/// `ξ = Σ_k ξ(k) δ_k` with `ξ(k) ∈ X^{⊗k}`, `|k| ≤ N`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedL2Element {
    radius: i32,
    components: Vec<ModuleElement>,
}

/// Block matrix `[T]_{ij} = Π_i T E_j`, block `(i, j)` mapping level `j` to level `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    radius: i32,
    blocks: Vec<AdjointableMap>,
}

/// Outcome of the Toeplitz predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzCheck {
    pub is_toeplitz: bool,
    pub max_residual: f64,
    /// `(i, j)` where `‖α^{j,i}([T]_{ij}) − [T]_{i−1,j−1}‖` is largest.
    pub worst: Option<(i32, i32)>,
    /// Residual for every interior pair, row-major over `i, j ∈ [−N+1, N]`.
    pub residuals: Vec<((i32, i32), f64)>,
}

fn check_window(ladder: &TensorLadder, radius: i32) -> Result<()> {
    if radius < 1 || radius as usize > ladder.radius() {
        return Err(Error::Structural(format!(
            "window radius {radius} must lie in [1, {}] for this ladder",
            ladder.radius()
        )));
    }
    Ok(())
}

fn in_window(k: i32, radius: i32) -> Result<()> {
    if k.abs() <= radius {
        Ok(())
    } else {
        Err(Error::OutsideWindow { index: k, radius })
    }
}

impl WindowedL2Element {
    pub fn zero(ladder: &TensorLadder, radius: i32) -> Result<Self> {
        check_window(ladder, radius)?;
        let components = (-radius..=radius)
            .map(|k| ladder.level(k).map(|l| l.zero_element()))
            .collect::<Result<_>>()?;
        Ok(WindowedL2Element { radius, components })
    }

    /// `E_k(v) = vδ_k`.
    pub fn embed(ladder: &TensorLadder, v: &ModuleElement, k: i32, radius: i32) -> Result<Self> {
        in_window(k, radius)?;
        let mut xi = Self::zero(ladder, radius)?;
        ladder.level(k)?.check_element(v)?;
        xi.components[(k + radius) as usize] = v.clone();
        Ok(xi)
    }

    pub fn radius(&self) -> i32 {
        self.radius
    }

    /// `Π_k ξ = ξ(k)`.
    pub fn project(&self, k: i32) -> Result<&ModuleElement> {
        in_window(k, self.radius)?;
        Ok(&self.components[(k + self.radius) as usize])
    }

    pub fn components(&self) -> impl Iterator<Item = (i32, &ModuleElement)> {
        self.components.iter().enumerate().map(move |(i, v)| (i as i32 - self.radius, v))
    }

    fn same_window(&self, other: &Self) -> Result<()> {
        if self.radius == other.radius {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "window mismatch: {} vs {}",
                self.radius, other.radius
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_window(other)?;
        Ok(WindowedL2Element {
            radius: self.radius,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_window(other)?;
        Ok(WindowedL2Element {
            radius: self.radius,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, z: C64) -> Self {
        WindowedL2Element {
            radius: self.radius,
            components: self.components.iter().map(|v| v * z).collect(),
        }
    }

    /// `⟨ξ, ζ⟩ = Σ_k ⟨ξ(k), ζ(k)⟩_R ∈ A`.
    pub fn inner(&self, ladder: &TensorLadder, other: &Self) -> Result<AlgebraElement> {
        self.same_window(other)?;
        let mut acc = ladder.algebra().zero();
        for (k, v) in self.components() {
            let w = other.project(k)?;
            acc = acc.add(&ladder.level(k)?.inner(crate::Side::Right, v, w)?)?;
        }
        Ok(acc)
    }

    /// `‖Σ_k ⟨ξ(k), ξ(k)⟩_R‖^{1/2}`.
    pub fn norm(&self, ladder: &TensorLadder) -> Result<f64> {
        Ok(self.inner(ladder, self)?.norm().sqrt())
    }
}

impl OperatorMatrix {
    pub fn from_fn<F>(ladder: &TensorLadder, radius: i32, mut f: F) -> Result<Self>
    where
        F: FnMut(i32, i32) -> Result<AdjointableMap>,
    {
        check_window(ladder, radius)?;
        let mut blocks = Vec::with_capacity(((2 * radius + 1) * (2 * radius + 1)) as usize);
        for i in -radius..=radius {
            for j in -radius..=radius {
                let b = f(i, j)?;
                if (b.source(), b.target()) != (j, i) || b.side() != crate::Side::Right {
                    return Err(Error::Structural(format!(
                        "block ({i}, {j}) must be a right-linear map {j}→{i}, got {}→{}",
                        b.source(),
                        b.target()
                    )));
                }
                blocks.push(b);
            }
        }
        Ok(OperatorMatrix { radius, blocks })
    }

    pub fn zero(ladder: &TensorLadder, radius: i32) -> Result<Self> {
        Self::from_fn(ladder, radius, |i, j| ladder.zero_map(j, i))
    }

    pub fn identity(ladder: &TensorLadder, radius: i32) -> Result<Self> {
        Self::from_fn(ladder, radius, |i, j| {
            if i == j {
                ladder.identity_map(i)
            } else {
                ladder.zero_map(j, i)
            }
        })
    }

    pub fn radius(&self) -> i32 {
        self.radius
    }

    fn slot(&self, i: i32, j: i32) -> usize {
        ((i + self.radius) * (2 * self.radius + 1) + (j + self.radius)) as usize
    }

    pub fn block(&self, i: i32, j: i32) -> Result<&AdjointableMap> {
        in_window(i, self.radius)?;
        in_window(j, self.radius)?;
        Ok(&self.blocks[self.slot(i, j)])
    }

    pub fn set_block(&mut self, i: i32, j: i32, t: AdjointableMap) -> Result<()> {
        in_window(i, self.radius)?;
        in_window(j, self.radius)?;
        if (t.source(), t.target()) != (j, i) {
            return Err(Error::Structural(format!("block ({i}, {j}) must map {j}→{i}")));
        }
        let s = self.slot(i, j);
        self.blocks[s] = t;
        Ok(())
    }

    /// Blocks with their indices, row-major.
    pub fn blocks(&self) -> impl Iterator<Item = ((i32, i32), &AdjointableMap)> {
        let r = self.radius;
        let side = 2 * r + 1;
        self.blocks
            .iter()
            .enumerate()
            .map(move |(s, b)| ((s as i32 / side - r, s as i32 % side - r), b))
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(&AdjointableMap, &AdjointableMap) -> Result<AdjointableMap>,
    {
        if self.radius != other.radius {
            return Err(Error::Structural(format!(
                "window mismatch: {} vs {}",
                self.radius, other.radius
            )));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(OperatorMatrix {
            radius: self.radius,
            blocks,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, z: C64) -> Self {
        OperatorMatrix {
            radius: self.radius,
            blocks: self.blocks.iter().map(|b| b.scale(z)).collect(),
        }
    }

    /// Truncated product `(MP)_{ij} = Σ_{|k|≤N} M_{ik} P_{kj}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.radius != other.radius {
            return Err(Error::Structural("window mismatch".into()));
        }
        let r = self.radius;
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for i in -r..=r {
            for j in -r..=r {
                let mut acc = self.block(i, -r)?.compose(other.block(-r, j)?)?;
                for k in (-r + 1)..=r {
                    acc = acc.add(&self.block(i, k)?.compose(other.block(k, j)?)?)?;
                }
                blocks.push(acc);
            }
        }
        Ok(OperatorMatrix { radius: r, blocks })
    }

    /// Blockwise adjoint transpose: `(M*)_{ij} = ([M]_{ji})^*`.
    pub fn adjoint(&self, ladder: &TensorLadder) -> Result<Self> {
        let r = self.radius;
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for i in -r..=r {
            for j in -r..=r {
                blocks.push(ladder.adjoint(self.block(j, i)?)?);
            }
        }
        Ok(OperatorMatrix { radius: r, blocks })
    }

    /// `M·a`, blockwise `(T·a)(z) = T(az)`.
    pub fn act_right(&self, ladder: &TensorLadder, a: &AlgebraElement) -> Result<Self> {
        Ok(OperatorMatrix {
            radius: self.radius,
            blocks: self.blocks.iter().map(|b| ladder.act_right_on_map(b, a)).collect::<Result<_>>()?,
        })
    }

    /// `a·M`, blockwise `(a·T)(z) = aT(z)`.
    pub fn act_left(&self, ladder: &TensorLadder, a: &AlgebraElement) -> Result<Self> {
        Ok(OperatorMatrix {
            radius: self.radius,
            blocks: self.blocks.iter().map(|b| ladder.act_left_on_map(a, b)).collect::<Result<_>>()?,
        })
    }

    /// `(Mξ)(i) = Σ_j [M]_{ij} ξ(j)`.
    pub fn apply(&self, xi: &WindowedL2Element) -> Result<WindowedL2Element> {
        if xi.radius != self.radius {
            return Err(Error::Structural(format!(
                "window mismatch: operator {} vs vector {}",
                self.radius, xi.radius
            )));
        }
        let r = self.radius;
        let mut components = Vec::with_capacity(xi.components.len());
        for i in -r..=r {
            let mut acc = self.block(i, -r)?.apply(xi.project(-r)?)?;
            for j in (-r + 1)..=r {
                acc += self.block(i, j)?.apply(xi.project(j)?)?;
            }
            components.push(acc);
        }
        Ok(WindowedL2Element { radius: r, components })
    }

    /// Largest right-linearity residual over all blocks.
    pub fn linearity_residual(&self, ladder: &TensorLadder) -> Result<f64> {
        self.blocks
            .iter()
            .map(|b| ladder.linearity_residual(b))
            .try_fold(0.0_f64, |acc, r| r.map(|r| acc.max(r)))
    }

    /// `max_{i,j} ‖[M]_{ij}‖`.
    pub fn max_block_norm(&self, ladder: &TensorLadder) -> Result<f64> {
        self.blocks
            .iter()
            .map(|b| ladder.op_norm(b))
            .try_fold(0.0_f64, |acc, r| r.map(|r| acc.max(r)))
    }

    /// Whether `α^{j,i}([M]_{ij}) = [M]_{i−1,j−1}` for every pair where both
    /// sides lie in the window.
    pub fn toeplitz_check(&self, ladder: &TensorLadder, tol: f64) -> Result<ToeplitzCheck> {
        let r = self.radius;
        let mut residuals = Vec::new();
        let mut worst: Option<((i32, i32), f64)> = None;
        for i in (-r + 1)..=r {
            for j in (-r + 1)..=r {
                let shifted = ladder.alpha_shift_unchecked(self.block(i, j)?)?;
                let res = ladder.distance(&shifted, self.block(i - 1, j - 1)?)?;
                residuals.push(((i, j), res));
                if worst.is_none_or(|(_, w)| res > w) {
                    worst = Some(((i, j), res));
                }
            }
        }
        let max_residual = worst.map_or(0.0, |(_, w)| w);
        Ok(ToeplitzCheck {
            is_toeplitz: max_residual <= tol,
            max_residual,
            worst: worst.map(|(ij, _)| ij),
            residuals,
        })
    }

    /// `p_v(M) = ‖M(vδ_j)‖`.
    pub fn sigma_seminorm(&self, ladder: &TensorLadder, v: &ModuleElement, j: i32) -> Result<f64> {
        let e = WindowedL2Element::embed(ladder, v, j, self.radius)?;
        self.apply(&e)?.norm(ladder)
    }
}
