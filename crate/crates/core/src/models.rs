//! Model descriptions, bimodule generators and the builtin example models.

use crate::algebra::{AlgebraElement, CStarAlgebra};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::ladder::TensorLadder;
use crate::linalg::{CMatrix, C64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const BUILTIN_NAMES: [&str; 4] = ["scalar", "flip", "perm3", "m2-inner"];

/// Complex number on the wire: `[re, im]`.
pub type WireComplex = [f64; 2];
/// Dense matrix on the wire: row-major nested lists.
pub type WireMatrix = Vec<Vec<WireComplex>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub blocks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum BimoduleSpec {
    /// `A` over itself.
    Scalar,
    /// Coordinate swap on a two-block algebra.
    Flip,
    /// Right action twisted by a permutation of equal-sized blocks:
    /// `θ(a)_i = a_{π(i)}`.
    Permutation { permutation: Vec<usize> },
    /// Right action twisted by `θ(a)_i = u_i a_i u_i*`.
    InnerAutomorphism { unitaries: Vec<WireMatrix> },
    /// Explicit structure tensors, one `dim × dim` matrix per algebra matrix unit.
    Explicit {
        dim: usize,
        left_action: Vec<WireMatrix>,
        right_action: Vec<WireMatrix>,
        inner_left: Vec<WireMatrix>,
        inner_right: Vec<WireMatrix>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub algebra: AlgebraSpec,
    pub bimodule: BimoduleSpec,
    pub window: usize,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

/// A validated model: algebra, base bimodule and its ladder.
#[derive(Debug, Clone)]
pub struct Model {
    pub name: String,
    pub spec: ModelSpec,
    pub algebra: CStarAlgebra,
    pub bimodule: Bimodule,
    pub ladder: TensorLadder,
}

impl Model {
    pub fn window(&self) -> usize {
        self.spec.window
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.spec.tolerances.get(name).copied().unwrap_or(default)
    }
}

/// Block-permuting and conjugating automorphism `θ(a)_i = u_i a_{π(i)} u_i*`.
#[derive(Debug, Clone)]
pub struct Automorphism {
    permutation: Vec<usize>,
    unitaries: Vec<CMatrix>,
}

impl Automorphism {
    pub fn new(alg: &CStarAlgebra, permutation: Vec<usize>, unitaries: Vec<CMatrix>) -> Result<Self> {
        let dims = alg.block_dims();
        let r = dims.len();
        let mut seen = vec![false; r];
        if permutation.len() != r {
            return Err(Error::Structural(format!(
                "permutation of length {} for {r} blocks",
                permutation.len()
            )));
        }
        for (i, &p) in permutation.iter().enumerate() {
            if p >= r || seen[p] {
                return Err(Error::Structural(format!("{permutation:?} is not a permutation")));
            }
            seen[p] = true;
            if dims[p] != dims[i] {
                return Err(Error::Structural(format!(
                    "permutation maps block {p} of size {} onto block {i} of size {}",
                    dims[p], dims[i]
                )));
            }
        }
        if unitaries.len() != r {
            return Err(Error::Structural(format!("{} unitaries for {r} blocks", unitaries.len())));
        }
        for (u, &n) in unitaries.iter().zip(dims) {
            if u.shape() != (n, n) || (u.adjoint() * u - CMatrix::identity(n, n)).norm() > 1e-10 {
                return Err(Error::Structural("block unitary has wrong size or is not unitary".into()));
            }
        }
        Ok(Automorphism {
            permutation,
            unitaries,
        })
    }

    pub fn identity(alg: &CStarAlgebra) -> Self {
        let dims = alg.block_dims();
        Automorphism {
            permutation: (0..dims.len()).collect(),
            unitaries: dims.iter().map(|&n| CMatrix::identity(n, n)).collect(),
        }
    }

    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        let blocks = a.blocks();
        let out = self
            .permutation
            .iter()
            .zip(&self.unitaries)
            .map(|(&p, u)| u * &blocks[p] * u.adjoint())
            .collect();
        AlgebraElement::from_blocks_unchecked(out)
    }

    pub fn apply_inverse(&self, b: &AlgebraElement) -> AlgebraElement {
        let blocks = b.blocks();
        let mut out = vec![CMatrix::zeros(0, 0); blocks.len()];
        for (i, (&p, u)) in self.permutation.iter().zip(&self.unitaries).enumerate() {
            out[p] = u.adjoint() * &blocks[i] * u;
        }
        AlgebraElement::from_blocks_unchecked(out)
    }

    /// The twisted bimodule `X_θ`.
    pub fn bimodule(&self, alg: &CStarAlgebra) -> Bimodule {
        Bimodule::twisted(alg, &|a| self.apply(a), &|b| self.apply_inverse(b))
    }
}

pub fn wire_to_matrix(m: &WireMatrix) -> Result<CMatrix> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    Ok(CMatrix::from_fn(rows, cols, |r, c| C64::new(m[r][c][0], m[r][c][1])))
}

pub fn matrix_to_wire(m: &CMatrix) -> WireMatrix {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

/// The named example models.
pub fn builtin_model(name: &str) -> Result<ModelSpec> {
    let (blocks, bimodule) = match name {
        "scalar" => (vec![1], BimoduleSpec::Scalar),
        "flip" => (vec![1, 1], BimoduleSpec::Flip),
        "perm3" => (
            vec![1, 1, 1],
            BimoduleSpec::Permutation {
                permutation: vec![1, 2, 0],
            },
        ),
        "m2-inner" => (
            vec![2],
            BimoduleSpec::InnerAutomorphism {
                unitaries: vec![vec![vec![[0.0, 0.0], [1.0, 0.0]], vec![[1.0, 0.0], [0.0, 0.0]]]],
            },
        ),
        other => return Err(Error::UnknownModel(other.to_string())),
    };
    Ok(ModelSpec {
        algebra: AlgebraSpec { blocks },
        bimodule,
        window: 2,
        tolerances: BTreeMap::new(),
    })
}

impl ModelSpec {
    pub fn build_bimodule(&self) -> Result<(CStarAlgebra, Bimodule)> {
        let alg = CStarAlgebra::new(self.algebra.blocks.clone())?;
        let x = match &self.bimodule {
            BimoduleSpec::Scalar => Bimodule::algebra(&alg),
            BimoduleSpec::Flip => {
                if alg.block_dims().len() != 2 || alg.block_dims()[0] != alg.block_dims()[1] {
                    return Err(Error::Structural("flip needs two blocks of equal size".into()));
                }
                let units = alg.block_dims().iter().map(|&n| CMatrix::identity(n, n)).collect();
                Automorphism::new(&alg, vec![1, 0], units)?.bimodule(&alg)
            }
            BimoduleSpec::Permutation { permutation } => {
                let units = alg.block_dims().iter().map(|&n| CMatrix::identity(n, n)).collect();
                Automorphism::new(&alg, permutation.clone(), units)?.bimodule(&alg)
            }
            BimoduleSpec::InnerAutomorphism { unitaries } => {
                let us = unitaries.iter().map(wire_to_matrix).collect::<Result<Vec<_>>>()?;
                let ident = (0..alg.block_dims().len()).collect();
                Automorphism::new(&alg, ident, us)?.bimodule(&alg)
            }
            BimoduleSpec::Explicit {
                dim,
                left_action,
                right_action,
                inner_left,
                inner_right,
            } => {
                let conv = |ts: &Vec<WireMatrix>| ts.iter().map(wire_to_matrix).collect::<Result<Vec<_>>>();
                Bimodule::new(
                    alg.clone(),
                    alg.clone(),
                    *dim,
                    conv(left_action)?,
                    conv(right_action)?,
                    conv(inner_left)?,
                    conv(inner_right)?,
                )?
            }
        };
        Ok((alg, x))
    }

    /// Validates the bimodule and builds the ladder over the model's window.
    pub fn build(&self, name: &str) -> Result<Model> {
        if self.window == 0 {
            return Err(Error::Structural("window radius must be at least 1".into()));
        }
        let (algebra, bimodule) = self.build_bimodule()?;
        let tol = self.tolerances.get("validate").copied().unwrap_or(crate::ladder::BUILD_TOL);
        bimodule.validate(tol).into_result()?;
        let ladder = TensorLadder::build(bimodule.clone(), self.window)?;
        Ok(Model {
            name: name.to_string(),
            spec: self.clone(),
            algebra,
            bimodule,
            ladder,
        })
    }

    /// Writes a generator-based spec as explicit structure tensors.
    pub fn to_explicit(&self) -> Result<ModelSpec> {
        let (_, x) = self.build_bimodule()?;
        let conv = |ts: &[CMatrix]| ts.iter().map(matrix_to_wire).collect();
        Ok(ModelSpec {
            bimodule: BimoduleSpec::Explicit {
                dim: x.dim(),
                left_action: conv(x.left_action_tensor()),
                right_action: conv(x.right_action_tensor()),
                inner_left: conv(x.inner_left_tensor()),
                inner_right: conv(x.inner_right_tensor()),
            },
            ..self.clone()
        })
    }
}

/// Builds a builtin model with the given window radius.
pub fn builtin(name: &str, window: usize) -> Result<Model> {
    let mut spec = builtin_model(name)?;
    spec.window = window;
    spec.build(name)
}
