//! Toeplitz matrices over imprimitivity bimodules of finite-dimensional C*-algebras.
//!
//! The crate builds the tensor-power ladder `X^{⊗n}` of an `A`–`A`
//! imprimitivity bimodule, the shift isomorphisms `α^{n,m}` between spaces of
//! adjointable maps, the windowed module `ℓ²(X)` with its block matrices, and
//! the left regular representation of the crossed product `A ⋊ X`. Everything
//! is finite-dimensional, so each identity is checked as an exact computation
//! up to floating-point tolerance.

pub mod adjointable;
pub mod algebra;
pub mod bimodule;
pub mod crossed;
pub mod error;
pub mod io;
pub mod ladder;
pub mod linalg;
pub mod models;
pub mod random;
pub mod report;
pub mod window;

pub use adjointable::{unit_decomposition, AdjointableMap};
pub use algebra::{AlgebraElement, CStarAlgebra};
pub use bimodule::{Bimodule, ModuleElement, Side, TensorProduct, ValidationReport};
pub use error::{Error, Result};
pub use ladder::TensorLadder;
pub use crossed::CrossSection;
pub use window::{OperatorMatrix, ToeplitzCheck, WindowedL2Element};
