//! Seeded random generators for algebra elements, module elements and module maps.

use crate::adjointable::AdjointableMap;
use crate::algebra::{AlgebraElement, CStarAlgebra};
use crate::bimodule::{Bimodule, ModuleElement};
use crate::crossed::CrossSection;
use crate::error::Result;
use crate::ladder::TensorLadder;
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::window::OperatorMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::ops::RangeInclusive;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector {
    CVector::from_fn(n, |_, _| complex(rng))
}

pub fn algebra_element<R: Rng + ?Sized>(alg: &CStarAlgebra, rng: &mut R) -> AlgebraElement {
    let v = vector(alg.dim(), rng);
    alg.from_coeffs(&v).expect("dimension matches")
}

pub fn module_element<R: Rng + ?Sized>(module: &Bimodule, rng: &mut R) -> ModuleElement {
    vector(module.dim(), rng)
}

/// A random right-linear map `source → target`, drawn from the solution
/// space of `T R_β = R'_β T` and scaled to unit operator norm. This does not
/// go through creation operators.
pub fn right_linear_map<R: Rng + ?Sized>(
    ladder: &TensorLadder,
    source: i32,
    target: i32,
    rng: &mut R,
) -> Result<AdjointableMap> {
    let dom = ladder.level(source)?;
    let cod = ladder.level(target)?;
    let (dd, dc) = (dom.dim(), cod.dim());
    let ec = CMatrix::identity(dc, dc);
    let ed = CMatrix::identity(dd, dd);
    let blocks: Vec<CMatrix> = dom
        .right_action_tensor()
        .iter()
        .zip(cod.right_action_tensor())
        .map(|(rd, rc)| linalg::kron(&rd.transpose(), &ec) - linalg::kron(&ed, rc))
        .collect();
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let mut constraint = CMatrix::zeros(rows, dc * dd);
    let mut r0 = 0;
    for b in &blocks {
        constraint.view_mut((r0, 0), b.shape()).copy_from(b);
        r0 += b.nrows();
    }
    let ns = linalg::null_space(&constraint, 1e-9);
    let coeffs = vector(ns.ncols(), rng);
    let vec_t = ns * coeffs;
    let matrix = CMatrix::from_column_slice(dc, dd, vec_t.as_slice());
    let t = ladder.map(source, target, matrix)?;
    let norm = ladder.op_norm(&t)?;
    Ok(if norm > 0.0 { t.scale(C64::new(1.0 / norm, 0.0)) } else { t })
}

/// A section with an independent random value at every `k` in `support`.
pub fn cross_section<R: Rng + ?Sized>(
    ladder: &TensorLadder,
    support: RangeInclusive<i32>,
    rng: &mut R,
) -> Result<CrossSection> {
    let mut f = CrossSection::new();
    for k in support {
        let v = module_element(ladder.level(k)?, rng);
        f.insert(ladder, k, v)?;
    }
    Ok(f)
}

/// A Toeplitz matrix built one diagonal at a time: a random right-linear block
/// in the first admissible column, carried down the diagonal by `α^{-1}`.
pub fn alpha_consistent_matrix<R: Rng + ?Sized>(
    ladder: &TensorLadder,
    radius: i32,
    rng: &mut R,
) -> Result<OperatorMatrix> {
    let mut m = OperatorMatrix::zero(ladder, radius)?;
    for k in -2 * radius..=2 * radius {
        let j0 = (-radius).max(-radius - k);
        let j1 = radius.min(radius - k);
        let mut block = right_linear_map(ladder, j0, j0 + k, rng)?;
        m.set_block(j0 + k, j0, block.clone())?;
        for j in (j0 + 1)..=j1 {
            block = ladder.alpha_unshift(&block)?;
            m.set_block(j + k, j, block.clone())?;
        }
    }
    Ok(m)
}
