//! Finitely supported cross-sections of the bundle `{X^{⊗n}}`, their
//! convolution algebra, the left regular representation and synthesis of
//! sections from Toeplitz matrices.

use std::collections::BTreeMap;

use crate::adjointable::AdjointableMap;
use crate::bimodule::ModuleElement;
use crate::error::{Error, Result};
use crate::ladder::TensorLadder;
use crate::linalg::C64;
use crate::window::{OperatorMatrix, WindowedL2Element};

/// `f = Σ_k f(k) δ_k` with finitely many nonzero `f(k) ∈ X^{⊗k}`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CrossSection {
    values: BTreeMap<i32, ModuleElement>,
}

/// Spread of the symbols extracted along one diagonal `i − j = k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSpread {
    pub k: i32,
    /// Number of columns `j` with `(j + k, j)` inside the window.
    pub columns: usize,
    /// `max_j ‖u_k^{(j)} − ū_k‖`.
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    pub diagonals: Vec<DiagonalSpread>,
    pub max_spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Synthesis {
    pub section: CrossSection,
    pub consistency: ConsistencyReport,
}

/// One row of a convergence table: `p_v(M − Λ_f)` for a probe `vδ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeValue {
    pub j: i32,
    pub seminorm: f64,
}

impl CrossSection {
    pub fn new() -> Self {
        Self::default()
    }

    /// `vδ_k`.
    pub fn delta(ladder: &TensorLadder, k: i32, v: ModuleElement) -> Result<Self> {
        let mut f = Self::new();
        f.insert(ladder, k, v)?;
        Ok(f)
    }

    /// The unit `1_A δ_0`.
    pub fn unit(ladder: &TensorLadder) -> Self {
        let alg = ladder.algebra();
        let mut f = Self::new();
        f.values.insert(0, alg.to_coeffs(&alg.unit()));
        f
    }

    /// Sets `f(k) = v`, replacing any previous value.
    pub fn insert(&mut self, ladder: &TensorLadder, k: i32, v: ModuleElement) -> Result<()> {
        ladder.level(k)?.check_element(&v)?;
        self.values.insert(k, v);
        Ok(())
    }

    pub fn get(&self, k: i32) -> Option<&ModuleElement> {
        self.values.get(&k)
    }

    /// `f(k)`, or zero off the support.
    pub fn value(&self, ladder: &TensorLadder, k: i32) -> Result<ModuleElement> {
        match self.values.get(&k) {
            Some(v) => Ok(v.clone()),
            None => Ok(ladder.level(k)?.zero_element()),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &ModuleElement)> {
        self.values.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Restriction to `|k| ≤ radius`.
    pub fn truncate(&self, radius: i32) -> Self {
        CrossSection {
            values: self
                .values
                .iter()
                .filter(|(k, _)| k.abs() <= radius)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut values = self.values.clone();
        for (&k, v) in &other.values {
            values.entry(k).and_modify(|w| *w += v).or_insert_with(|| v.clone());
        }
        CrossSection { values }
    }

    pub fn scale(&self, z: C64) -> Self {
        CrossSection {
            values: self.values.iter().map(|(&k, v)| (k, v * z)).collect(),
        }
    }

    /// `max_k ‖f(k) − g(k)‖` in the module norm of level `k`.
    pub fn distance(&self, ladder: &TensorLadder, other: &Self) -> Result<f64> {
        let mut worst = 0.0_f64;
        for k in self.support().chain(other.support()) {
            let d = self.value(ladder, k)? - other.value(ladder, k)?;
            worst = worst.max(ladder.level(k)?.module_norm(&d));
        }
        Ok(worst)
    }
}

impl TensorLadder {
    /// `(f∗g)(l) = Σ_k f(l−k) ⊗ g(k)`.
    pub fn convolve(&self, f: &CrossSection, g: &CrossSection) -> Result<CrossSection> {
        let mut out = CrossSection::new();
        for (m, x) in f.iter() {
            for (n, y) in g.iter() {
                let l = m + n;
                self.check_level(l)?;
                let z = self.contract(m, n, x, y)?;
                out.values.entry(l).and_modify(|w| *w += &z).or_insert(z);
            }
        }
        Ok(out)
    }

    /// `f*(k) = ι(f(−k))`, the reverse-dual of the value at `−k`.
    pub fn involute(&self, f: &CrossSection) -> Result<CrossSection> {
        let mut out = CrossSection::new();
        for (k, v) in f.iter() {
            out.values.insert(-k, self.involution(k, v)?);
        }
        Ok(out)
    }

    /// `[Λ_f]_{ij} = T^j_{f(i−j)}` on the window `[−N, N]`.
    pub fn lambda_rep(&self, f: &CrossSection, radius: i32) -> Result<OperatorMatrix> {
        OperatorMatrix::from_fn(self, radius, |i, j| match f.get(i - j) {
            Some(v) => self.creation_left(i - j, v, j),
            None => self.zero_map(j, i),
        })
    }

    /// Symbols `u_k` read off every admissible column of each diagonal
    /// `|k| ≤ n_syn`, averaged, with the per-diagonal spread.
    ///
    /// No Toeplitz precondition: the spread is the diagnostic.
    pub fn diagonal_consistency(&self, m: &OperatorMatrix, n_syn: i32) -> Result<Synthesis> {
        let r = m.radius();
        let mut section = CrossSection::new();
        let mut diagonals = Vec::new();
        for k in (-2 * r).max(-n_syn)..=(2 * r).min(n_syn) {
            let cols: Vec<i32> = (-r..=r).filter(|j| (j + k).abs() <= r).collect();
            let symbols = cols
                .iter()
                .map(|&j| self.extract_symbol(m.block(j + k, j)?))
                .collect::<Result<Vec<_>>>()?;
            let mut mean = symbols[0].clone();
            for s in &symbols[1..] {
                mean += s;
            }
            mean /= C64::new(symbols.len() as f64, 0.0);
            let level = self.level(k)?;
            let spread = symbols.iter().map(|s| level.module_norm(&(s - &mean))).fold(0.0, f64::max);
            diagonals.push(DiagonalSpread {
                k,
                columns: cols.len(),
                spread,
            });
            if mean.iter().any(|z| *z != C64::new(0.0, 0.0)) {
                section.values.insert(k, mean);
            }
        }
        let max_spread = diagonals.iter().map(|d| d.spread).fold(0.0, f64::max);
        Ok(Synthesis {
            section,
            consistency: ConsistencyReport { diagonals, max_spread },
        })
    }

    /// Cross-section whose representation reproduces a Toeplitz matrix.
    pub fn synthesize_section(&self, m: &OperatorMatrix, n_syn: i32, tol: f64) -> Result<Synthesis> {
        let check = m.toeplitz_check(self, tol)?;
        if !check.is_toeplitz {
            let (i, j) = check.worst.unwrap_or((0, 0));
            return Err(Error::NotToeplitz {
                residual: check.max_residual,
                i,
                j,
            });
        }
        self.diagonal_consistency(m, n_syn)
    }

    /// `p_v(M − Λ_f)` for each probe `(v, j)`.
    pub fn convergence_report(
        &self,
        m: &OperatorMatrix,
        f: &CrossSection,
        probes: &[(ModuleElement, i32)],
    ) -> Result<Vec<ProbeValue>> {
        let diff = m.sub(&self.lambda_rep(f, m.radius())?)?;
        probes
            .iter()
            .map(|(v, j)| {
                Ok(ProbeValue {
                    j: *j,
                    seminorm: diff.sigma_seminorm(self, v, *j)?,
                })
            })
            .collect()
    }

    /// `Λ_f ξ` computed directly as `(Λ_f ξ)(l) = Σ_k f(l−k) ⊗ ξ(k)`, keeping
    /// only `|l| ≤ N`.
    pub fn lambda_apply(&self, f: &CrossSection, xi: &WindowedL2Element) -> Result<WindowedL2Element> {
        let r = xi.radius();
        let mut out = WindowedL2Element::zero(self, r)?;
        for (k, v) in xi.components() {
            for (m, x) in f.iter() {
                let l = m + k;
                if l.abs() <= r {
                    let piece = WindowedL2Element::embed(self, &self.contract(m, k, x, v)?, l, r)?;
                    out = out.add(&piece)?;
                }
            }
        }
        Ok(out)
    }
}

/// Whether `(Λ_f Λ_g)_{ij}` on the window is free of truncation: every `k`
/// with `i−k ∈ supp f` and `k−j ∈ supp g` satisfies `|k| ≤ N`.
pub fn product_unaffected(f: &CrossSection, g: &CrossSection, radius: i32, i: i32, j: i32) -> bool {
    f.support()
        .all(|a| g.get(i - a - j).is_none() || (i - a).abs() <= radius)
}

/// Blocks of `Λ_{f∗g}` and `Λ_f Λ_g` compared where truncation does not interfere.
/// Returns the largest residual and the number of compared blocks.
pub fn multiplicativity_residual(
    ladder: &TensorLadder,
    f: &CrossSection,
    g: &CrossSection,
    radius: i32,
) -> Result<(f64, usize)> {
    let lf = ladder.lambda_rep(f, radius)?;
    let lg = ladder.lambda_rep(g, radius)?;
    let lfg = ladder.lambda_rep(&ladder.convolve(f, g)?, radius)?;
    let prod = lf.mul(&lg)?;
    let mut worst = 0.0_f64;
    let mut count = 0;
    for i in -radius..=radius {
        for j in -radius..=radius {
            if product_unaffected(f, g, radius, i, j) {
                worst = worst.max(ladder.distance(lfg.block(i, j)?, prod.block(i, j)?)?);
                count += 1;
            }
        }
    }
    Ok((worst, count))
}

/// `max_{ij} ‖[Λ_{f*}]_{ij} − ([Λ_f]_{ji})^*‖`.
pub fn star_residual(ladder: &TensorLadder, f: &CrossSection, radius: i32) -> Result<f64> {
    let lstar = ladder.lambda_rep(&ladder.involute(f)?, radius)?;
    let adj = ladder.lambda_rep(f, radius)?.adjoint(ladder)?;
    let mut worst = 0.0_f64;
    for ((i, j), b) in lstar.blocks() {
        let a: &AdjointableMap = adj.block(i, j)?;
        worst = worst.max(ladder.distance(b, a)?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CStarAlgebra;
    use crate::bimodule::Bimodule;
    use crate::linalg::{c, CVector};

    fn scalar(r: usize) -> TensorLadder {
        TensorLadder::build(Bimodule::algebra(&CStarAlgebra::scalars()), r).unwrap()
    }

    fn seq(l: &TensorLadder, vals: &[(i32, C64)]) -> CrossSection {
        let mut f = CrossSection::new();
        for &(k, z) in vals {
            f.insert(l, k, CVector::from_vec(vec![z])).unwrap();
        }
        f
    }

    #[test]
    fn scalar_convolution_is_sequence_convolution() {
        let l = scalar(2);
        let f = seq(&l, &[(-1, c(1.0, 1.0)), (0, c(2.0, 0.0))]);
        let g = seq(&l, &[(0, c(3.0, 0.0)), (1, c(0.0, -1.0))]);
        let h = l.convolve(&f, &g).unwrap();
        let want = [(-1, c(3.0, 3.0)), (0, c(6.0, 0.0) + c(1.0, 1.0) * c(0.0, -1.0)), (1, c(0.0, -2.0))];
        for (k, z) in want {
            assert!((h.get(k).unwrap()[0] - z).norm() < 1e-12);
        }
        let u = CrossSection::unit(&l);
        assert!(l.convolve(&u, &f).unwrap().distance(&l, &f).unwrap() < 1e-12);
    }

    #[test]
    fn scalar_involution_conjugates_and_reflects() {
        let l = scalar(2);
        let f = seq(&l, &[(-2, c(1.0, 2.0)), (1, c(0.5, -0.5))]);
        let s = l.involute(&f).unwrap();
        assert_eq!(s.get(2).unwrap()[0], c(1.0, -2.0));
        assert_eq!(s.get(-1).unwrap()[0], c(0.5, 0.5));
    }

    #[test]
    fn scalar_lambda_is_laurent_matrix() {
        let l = scalar(2);
        let f = seq(&l, &[(-1, c(1.0, 0.0)), (2, c(0.0, 3.0))]);
        let m = l.lambda_rep(&f, 2).unwrap();
        for ((i, j), b) in m.blocks() {
            let want = f.get(i - j).map_or(c(0.0, 0.0), |v| v[0]);
            assert_eq!(b.matrix()[(0, 0)], want);
        }
        let id = l.lambda_rep(&CrossSection::unit(&l), 2).unwrap();
        assert_eq!(id, OperatorMatrix::identity(&l, 2).unwrap());
    }

    #[test]
    fn scalar_synthesis_reads_diagonals() {
        let l = scalar(2);
        let f = seq(&l, &[(-3, c(1.0, 0.0)), (0, c(2.0, 1.0)), (4, c(0.0, 1.0))]);
        let m = l.lambda_rep(&f, 2).unwrap();
        let s = l.synthesize_section(&m, 4, 1e-8).unwrap();
        assert!(s.section.distance(&l, &f).unwrap() < 1e-12);
        assert!(s.consistency.max_spread < 1e-12);
        assert_eq!(s.consistency.diagonals.len(), 9);
    }

    #[test]
    fn synthesis_rejects_non_toeplitz() {
        let l = scalar(2);
        let mut m = OperatorMatrix::identity(&l, 2).unwrap();
        m.set_block(1, 1, l.identity_map(1).unwrap().scale(c(2.0, 0.0))).unwrap();
        assert!(matches!(l.synthesize_section(&m, 4, 1e-8), Err(Error::NotToeplitz { .. })));
        let d = l.diagonal_consistency(&m, 4).unwrap();
        assert!(d.consistency.max_spread > 0.5);
    }

    #[test]
    fn truncation_flags() {
        let l = scalar(2);
        let up = seq(&l, &[(1, c(1.0, 0.0))]);
        let far = seq(&l, &[(3, c(1.0, 0.0))]);
        let farback = seq(&l, &[(-3, c(1.0, 0.0))]);
        // (Λ_up Λ_up)_{2,0} passes through k = 1.
        assert!(product_unaffected(&up, &up, 2, 2, 0));
        // (Λ_farback Λ_far)_{0,0} passes through k = 3.
        assert!(!product_unaffected(&farback, &far, 2, 0, 0));
        // (Λ_far Λ_farback)_{0,0} passes through k = -3.
        assert!(!product_unaffected(&far, &farback, 2, 0, 0));
        // no contributing k at all
        assert!(product_unaffected(&up, &up, 2, -2, -2));
    }
}
