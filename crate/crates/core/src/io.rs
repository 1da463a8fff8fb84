//! JSON file formats for models, operators and cross-sections.
//!
//! Complex numbers are `[re, im]`. Module elements are coefficient vectors
//! over the ladder's deterministic level bases, and operator blocks are dense
//! row-major matrices in those bases.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::crossed::CrossSection;
use crate::error::{Error, Result};
use crate::ladder::TensorLadder;
use crate::linalg::{CMatrix, CVector, C64};
use crate::models::{builtin_model, Model, ModelSpec, WireComplex};
use crate::window::OperatorMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub i: i32,
    pub j: i32,
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub data: Vec<WireComplex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub radius: i32,
    /// Blocks left out are zero.
    pub blocks: Vec<BlockRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionEntry {
    pub k: i32,
    pub coeffs: Vec<WireComplex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionFile {
    pub entries: Vec<SectionEntry>,
}

fn to_wire(z: &C64) -> WireComplex {
    [z.re, z.im]
}

fn from_wire(w: &WireComplex) -> C64 {
    C64::new(w[0], w[1])
}

impl OperatorFile {
    /// Every block, including zero ones, so the file is a faithful dump.
    pub fn from_matrix(m: &OperatorMatrix) -> Self {
        let blocks = m
            .blocks()
            .map(|((i, j), b)| {
                let mat = b.matrix();
                let (rows, cols) = mat.shape();
                let data = (0..rows)
                    .flat_map(|r| (0..cols).map(move |c| (r, c)))
                    .map(|(r, c)| to_wire(&mat[(r, c)]))
                    .collect();
                BlockRecord { i, j, rows, cols, data }
            })
            .collect();
        OperatorFile {
            radius: m.radius(),
            blocks,
        }
    }

    pub fn to_matrix(&self, ladder: &TensorLadder) -> Result<OperatorMatrix> {
        let mut m = OperatorMatrix::zero(ladder, self.radius)?;
        for b in &self.blocks {
            if b.i.abs() > self.radius || b.j.abs() > self.radius {
                return Err(Error::Parse(format!("block ({}, {}) outside radius {}", b.i, b.j, self.radius)));
            }
            let want = (ladder.dim(b.i)?, ladder.dim(b.j)?);
            if (b.rows, b.cols) != want || b.data.len() != b.rows * b.cols {
                return Err(Error::Parse(format!(
                    "block ({}, {}) is {}x{} with {} entries, expected {}x{}",
                    b.i,
                    b.j,
                    b.rows,
                    b.cols,
                    b.data.len(),
                    want.0,
                    want.1
                )));
            }
            let mat = CMatrix::from_fn(b.rows, b.cols, |r, c| from_wire(&b.data[r * b.cols + c]));
            m.set_block(b.i, b.j, ladder.map(b.j, b.i, mat)?)?;
        }
        Ok(m)
    }
}

impl SectionFile {
    pub fn from_section(f: &CrossSection) -> Self {
        SectionFile {
            entries: f
                .iter()
                .map(|(k, v)| SectionEntry {
                    k,
                    coeffs: v.iter().map(to_wire).collect(),
                })
                .collect(),
        }
    }

    pub fn to_section(&self, ladder: &TensorLadder) -> Result<CrossSection> {
        let mut f = CrossSection::new();
        for e in &self.entries {
            if f.get(e.k).is_some() {
                return Err(Error::Parse(format!("duplicate entry for k = {}", e.k)));
            }
            let v = CVector::from_iterator(e.coeffs.len(), e.coeffs.iter().map(from_wire));
            f.insert(ladder, e.k, v)
                .map_err(|err| Error::Parse(format!("entry k = {}: {err}", e.k)))?;
        }
        Ok(f)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn save_model(path: &Path, spec: &ModelSpec) -> Result<()> {
    write_json(path, spec)
}

/// Loads a model file, or a builtin when `source` names one and no such file
/// exists.
pub fn load_model(source: &str) -> Result<Model> {
    let path = Path::new(source);
    if path.exists() {
        let spec: ModelSpec = read_json(path)?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(source);
        spec.build(name)
    } else {
        builtin_model(source)?.build(source)
    }
}

pub fn save_operator(path: &Path, m: &OperatorMatrix) -> Result<()> {
    write_json(path, &OperatorFile::from_matrix(m))
}

pub fn load_operator(path: &Path, ladder: &TensorLadder) -> Result<OperatorMatrix> {
    read_json::<OperatorFile>(path)?.to_matrix(ladder)
}

pub fn save_section(path: &Path, f: &CrossSection) -> Result<()> {
    write_json(path, &SectionFile::from_section(f))
}

pub fn load_section(path: &Path, ladder: &TensorLadder) -> Result<CrossSection> {
    read_json::<SectionFile>(path)?.to_section(ladder)
}
