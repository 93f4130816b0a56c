//! Phase arrays and code-set containers.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generator::GeneratorConfig;

/// An `rows x cols` array of phase exponents over `Z_modulus`; entry `e`
/// stands for the complex value `exp(2*pi*i*e/modulus)`. Stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseArray {
    rows: usize,
    cols: usize,
    modulus: u32,
    entries: Vec<u32>,
}

impl PhaseArray {
    pub fn new(rows: usize, cols: usize, modulus: u32, entries: Vec<u32>) -> Result<Self> {
        if rows == 0 || cols == 0 || modulus == 0 {
            return Err(Error::shape("array dimensions and modulus must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(Error::shape(format!(
                "{rows}x{cols} array needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|&&e| e >= modulus) {
            return Err(Error::shape(format!("entry {e} not below modulus {modulus}")));
        }
        Ok(PhaseArray {
            rows,
            cols,
            modulus,
            entries,
        })
    }

    /// Builds an array from `f(row, col)`, reducing every value mod `modulus`.
    pub fn from_fn(rows: usize, cols: usize, modulus: u32, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        assert!(rows > 0 && cols > 0 && modulus > 0);
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push((f(r, c) % modulus as u64) as u32);
            }
        }
        PhaseArray {
            rows,
            cols,
            modulus,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        let table = unit_roots(self.modulus);
        self.entries.iter().map(|&e| table[e as usize]).collect()
    }

    pub(crate) fn same_shape(&self, other: &PhaseArray) -> Result<()> {
        if (self.rows, self.cols, self.modulus) != (other.rows, other.cols, other.modulus) {
            return Err(Error::shape(format!(
                "{}x{} over Z_{} vs {}x{} over Z_{}",
                self.rows, self.cols, self.modulus, other.rows, other.cols, other.modulus
            )));
        }
        Ok(())
    }
}

/// `exp(2*pi*i*k/modulus)` for `k in 0..modulus`.
pub fn unit_roots(modulus: u32) -> Vec<Complex64> {
    (0..modulus)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / modulus as f64))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeKind {
    Ccc,
    Zcacs2d,
    Zccs1d,
}

impl CodeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CodeKind::Ccc => "CCC",
            CodeKind::Zcacs2d => "ZCACS-2D",
            CodeKind::Zccs1d => "ZCCS-1D",
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "CCC" => Ok(CodeKind::Ccc),
            "ZCACS-2D" => Ok(CodeKind::Zcacs2d),
            "ZCCS-1D" => Ok(CodeKind::Zccs1d),
            other => Err(Error::Domain(format!("unknown code kind `{other}`"))),
        }
    }
}

/// Shape metadata of a code set: `sets` codes of `flock` arrays each, every
/// array `rows x cols` over `Z_modulus`, with zero-correlation zone `z1 x z2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeSetParams {
    pub kind: CodeKind,
    pub sets: usize,
    pub flock: usize,
    pub rows: usize,
    pub cols: usize,
    pub z1: usize,
    pub z2: usize,
    pub modulus: u32,
}

impl fmt::Display for CodeSetParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CodeKind::Zccs1d => write!(
                f,
                "({}, {})-ZCCS_{}^{} over Z_{}",
                self.sets, self.z2, self.flock, self.cols, self.modulus
            ),
            CodeKind::Ccc => write!(
                f,
                "2D-CCC ({}, {}, {}, {}) over Z_{}",
                self.sets, self.flock, self.rows, self.cols, self.modulus
            ),
            CodeKind::Zcacs2d => write!(
                f,
                "2D-({}, {}x{})-ZCACS_{}^{}x{} over Z_{}",
                self.sets, self.z1, self.z2, self.flock, self.rows, self.cols, self.modulus
            ),
        }
    }
}

/// A family of `sets` ordered codes, each an ordered list of `flock` arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSet {
    family: Vec<Vec<PhaseArray>>,
    meta: CodeSetParams,
    provenance: Option<GeneratorConfig>,
}

impl CodeSet {
    pub fn new(family: Vec<Vec<PhaseArray>>, meta: CodeSetParams, provenance: Option<GeneratorConfig>) -> Result<Self> {
        if family.len() != meta.sets {
            return Err(Error::shape(format!(
                "expected {} sets, got {}",
                meta.sets,
                family.len()
            )));
        }
        if meta.z1 == 0 || meta.z2 == 0 || meta.z1 > meta.rows || meta.z2 > meta.cols {
            return Err(Error::shape(format!(
                "zone {}x{} does not fit {}x{} arrays",
                meta.z1, meta.z2, meta.rows, meta.cols
            )));
        }
        for (k, set) in family.iter().enumerate() {
            if set.len() != meta.flock {
                return Err(Error::shape(format!(
                    "set {k} has {} arrays, expected {}",
                    set.len(),
                    meta.flock
                )));
            }
            for a in set {
                if (a.rows, a.cols, a.modulus) != (meta.rows, meta.cols, meta.modulus) {
                    return Err(Error::shape(format!(
                        "set {k} holds a {}x{} array over Z_{}, expected {}x{} over Z_{}",
                        a.rows, a.cols, a.modulus, meta.rows, meta.cols, meta.modulus
                    )));
                }
            }
        }
        Ok(CodeSet {
            family,
            meta,
            provenance,
        })
    }

    pub fn family(&self) -> &[Vec<PhaseArray>] {
        &self.family
    }

    pub fn set(&self, k: usize) -> &[PhaseArray] {
        &self.family[k]
    }

    pub fn meta(&self) -> &CodeSetParams {
        &self.meta
    }

    pub fn provenance(&self) -> Option<&GeneratorConfig> {
        self.provenance.as_ref()
    }

    /// Same arrays, different declared zone (used to probe zone tightness).
    pub fn with_zone(mut self, z1: usize, z2: usize) -> Result<Self> {
        if z1 == 0 || z2 == 0 || z1 > self.meta.rows || z2 > self.meta.cols {
            return Err(Error::shape(format!(
                "zone {z1}x{z2} does not fit {}x{} arrays",
                self.meta.rows, self.meta.cols
            )));
        }
        self.meta.z1 = z1;
        self.meta.z2 = z2;
        Ok(self)
    }
}
