use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{ConstructionParams, ExponentCoupling, GeneratorConfig};
use crate::mixed_radix::{is_prime, RadixBlock, RadixSpec, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingName {
    Literal,
    #[default]
    DigitCoupled,
}

/// On-disk form of a [`GeneratorConfig`].
///
/// ```toml
/// row_blocks = [[2, 2, 1]]   # [p, m, k] per row block
/// col_blocks = [[3, 2, 1]]   # [q, n, r] per column block
/// row_primed = [3]           # p' (prime or 1)
/// col_primed = [2]           # q' (prime)
/// row_perms = [[2, 1]]       # 1-based; identity when omitted
/// row_linear = [[1, 2]]      # d_{i,e}; zeros when omitted
/// col_linear = [[2, 1]]      # c_{j,o}; zeros when omitted
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub row_blocks: Vec<[u64; 3]>,
    pub col_blocks: Vec<[u64; 3]>,
    #[serde(default)]
    pub row_primed: Vec<u64>,
    #[serde(default)]
    pub col_primed: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_perms: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_perms: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_linear: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_linear: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_offsets: Option<Vec<u64>>,
    #[serde(default)]
    pub coupling: CouplingName,
}

fn blocks(entries: &[[u64; 3]], name: &str) -> Result<(Vec<RadixBlock>, Vec<u32>)> {
    let mut blocks = Vec::with_capacity(entries.len());
    let mut exps = Vec::with_capacity(entries.len());
    for (i, &[base, digits, exp]) in entries.iter().enumerate() {
        let path = format!("{name}[{i}]");
        let block = RadixBlock::new(base, digits as usize).map_err(|e| Error::config(&path, e.to_string()))?;
        if exp == 0 || exp > u32::MAX as u64 {
            return Err(Error::config(path, format!("exponent {exp} must be >= 1")));
        }
        blocks.push(block);
        exps.push(exp as u32);
    }
    Ok((blocks, exps))
}

impl ConfigDocument {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config("<document>", e.to_string().trim().to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config documents serialize")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config("<provenance>", e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("config documents serialize")
    }

    /// Validates the document; errors carry the offending field path.
    pub fn to_config(&self) -> Result<GeneratorConfig> {
        self.to_config_with(GeneratorConfig::new)
    }

    pub(crate) fn to_config_with(&self, init: fn(ConstructionParams) -> GeneratorConfig) -> Result<GeneratorConfig> {
        if self.row_blocks.is_empty() {
            return Err(Error::config(
                "row_blocks",
                "at least one block is required (use [1, 1, 1] for none)",
            ));
        }
        if self.col_blocks.is_empty() {
            return Err(Error::config("col_blocks", "at least one block is required"));
        }
        let (rows, row_exp) = blocks(&self.row_blocks, "row_blocks")?;
        let (cols, col_exp) = blocks(&self.col_blocks, "col_blocks")?;
        if let Some(j) = cols.iter().position(|b| b.is_trivial()) {
            return Err(Error::config(
                format!("col_blocks[{j}]"),
                "column block base must be prime",
            ));
        }
        if let Some(i) = self.row_primed.iter().position(|&p| p != 1 && !is_prime(p)) {
            return Err(Error::config(
                format!("row_primed[{i}]"),
                format!("{} is neither 1 nor prime", self.row_primed[i]),
            ));
        }
        if let Some(j) = self.col_primed.iter().position(|&q| !is_prime(q)) {
            return Err(Error::config(
                format!("col_primed[{j}]"),
                format!("{} is not prime", self.col_primed[j]),
            ));
        }
        let spec = RadixSpec::new(rows, cols, self.row_primed.clone(), self.col_primed.clone())
            .map_err(|e| Error::config("<document>", e.to_string()))?;
        let params = ConstructionParams::new(spec, row_exp, col_exp)?;
        let mut cfg = init(params);

        for (side, perms, name) in [
            (Side::Row, &self.row_perms, "row_perms"),
            (Side::Col, &self.col_perms, "col_perms"),
        ] {
            if let Some(perms) = perms {
                let expected = cfg.spec().blocks(side).len();
                if perms.len() != expected {
                    return Err(Error::config(
                        name,
                        format!("expected {expected} permutations, got {}", perms.len()),
                    ));
                }
                for (i, p) in perms.iter().enumerate() {
                    cfg = cfg.with_permutation(side, i, p.clone())?;
                }
            }
        }
        for (side, lin, name) in [
            (Side::Row, &self.row_linear, "row_linear"),
            (Side::Col, &self.col_linear, "col_linear"),
        ] {
            if let Some(lin) = lin {
                let expected = cfg.spec().blocks(side).len();
                if lin.len() != expected {
                    return Err(Error::config(
                        name,
                        format!("expected {expected} coefficient lists, got {}", lin.len()),
                    ));
                }
                for (i, c) in lin.iter().enumerate() {
                    cfg = cfg.with_linear(side, i, c.clone())?;
                }
            }
        }
        if let Some(offsets) = &self.theta_offsets {
            cfg = cfg.with_theta_offsets(offsets.clone())?;
        }
        Ok(cfg.with_coupling(match self.coupling {
            CouplingName::Literal => ExponentCoupling::Literal,
            CouplingName::DigitCoupled => ExponentCoupling::DigitCoupled,
        }))
    }

    /// Fully explicit document for `cfg`.
    pub fn from_config(cfg: &GeneratorConfig) -> Self {
        let p = cfg.params();
        let side_blocks = |side| {
            p.spec()
                .blocks(side)
                .iter()
                .zip(p.exponents(side))
                .map(|(b, &k)| [b.base(), b.digits() as u64, k as u64])
                .collect()
        };
        ConfigDocument {
            row_blocks: side_blocks(Side::Row),
            col_blocks: side_blocks(Side::Col),
            row_primed: p.spec().primed(Side::Row).to_vec(),
            col_primed: p.spec().primed(Side::Col).to_vec(),
            row_perms: Some(cfg.permutations(Side::Row).to_vec()),
            col_perms: Some(cfg.permutations(Side::Col).to_vec()),
            row_linear: Some(cfg.linear(Side::Row).to_vec()),
            col_linear: Some(cfg.linear(Side::Col).to_vec()),
            theta_offsets: Some(cfg.theta_offsets().to_vec()),
            coupling: match cfg.coupling() {
                ExponentCoupling::Literal => CouplingName::Literal,
                ExponentCoupling::DigitCoupled => CouplingName::DigitCoupled,
            },
        }
    }
}
