//! Codecs between flat indices and block-structured digit vectors.
//!
//! One side of a [`RadixSpec`] is an ordered list of blocks `(base, digits)`
//! followed by an optional list of scalar "primed" bases. A flat index on that
//! side decomposes as
//!
//! ```text
//! v = g_1 + g_2*B_1 + ... + g_a*(B_1*...*B_{a-1}) + (h_1 + h_2*P_1 + ...) * span
//! g_i = g_{i,1} + g_{i,2}*base_i + ... + g_{i,digits}*base_i^(digits-1)
//! ```
//!
//! where `B_i = base_i^digits_i`, `span = B_1*...*B_a` and `P_j` are the primed
//! bases. The first digit of the first block varies fastest.
//!
//! Digit positions are written 1-based in configuration files (permutations
//! name positions `1..=digits`) and stored 0-based here.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A block of `digits` base-`base` digits. A base of 1 is a placeholder
/// block: its digits are always zero and its span is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RadixBlock {
    base: u64,
    digits: usize,
}

impl RadixBlock {
    pub fn new(base: u64, digits: usize) -> Result<Self> {
        if base != 1 && !is_prime(base) {
            return Err(Error::Domain(format!("block base {base} is neither 1 nor prime")));
        }
        if digits == 0 {
            return Err(Error::Domain("block must have at least one digit".into()));
        }
        Ok(RadixBlock { base, digits })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn is_trivial(&self) -> bool {
        self.base == 1
    }

    /// `base^digits`
    pub fn span(&self) -> u64 {
        self.base.pow(self.digits as u32)
    }
}

/// Which axis of the index space a decomposition refers to. `Row` is the
/// p-side (array rows), `Col` the q-side (array columns).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Row,
    Col,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadixSpec {
    row_blocks: Vec<RadixBlock>,
    col_blocks: Vec<RadixBlock>,
    row_primed: Vec<u64>,
    col_primed: Vec<u64>,
}

impl RadixSpec {
    /// Row blocks and row primed bases may be 1 or prime; column blocks and
    /// column primed bases must be prime. Primed lists may be empty.
    pub fn new(
        row_blocks: Vec<RadixBlock>,
        col_blocks: Vec<RadixBlock>,
        row_primed: Vec<u64>,
        col_primed: Vec<u64>,
    ) -> Result<Self> {
        if row_blocks.is_empty() {
            return Err(Error::Domain("at least one row block is required".into()));
        }
        if col_blocks.is_empty() {
            return Err(Error::Domain("at least one column block is required".into()));
        }
        if let Some(b) = col_blocks.iter().find(|b| b.is_trivial()) {
            return Err(Error::Domain(format!(
                "column block base must be prime, got {}",
                b.base()
            )));
        }
        if let Some(&p) = row_primed.iter().find(|&&p| p != 1 && !is_prime(p)) {
            return Err(Error::Domain(format!("row primed base {p} is neither 1 nor prime")));
        }
        if let Some(&q) = col_primed.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::Domain(format!("column primed base {q} is not prime")));
        }
        Ok(RadixSpec {
            row_blocks,
            col_blocks,
            row_primed,
            col_primed,
        })
    }

    pub fn blocks(&self, side: Side) -> &[RadixBlock] {
        match side {
            Side::Row => &self.row_blocks,
            Side::Col => &self.col_blocks,
        }
    }

    pub fn primed(&self, side: Side) -> &[u64] {
        match side {
            Side::Row => &self.row_primed,
            Side::Col => &self.col_primed,
        }
    }

    /// Product of block spans (`m` on the row side, `n` on the column side).
    pub fn base_span(&self, side: Side) -> u64 {
        self.blocks(side).iter().map(RadixBlock::span).product()
    }

    pub fn primed_span(&self, side: Side) -> u64 {
        self.primed(side).iter().product()
    }

    /// `l1` on the row side, `l2` on the column side.
    pub fn extended_span(&self, side: Side) -> u64 {
        self.base_span(side) * self.primed_span(side)
    }

    fn span(&self, side: Side, include_primed: bool) -> u64 {
        if include_primed {
            self.extended_span(side)
        } else {
            self.base_span(side)
        }
    }
}

/// Digits of one side of the index space: `blocks[i][k]` is digit `k + 1` of
/// block `i + 1`, `primed[j]` the digit for primed base `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DigitVector {
    pub blocks: Vec<Vec<u64>>,
    pub primed: Vec<u64>,
}

impl DigitVector {
    pub fn zeros(spec: &RadixSpec, side: Side, include_primed: bool) -> Self {
        DigitVector {
            blocks: spec.blocks(side).iter().map(|b| vec![0; b.digits()]).collect(),
            primed: if include_primed {
                vec![0; spec.primed(side).len()]
            } else {
                Vec::new()
            },
        }
    }

    /// Checks the block/digit counts and digit bounds against one side of
    /// `spec`. The primed part must be empty or complete.
    pub fn check_shape(&self, spec: &RadixSpec, side: Side) -> Result<()> {
        let blocks = spec.blocks(side);
        if self.blocks.len() != blocks.len() {
            return Err(Error::shape(format!(
                "expected {} blocks, got {}",
                blocks.len(),
                self.blocks.len()
            )));
        }
        for (i, (digits, block)) in self.blocks.iter().zip(blocks).enumerate() {
            if digits.len() != block.digits() {
                return Err(Error::shape(format!(
                    "block {} expects {} digits, got {}",
                    i + 1,
                    block.digits(),
                    digits.len()
                )));
            }
            if let Some((k, &d)) = digits
                .iter()
                .enumerate()
                .find(|&(_, &d)| d >= block.base().max(1) || (block.is_trivial() && d != 0))
            {
                return Err(Error::shape(format!(
                    "digit {} of block {} is {d}, base is {}",
                    k + 1,
                    i + 1,
                    block.base()
                )));
            }
        }
        let primed = spec.primed(side);
        if !self.primed.is_empty() {
            if self.primed.len() != primed.len() {
                return Err(Error::shape(format!(
                    "expected {} primed digits, got {}",
                    primed.len(),
                    self.primed.len()
                )));
            }
            if let Some((j, (&d, &b))) = self.primed.iter().zip(primed).enumerate().find(|&(_, (&d, &b))| d >= b) {
                return Err(Error::shape(format!("primed digit {} is {d}, base is {b}", j + 1)));
            }
        }
        Ok(())
    }
}

/// Mixed-radix digits of `value`, first digit fastest. Base-1 positions are 0.
pub fn radix_digits(mut value: u64, bases: &[u64]) -> Vec<u64> {
    bases
        .iter()
        .map(|&b| {
            if b <= 1 {
                0
            } else {
                let d = value % b;
                value /= b;
                d
            }
        })
        .collect()
}

/// Inverse of [`radix_digits`].
pub fn radix_value(digits: &[u64], bases: &[u64]) -> u64 {
    digits.iter().zip(bases).rev().fold(0, |acc, (&d, &b)| acc * b + d)
}

pub fn decompose(value: u64, spec: &RadixSpec, side: Side, include_primed: bool) -> Result<DigitVector> {
    let span = spec.span(side, include_primed);
    if value >= span {
        return Err(Error::range(format!("{side:?} index"), value, span));
    }
    let mut rest = value % spec.base_span(side);
    let blocks = spec
        .blocks(side)
        .iter()
        .map(|block| {
            let g = rest % block.span();
            rest /= block.span();
            radix_digits(g, &vec![block.base(); block.digits()])
        })
        .collect();
    let primed = if include_primed {
        radix_digits(value / spec.base_span(side), spec.primed(side))
    } else {
        Vec::new()
    };
    Ok(DigitVector { blocks, primed })
}

pub fn compose(vec: &DigitVector, spec: &RadixSpec, side: Side) -> Result<u64> {
    vec.check_shape(spec, side)?;
    let base = spec
        .blocks(side)
        .iter()
        .zip(&vec.blocks)
        .rev()
        .fold(0, |acc, (block, digits)| {
            acc * block.span() + radix_value(digits, &vec![block.base(); block.digits()])
        });
    let primed = radix_value(&vec.primed, spec.primed(side));
    Ok(base + primed * spec.base_span(side))
}

/// Digits of `value + 1` over `bases`.
pub fn successor_digits(value: u64, bases: &[u64]) -> Result<Vec<u64>> {
    let span: u64 = bases.iter().product();
    if value + 1 >= span {
        return Err(Error::range("successor value", value, span));
    }
    Ok(radix_digits(value + 1, bases))
}
