#![allow(dead_code)]

use std::path::PathBuf;

use num_complex::Complex64;
use rand::Rng;
use zcacs::mixed_radix::{DigitVector, RadixBlock, RadixSpec};
use zcacs::{ConfigDocument, ConstructionParams, GeneratorConfig, PhaseArray};

pub fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

pub fn load(name: &str) -> GeneratorConfig {
    let text = std::fs::read_to_string(config_path(name)).unwrap();
    ConfigDocument::from_toml_str(&text).unwrap().to_config().unwrap()
}

pub fn example_one() -> GeneratorConfig {
    load("example1.toml")
}

pub fn dv(blocks: &[&[u64]], primed: &[u64]) -> DigitVector {
    DigitVector {
        blocks: blocks.iter().map(|b| b.to_vec()).collect(),
        primed: primed.to_vec(),
    }
}

pub fn params(rows: &[(u64, usize, u32)], cols: &[(u64, usize, u32)], rp: &[u64], cp: &[u64]) -> ConstructionParams {
    let blocks = |list: &[(u64, usize, u32)]| -> Vec<RadixBlock> {
        list.iter().map(|&(b, m, _)| RadixBlock::new(b, m).unwrap()).collect()
    };
    let spec = RadixSpec::new(blocks(rows), blocks(cols), rp.to_vec(), cp.to_vec()).unwrap();
    ConstructionParams::new(
        spec,
        rows.iter().map(|r| r.2).collect(),
        cols.iter().map(|c| c.2).collect(),
    )
    .unwrap()
}

/// Draws from p in {1,2,3}, q in {2,3,5}, m, n, k, r in {1,2}, one or two
/// blocks per side, p' in {1,2,3}, q' in {2,3}, keeping l1*l2 <= 2500 and at
/// most 150 sets; coefficients, permutations and offsets are random.
pub fn random_grid_config(rng: &mut impl Rng) -> GeneratorConfig {
    loop {
        let side = |rng: &mut dyn rand::RngCore, bases: &[u64]| -> Vec<(u64, usize, u32)> {
            let count = rng.gen_range(1..=2);
            (0..count)
                .map(|_| {
                    (
                        bases[rng.gen_range(0..bases.len())],
                        rng.gen_range(1..=2usize),
                        rng.gen_range(1..=2u32),
                    )
                })
                .collect()
        };
        let rows = side(rng, &[1, 2, 3]);
        let cols = side(rng, &[2, 3, 5]);
        let rp = [1, 2, 3][rng.gen_range(0..3)];
        let cp = [2, 3][rng.gen_range(0..2)];
        let p = params(&rows, &cols, &[rp], &[cp]);
        if p.rows() * p.cols() <= 2500 && p.alpha1() <= 150 {
            return GeneratorConfig::random(p, rng);
        }
    }
}

pub fn random_array(rng: &mut impl Rng, rows: usize, cols: usize, modulus: u32) -> PhaseArray {
    let entries = (0..rows * cols).map(|_| rng.gen_range(0..modulus)).collect();
    PhaseArray::new(rows, cols, modulus, entries).unwrap()
}

/// `sum a[g][i] * conj(b[g + tau1][i + tau2])` over every `(g, i)` for which
/// both indices are inside the arrays.
pub fn clipped_accf(a: &PhaseArray, b: &PhaseArray, tau1: i64, tau2: i64) -> Complex64 {
    let w = |e: u32| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / a.modulus() as f64);
    let (l1, l2) = (a.rows() as i64, a.cols() as i64);
    let mut acc = Complex64::new(0.0, 0.0);
    for g in 0..l1 {
        for i in 0..l2 {
            let (gb, ib) = (g + tau1, i + tau2);
            if (0..l1).contains(&gb) && (0..l2).contains(&ib) {
                acc += w(a.get(g as usize, i as usize)) * w(b.get(gb as usize, ib as usize)).conj();
            }
        }
    }
    acc
}

/// Set correlation through [`clipped_accf`].
pub fn clipped_set_accf(a: &[PhaseArray], b: &[PhaseArray], tau1: i64, tau2: i64) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| clipped_accf(x, y, tau1, tau2)).sum()
}
