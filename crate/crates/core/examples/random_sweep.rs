//! Random permutations, coefficients and offsets over several block shapes,
//! each family checked exhaustively.
//!
//!     cargo run --release --example random_sweep [seed]

use rand::rngs::StdRng;
use rand::SeedableRng;
use zcacs::correlation::{verify_zcacs, Engine, VerifyOptions};
use zcacs::generator::{build, derive_params};
use zcacs::mixed_radix::{RadixBlock, RadixSpec};
use zcacs::{ConstructionParams, GeneratorConfig};

fn params(rows: &[(u64, usize, u32)], cols: &[(u64, usize, u32)], rp: u64, cp: u64) -> ConstructionParams {
    let blocks = |v: &[(u64, usize, u32)]| v.iter().map(|&(b, m, _)| RadixBlock::new(b, m).unwrap()).collect();
    let spec = RadixSpec::new(blocks(rows), blocks(cols), vec![rp], vec![cp]).unwrap();
    ConstructionParams::new(
        spec,
        rows.iter().map(|r| r.2).collect(),
        cols.iter().map(|c| c.2).collect(),
    )
    .unwrap()
}

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut rng = StdRng::seed_from_u64(seed);
    let shapes = [
        params(&[(2, 2, 1)], &[(3, 2, 1)], 3, 2),
        params(&[(2, 1, 2)], &[(3, 1, 1)], 1, 2),
        params(&[(3, 2, 1)], &[(2, 2, 2)], 2, 3),
        params(&[(2, 1, 1), (3, 1, 1)], &[(5, 1, 1)], 2, 2),
        params(&[(1, 1, 1)], &[(2, 2, 2), (3, 1, 1)], 1, 2),
    ];
    let opts = VerifyOptions {
        engine: Engine::Separable,
        exact: true,
        ..VerifyOptions::default()
    };
    for p in shapes {
        let cfg = GeneratorConfig::random(p, &mut rng);
        let cs = build(&cfg);
        let m = cs.meta();
        let r = verify_zcacs(&cs, m.z1, m.z2, &opts);
        println!("{}: pass={} optimal={}", m, r.pass, derive_params(&cfg).optimal());
    }
}
