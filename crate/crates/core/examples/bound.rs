//! The set-size bound `sets * z1 * z2 <= flock * (l1 + z1 - 1) * (l2 + z2 - 1)`
//! and the optimality test `sets == flock * floor(l1/z1) * floor(l2/z2)`.
//!
//!     cargo run --example bound

use zcacs::correlation::optimality;
use zcacs::{CodeKind, CodeSetParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (sets, flock, rows, cols, z1, z2) in [
        (36, 6, 12, 18, 4, 9),
        (35, 6, 12, 18, 4, 9),
        (40, 6, 12, 18, 4, 9),
        (60, 2, 8, 8, 3, 3),
    ] {
        let p = CodeSetParams {
            kind: CodeKind::Zcacs2d,
            sets,
            flock,
            rows,
            cols,
            z1,
            z2,
            modulus: 1,
        };
        let o = optimality(&p)?;
        println!(
            "sets={sets} flock={flock} {rows}x{cols} zone {z1}x{z2}: {} <= {} is {}, optimal size {}, optimal={}",
            o.bound_lhs, o.bound_rhs, o.within_bound, o.optimal_sets, o.optimal
        );
    }
    Ok(())
}
