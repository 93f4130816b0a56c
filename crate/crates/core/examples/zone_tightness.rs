//! Widening the declared zone by one row exposes nonzero correlations exactly
//! on the new boundary shifts.
//!
//!     cargo run --release --example zone_tightness

use zcacs::correlation::{verify_zcacs, VerifyOptions};
use zcacs::generator::build_zcacs;
use zcacs::ConfigDocument;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ConfigDocument::from_toml_str(
        "row_blocks = [[2, 2, 1]]\ncol_blocks = [[3, 2, 1]]\nrow_primed = [3]\ncol_primed = [2]",
    )?
    .to_config()?;
    let cs = build_zcacs(&cfg)?;
    let opts = VerifyOptions {
        verbose: true,
        ..VerifyOptions::default()
    };
    for (z1, z2) in [(4, 9), (5, 9), (4, 10)] {
        let r = verify_zcacs(&cs, z1, z2, &opts);
        println!("zone {z1}x{z2}: pass={} violations={}", r.pass, r.violations.len());
        for o in r.violations.iter().take(3) {
            println!("  sets {:?} shift {:?} |C|={:.1}", o.sets, o.shift, o.magnitude);
        }
    }
    Ok(())
}
