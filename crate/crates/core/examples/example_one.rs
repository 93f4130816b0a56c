//! Builds the 36-set family of 12x18 arrays over Z_6 and checks it in float
//! and exact arithmetic.
//!
//!     cargo run --release --example example_one

use zcacs::correlation::{verify_zcacs, VerifyOptions};
use zcacs::generator::{build_zcacs, derive_params};
use zcacs::ConfigDocument;

const CONFIG: &str = r#"
row_blocks = [[2, 2, 1]]
col_blocks = [[3, 2, 1]]
row_primed = [3]
col_primed = [2]
row_perms = [[2, 1]]
row_linear = [[1, 2]]
col_linear = [[2, 1]]
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ConfigDocument::from_toml_str(CONFIG)?.to_config()?;
    let derived = derive_params(&cfg);
    println!("{}  optimal={}", derived.code, derived.optimal());

    let cs = build_zcacs(&cfg)?;
    let m = cs.meta();
    println!("first row of set 0, array 0: {:?}", cs.set(0)[0].row(0));

    for exact in [false, true] {
        let opts = VerifyOptions {
            exact,
            ..VerifyOptions::default()
        };
        let r = verify_zcacs(&cs, m.z1, m.z2, &opts);
        println!(
            "exact={exact}: pass={} peak={} worst auto={:.2e} worst cross={:.2e} ({} values)",
            r.pass,
            r.peak_observed,
            r.worst_auto_magnitude(),
            r.worst_cross_magnitude(),
            r.evaluations
        );
    }
    Ok(())
}
