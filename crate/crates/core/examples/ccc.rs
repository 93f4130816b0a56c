//! A complete complementary code: no primed blocks, so the zone is the whole
//! array and there are as many sets as arrays per set.
//!
//!     cargo run --example ccc

use zcacs::correlation::{set_correlation, verify_ccc, VerifyOptions};
use zcacs::generator::build_ccc;
use zcacs::ConfigDocument;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ConfigDocument::from_toml_str("row_blocks = [[2, 1, 1]]\ncol_blocks = [[3, 1, 1]]")?.to_config()?;
    let cs = build_ccc(&cfg)?;
    println!("{}", cs.meta());
    for (k, set) in cs.family().iter().enumerate() {
        let arrays: Vec<_> = set.iter().map(|a| a.entries().to_vec()).collect();
        println!("set {k}: {arrays:?}");
    }
    let c = set_correlation(cs.set(0), cs.set(0), 0, 0)?;
    println!("peak of set 0: {:.1}", c.re);
    let c = set_correlation(cs.set(0), cs.set(1), 1, -2)?;
    println!("sets 0,1 at shift (1,-2): {:.1e}", c.norm());

    let opts = VerifyOptions {
        exact: true,
        ..VerifyOptions::default()
    };
    let r = verify_ccc(&cs, &opts);
    println!("complete complementary: {} ({:?})", r.pass, r.exact);
    Ok(())
}
