//! Single-row families: with every row base equal to 1 the construction gives
//! one-dimensional Z-complementary code sets.
//!
//!     cargo run --example reductions

use zcacs::correlation::{accf_1d, verify_zcacs, VerifyOptions};
use zcacs::generator::reduce_to_1d;
use zcacs::ConfigDocument;

fn doc(col_block: [u64; 3], col_primed: u64) -> String {
    format!(
        "row_blocks = [[1, 1, 1]]\nrow_primed = [1]\ncol_blocks = [{:?}]\ncol_primed = [{col_primed}]",
        col_block
    )
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (block, primed) in [([2, 2, 2], 3), ([2, 2, 2], 2), ([2, 2, 1], 3)] {
        let cfg = ConfigDocument::from_toml_str(&doc(block, primed))?.to_config()?;
        let cs = reduce_to_1d(&cfg)?;
        let m = cs.meta();
        let r = verify_zcacs(&cs, 1, m.z2, &VerifyOptions::default());
        println!("{}: pass={}", m, r.pass);
        let seq = cs.set(0)[0].row(0);
        let acf: Vec<String> = (0..m.cols as i64)
            .map(|tau| {
                let v: num_complex::Complex64 = cs.set(0).iter().map(|a| accf_1d(a, a, tau).unwrap()).sum();
                format!("{:.0}", v.norm())
            })
            .collect();
        println!("  first sequence {seq:?}, set 0 |ACF| {}", acf.join(" "));
    }
    Ok(())
}
