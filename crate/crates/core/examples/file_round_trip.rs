//! Writes a family as text and binary code-set files and reads both back.
//!
//!     cargo run --example file_round_trip

use zcacs::cli::{read_codeset, write_codeset, Encoding};
use zcacs::generator::build;
use zcacs::ConfigDocument;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ConfigDocument::from_toml_str(
        "row_blocks = [[2, 1, 1]]\ncol_blocks = [[3, 2, 1]]\ncol_primed = [2]\nrow_linear = [[1]]",
    )?
    .to_config()?;
    let cs = build(&cfg);
    let dir = std::env::temp_dir().join(format!("zcacs-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    for (encoding, name) in [(Encoding::Text, "family.txt"), (Encoding::Binary, "family.bin")] {
        let path = dir.join(name);
        write_codeset(&cs, &path, encoding)?;
        let back = read_codeset(&path)?;
        println!(
            "{}: {} bytes, identical={}, provenance kept={}",
            path.display(),
            std::fs::metadata(&path)?.len(),
            back == cs,
            back.provenance() == Some(&cfg)
        );
    }
    let text = std::fs::read_to_string(dir.join("family.txt"))?;
    for line in text.lines().take(12) {
        println!("  {line}");
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
