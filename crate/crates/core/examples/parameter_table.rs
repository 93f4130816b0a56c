//! Achievable parameters over a small grid, from derived quantities only.
//!
//!     cargo run --example parameter_table

use zcacs::cli::table::{render_text, TableGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = TableGrid::from_toml_str(
        r#"
        p = [1, 2, 3]
        m = [1, 2]
        q = [2, 3]
        n = [1, 2]
        r = [1, 2]
        row_primed = [[1], [2]]
        col_primed = [[2], [3]]
        "#,
    )?;
    let rows = grid.rows()?;
    print!("{}", render_text(&rows));
    let optimal = rows.iter().filter(|r| r.optimal).count();
    println!("{optimal} of {} rows optimal", rows.len());
    Ok(())
}
