//! Evaluates the phase functions f, a, M and b on individual digit vectors.
//!
//!     cargo run --example phase_functions

use zcacs::generator::{eval_a, eval_b, eval_f, eval_m, CosetIndex, ThetaIndex};
use zcacs::mixed_radix::{decompose, DigitVector, Side};
use zcacs::ConfigDocument;

fn digits(blocks: &[&[u64]], primed: &[u64]) -> DigitVector {
    DigitVector {
        blocks: blocks.iter().map(|b| b.to_vec()).collect(),
        primed: primed.to_vec(),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ConfigDocument::from_toml_str(
        r#"
        row_blocks = [[2, 2, 1]]
        col_blocks = [[3, 2, 1]]
        row_primed = [3]
        col_primed = [2]
        row_perms = [[2, 1]]
        row_linear = [[1, 2]]
        col_linear = [[2, 1]]
        "#,
    )?
    .to_config()?;
    println!("lambda={} delta={}", cfg.lambda(), cfg.delta());

    let f = eval_f(&digits(&[&[1, 0]], &[]), &digits(&[&[2, 1]], &[]), &cfg)?;
    println!("f(g=(1,0), u=(2,1)) = {f}");

    let theta = ThetaIndex {
        row: vec![1],
        col: vec![2],
    };
    let t = ThetaIndex {
        row: vec![0],
        col: vec![1],
    };
    let a = eval_a(&theta, &t, &digits(&[&[1, 1]], &[]), &digits(&[&[1, 0]], &[]), &cfg)?;
    println!("a(theta=(1,2), t=(0,1)) = {a}");

    let coset = CosetIndex { c: vec![2], d: vec![1] };
    let g = digits(&[&[1, 1]], &[2]);
    let u = digits(&[&[1, 0]], &[1]);
    println!("M(c=2, d=1) = {}", eval_m(&coset, &g, &u, &cfg)?);
    println!("b = {}", eval_b(&theta, &t, &coset, &g, &u, &cfg)?);

    // row index 7 of the 12 rows: digits (1, 1), primed digit 1
    println!("row 7 -> {:?}", decompose(7, cfg.spec(), Side::Row, true)?);
    Ok(())
}
