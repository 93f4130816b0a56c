//! Correlation values as elements of Z[w_n]: a value is zero exactly when its
//! coefficient polynomial vanishes modulo the n-th cyclotomic polynomial.
//!
//!     cargo run --example exact_arithmetic

use zcacs::correlation::{accf_2d, accf_2d_exact, cyclotomic, root_sum, ExactValue};
use zcacs::PhaseArray;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [6, 12, 30, 105] {
        let phi = cyclotomic(n);
        println!(
            "Phi_{n}: degree {}, min coefficient {}",
            phi.len() - 1,
            phi.iter().min().unwrap()
        );
    }

    // 1 + w^2 + w^4 = 0 in Z[w_6]; 1 + w^3 = 0 too, but 1 + w is not.
    for powers in [vec![0, 2, 4], vec![0, 3], vec![0, 1]] {
        let mut v = ExactValue::zero(6);
        for p in &powers {
            v.add_power(*p, 1);
        }
        println!(
            "sum of w_6^{powers:?} = {v}: zero={} float |.|={:.1e}",
            v.is_zero(),
            v.to_complex().norm()
        );
    }

    for (t, tp) in [(1, 1), (1, 2), (1, 4)] {
        println!("root_sum({t}, {tp}, 3) = {}", root_sum(t, tp, 3)?);
    }

    let a = PhaseArray::new(2, 2, 4, vec![0, 1, 2, 3])?;
    let b = PhaseArray::new(2, 2, 4, vec![0, 3, 1, 0])?;
    for (t1, t2) in [(0, 0), (0, 1), (1, -1)] {
        let e = accf_2d_exact(&a, &b, t1, t2)?;
        println!("C({t1},{t2}) = {e} ~ {:.3}", accf_2d(&a, &b, t1, t2)?);
    }
    Ok(())
}
