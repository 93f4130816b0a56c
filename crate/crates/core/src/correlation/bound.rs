use crate::codeset::CodeSetParams;
use crate::error::{Error, Result};

/// Both sides of the set-size bound `sets*z1*z2 <= flock*(l1+z1-1)*(l2+z2-1)`
/// and the optimality test `sets == flock*floor(l1/z1)*floor(l2/z2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Optimality {
    pub bound_lhs: u64,
    pub bound_rhs: u64,
    pub optimal_sets: u64,
    pub sets: u64,
    pub within_bound: bool,
    pub optimal: bool,
}

pub fn optimality(params: &CodeSetParams) -> Result<Optimality> {
    let CodeSetParams {
        sets,
        flock,
        rows,
        cols,
        z1,
        z2,
        ..
    } = *params;
    for (name, v) in [
        ("sets", sets),
        ("flock", flock),
        ("rows", rows),
        ("cols", cols),
        ("z1", z1),
        ("z2", z2),
    ] {
        if v == 0 {
            return Err(Error::range(name, 0, 0));
        }
    }
    if z1 > rows {
        return Err(Error::range("z1", z1 as u64, rows as u64));
    }
    if z2 > cols {
        return Err(Error::range("z2", z2 as u64, cols as u64));
    }
    let (sets, flock, l1, l2, z1, z2) = (
        sets as u64,
        flock as u64,
        rows as u64,
        cols as u64,
        z1 as u64,
        z2 as u64,
    );
    let bound_lhs = sets * z1 * z2;
    let bound_rhs = flock * (l1 + z1 - 1) * (l2 + z2 - 1);
    let optimal_sets = flock * (l1 / z1) * (l2 / z2);
    Ok(Optimality {
        bound_lhs,
        bound_rhs,
        optimal_sets,
        sets,
        within_bound: bound_lhs <= bound_rhs,
        optimal: sets == optimal_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codeset::CodeKind;

    fn params(sets: usize, flock: usize, rows: usize, z1: usize, cols: usize, z2: usize) -> CodeSetParams {
        CodeSetParams {
            kind: CodeKind::Zcacs2d,
            sets,
            flock,
            rows,
            cols,
            z1,
            z2,
            modulus: 6,
        }
    }

    #[test]
    fn example_one_is_optimal() {
        let o = optimality(&params(36, 6, 12, 4, 18, 9)).unwrap();
        assert!(o.optimal);
        assert_eq!(o.optimal_sets, 36);
        assert_eq!(o.bound_lhs, 36 * 4 * 9);
        assert_eq!(o.bound_rhs, 6 * 15 * 26);
        assert!(o.within_bound);
    }

    #[test]
    fn ccc_is_optimal() {
        assert!(optimality(&params(6, 6, 2, 2, 3, 3)).unwrap().optimal);
    }

    #[test]
    fn one_short_is_not_optimal() {
        let o = optimality(&params(35, 6, 12, 4, 18, 9)).unwrap();
        assert!(!o.optimal);
        assert!(o.within_bound);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(optimality(&params(0, 6, 12, 4, 18, 9)).is_err());
        assert!(optimality(&params(36, 6, 12, 13, 18, 9)).is_err());
    }
}
