use std::collections::BTreeMap;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::mixed_radix::{radix_digits, radix_value, RadixSpec, Side};

/// The prime/exponent skeleton of a construction.
///
/// `row_exponents[i]` is `k_i` for row block `i`, `col_exponents[j]` is the
/// column exponent `r_j` (written `t_j` in some parameter statements).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstructionParams {
    spec: RadixSpec,
    row_exponents: Vec<u32>,
    col_exponents: Vec<u32>,
}

impl ConstructionParams {
    pub fn new(spec: RadixSpec, row_exponents: Vec<u32>, col_exponents: Vec<u32>) -> Result<Self> {
        if row_exponents.len() != spec.blocks(Side::Row).len() {
            return Err(Error::config(
                "row_blocks",
                format!(
                    "{} exponents for {} blocks",
                    row_exponents.len(),
                    spec.blocks(Side::Row).len()
                ),
            ));
        }
        if col_exponents.len() != spec.blocks(Side::Col).len() {
            return Err(Error::config(
                "col_blocks",
                format!(
                    "{} exponents for {} blocks",
                    col_exponents.len(),
                    spec.blocks(Side::Col).len()
                ),
            ));
        }
        if let Some(i) = row_exponents.iter().position(|&k| k == 0) {
            return Err(Error::config(format!("row_blocks[{i}]"), "exponent k must be >= 1"));
        }
        if let Some(j) = col_exponents.iter().position(|&r| r == 0) {
            return Err(Error::config(format!("col_blocks[{j}]"), "exponent r must be >= 1"));
        }
        Ok(ConstructionParams {
            spec,
            row_exponents,
            col_exponents,
        })
    }

    pub fn spec(&self) -> &RadixSpec {
        &self.spec
    }

    pub fn exponents(&self, side: Side) -> &[u32] {
        match side {
            Side::Row => &self.row_exponents,
            Side::Col => &self.col_exponents,
        }
    }

    /// Ranges of the flock/set index components: `p_i^{k_i}` then `q_j^{r_j}`.
    pub fn index_bases(&self, side: Side) -> Vec<u64> {
        self.spec
            .blocks(side)
            .iter()
            .zip(self.exponents(side))
            .map(|(b, &k)| b.base().pow(k))
            .collect()
    }

    /// Flock size `alpha = prod p_i^{k_i} * prod q_j^{r_j}`.
    pub fn alpha(&self) -> u64 {
        self.index_bases(Side::Row).iter().product::<u64>() * self.index_bases(Side::Col).iter().product::<u64>()
    }

    /// Number of sets `alpha * prod p' * prod q'`.
    pub fn alpha1(&self) -> u64 {
        self.alpha() * self.spec.primed_span(Side::Row) * self.spec.primed_span(Side::Col)
    }

    /// Zone width along rows, `m`.
    pub fn z1(&self) -> u64 {
        self.spec.base_span(Side::Row)
    }

    /// Zone width along columns, `n`.
    pub fn z2(&self) -> u64 {
        self.spec.base_span(Side::Col)
    }

    pub fn rows(&self) -> u64 {
        self.spec.extended_span(Side::Row)
    }

    pub fn cols(&self) -> u64 {
        self.spec.extended_span(Side::Col)
    }

    /// `lcm` of all block bases.
    pub fn lambda(&self) -> u64 {
        [Side::Row, Side::Col]
            .iter()
            .flat_map(|&s| self.spec.blocks(s))
            .fold(1, |acc, b| acc.lcm(&b.base()))
    }

    /// `lcm` of `lambda` and all primed bases.
    pub fn delta(&self) -> u64 {
        [Side::Row, Side::Col]
            .iter()
            .flat_map(|&s| self.spec.primed(s))
            .fold(self.lambda(), |acc, &p| acc.lcm(&p))
    }

    /// True when no primed base exceeds 1 on either side.
    pub fn primed_trivial(&self) -> bool {
        self.spec.primed_span(Side::Row) == 1 && self.spec.primed_span(Side::Col) == 1
    }

    /// True when every row block and every row primed base is 1 (single-row arrays).
    pub fn row_side_trivial(&self) -> bool {
        self.spec.blocks(Side::Row).iter().all(|b| b.is_trivial()) && self.spec.primed_span(Side::Row) == 1
    }

    /// Prime bases that occur more than once among the blocks of both sides.
    pub fn repeated_primes(&self) -> Vec<u64> {
        let mut seen = BTreeMap::new();
        for b in self.spec.blocks(Side::Row).iter().chain(self.spec.blocks(Side::Col)) {
            if !b.is_trivial() {
                *seen.entry(b.base()).or_insert(0) += 1;
            }
        }
        seen.into_iter().filter(|&(_, n)| n > 1).map(|(p, _)| p).collect()
    }
}

/// A flock index `theta = (r_1..r_a, s_1..s_b)` or a set index
/// `t = (x_1..x_a, y_1..y_b)`; both live in the same product space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ThetaIndex {
    pub row: Vec<u64>,
    pub col: Vec<u64>,
}

pub type TIndex = ThetaIndex;

impl ThetaIndex {
    pub fn zero(params: &ConstructionParams) -> Self {
        ThetaIndex {
            row: vec![0; params.spec.blocks(Side::Row).len()],
            col: vec![0; params.spec.blocks(Side::Col).len()],
        }
    }

    pub fn check(&self, params: &ConstructionParams) -> Result<()> {
        for side in [Side::Row, Side::Col] {
            let bases = params.index_bases(side);
            let comps = match side {
                Side::Row => &self.row,
                Side::Col => &self.col,
            };
            if comps.len() != bases.len() {
                return Err(Error::shape(format!(
                    "{side:?} index has {} components, expected {}",
                    comps.len(),
                    bases.len()
                )));
            }
            if let Some((i, (&v, &b))) = comps.iter().zip(&bases).enumerate().find(|(_, (&v, &b))| v >= b) {
                return Err(Error::range(format!("{side:?} index component {}", i + 1), v, b));
            }
        }
        Ok(())
    }

    fn bases(params: &ConstructionParams) -> Vec<u64> {
        let mut bases = params.index_bases(Side::Row);
        bases.extend(params.index_bases(Side::Col));
        bases
    }

    /// Position in the canonical order (lexicographic, last component fastest).
    pub fn rank(&self, params: &ConstructionParams) -> usize {
        let mut bases = Self::bases(params);
        let mut comps: Vec<u64> = self.row.iter().chain(&self.col).copied().collect();
        bases.reverse();
        comps.reverse();
        radix_value(&comps, &bases) as usize
    }

    pub fn from_rank(rank: usize, params: &ConstructionParams) -> Self {
        let mut bases = Self::bases(params);
        bases.reverse();
        let mut comps = radix_digits(rank as u64, &bases);
        comps.reverse();
        let col = comps.split_off(params.spec.blocks(Side::Row).len());
        ThetaIndex { row: comps, col }
    }

    /// All indices in canonical order; `alpha` of them.
    pub fn all(params: &ConstructionParams) -> Vec<Self> {
        (0..params.alpha() as usize)
            .map(|r| Self::from_rank(r, params))
            .collect()
    }
}

/// Coset multipliers `c = (c_1..c_a')`, `d = (d_1..d_b')` with
/// `c_i < p'_i`, `d_j < q'_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CosetIndex {
    pub c: Vec<u64>,
    pub d: Vec<u64>,
}

impl CosetIndex {
    pub fn zero(spec: &RadixSpec) -> Self {
        CosetIndex {
            c: vec![0; spec.primed(Side::Row).len()],
            d: vec![0; spec.primed(Side::Col).len()],
        }
    }

    pub fn check(&self, spec: &RadixSpec) -> Result<()> {
        for (name, comps, bases) in [
            ("c", &self.c, spec.primed(Side::Row)),
            ("d", &self.d, spec.primed(Side::Col)),
        ] {
            if comps.len() != bases.len() {
                return Err(Error::shape(format!(
                    "coset `{name}` has {} components, expected {}",
                    comps.len(),
                    bases.len()
                )));
            }
            if let Some((i, (&v, &b))) = comps.iter().zip(bases).enumerate().find(|(_, (&v, &b))| v >= b) {
                return Err(Error::range(format!("coset {name}_{}", i + 1), v, b));
            }
        }
        Ok(())
    }

    /// All cosets, lexicographic with the last component fastest.
    pub fn all(spec: &RadixSpec) -> Vec<Self> {
        let mut bases: Vec<u64> = spec
            .primed(Side::Row)
            .iter()
            .chain(spec.primed(Side::Col))
            .copied()
            .collect();
        bases.reverse();
        let count: u64 = bases.iter().product();
        let a = spec.primed(Side::Row).len();
        (0..count)
            .map(|rank| {
                let mut comps = radix_digits(rank, &bases);
                comps.reverse();
                let d = comps.split_off(a);
                CosetIndex { c: comps, d }
            })
            .collect()
    }
}

/// How the flock and set indices enter the phase when an exponent `k_i` or
/// `r_j` exceeds 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ExponentCoupling {
    /// Only `r_i` and `x_i` multiplied by single digits, i.e. only their
    /// residues mod `p_i` matter. Sets `t` and `t + p_i` then coincide, so
    /// the family is only complementary when all exponents are 1.
    Literal,
    /// Additionally couples the higher base-`p_i` digits of `r_i` and `x_i`
    /// through `(lambda/p_i) * sum_{l>=2} r_{i,l} x_{i,l}` (likewise on the
    /// column side). Identical to `Literal` when all exponents are 1.
    #[default]
    DigitCoupled,
}

/// All free choices of a construction on top of its [`ConstructionParams`].
///
/// Permutations are stored 1-based, as written in configuration files:
/// `row_perms[i][e - 1] = pi_i(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorConfig {
    params: ConstructionParams,
    row_perms: Vec<Vec<usize>>,
    col_perms: Vec<Vec<usize>>,
    row_linear: Vec<Vec<u64>>,
    col_linear: Vec<Vec<u64>>,
    theta_offsets: Vec<u64>,
    coupling: ExponentCoupling,
}

impl GeneratorConfig {
    /// Identity permutations, zero coefficients and zero offsets.
    ///
    /// Logs a warning when a prime base occurs in more than one block.
    pub fn new(params: ConstructionParams) -> Self {
        let repeated = params.repeated_primes();
        if !repeated.is_empty() {
            log::warn!("block bases {repeated:?} occur more than once");
        }
        GeneratorConfig::quiet(params)
    }

    /// [`GeneratorConfig::new`] without the repeated-prime warning.
    pub(crate) fn quiet(params: ConstructionParams) -> Self {
        let perms = |side| {
            params
                .spec
                .blocks(side)
                .iter()
                .map(|b| (1..=b.digits()).collect())
                .collect()
        };
        let zeros = |side| params.spec.blocks(side).iter().map(|b| vec![0; b.digits()]).collect();
        GeneratorConfig {
            row_perms: perms(Side::Row),
            col_perms: perms(Side::Col),
            row_linear: zeros(Side::Row),
            col_linear: zeros(Side::Col),
            theta_offsets: vec![0; params.alpha() as usize],
            coupling: ExponentCoupling::default(),
            params,
        }
    }

    /// Random permutations, linear coefficients and offsets.
    pub fn random(params: ConstructionParams, rng: &mut impl Rng) -> Self {
        let mut cfg = GeneratorConfig::new(params);
        let lambda = cfg.lambda();
        for perm in cfg.row_perms.iter_mut().chain(cfg.col_perms.iter_mut()) {
            perm.shuffle(rng);
        }
        for c in cfg
            .row_linear
            .iter_mut()
            .chain(cfg.col_linear.iter_mut())
            .flatten()
            .chain(cfg.theta_offsets.iter_mut())
        {
            *c = rng.gen_range(0..lambda);
        }
        cfg
    }

    pub fn with_permutation(mut self, side: Side, block: usize, perm: Vec<usize>) -> Result<Self> {
        let (perms, name) = match side {
            Side::Row => (&mut self.row_perms, "row_perms"),
            Side::Col => (&mut self.col_perms, "col_perms"),
        };
        let path = format!("{name}[{block}]");
        let slot = perms
            .get_mut(block)
            .ok_or_else(|| Error::config(&path, "no such block"))?;
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (1..=slot.len()).collect::<Vec<_>>() {
            return Err(Error::config(
                path,
                format!("{perm:?} is not a permutation of 1..={}", slot.len()),
            ));
        }
        *slot = perm;
        Ok(self)
    }

    pub fn with_linear(mut self, side: Side, block: usize, coeffs: Vec<u64>) -> Result<Self> {
        let lambda = self.lambda();
        let (lin, name) = match side {
            Side::Row => (&mut self.row_linear, "row_linear"),
            Side::Col => (&mut self.col_linear, "col_linear"),
        };
        let path = format!("{name}[{block}]");
        let slot = lin
            .get_mut(block)
            .ok_or_else(|| Error::config(&path, "no such block"))?;
        if coeffs.len() != slot.len() {
            return Err(Error::config(
                path,
                format!("expected {} coefficients, got {}", slot.len(), coeffs.len()),
            ));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= lambda) {
            return Err(Error::config(
                path,
                format!("coefficient {c} not below lambda = {lambda}"),
            ));
        }
        *slot = coeffs;
        Ok(self)
    }

    /// Sets `d_theta` for every theta in canonical order.
    pub fn with_theta_offsets(mut self, offsets: Vec<u64>) -> Result<Self> {
        let lambda = self.lambda();
        if offsets.len() != self.theta_offsets.len() {
            return Err(Error::config(
                "theta_offsets",
                format!("expected {} offsets, got {}", self.theta_offsets.len(), offsets.len()),
            ));
        }
        if let Some(c) = offsets.iter().find(|&&c| c >= lambda) {
            return Err(Error::config(
                "theta_offsets",
                format!("offset {c} not below lambda = {lambda}"),
            ));
        }
        self.theta_offsets = offsets;
        Ok(self)
    }

    pub fn with_coupling(mut self, coupling: ExponentCoupling) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn spec(&self) -> &RadixSpec {
        &self.params.spec
    }

    pub fn lambda(&self) -> u64 {
        self.params.lambda()
    }

    pub fn delta(&self) -> u64 {
        self.params.delta()
    }

    pub fn permutations(&self, side: Side) -> &[Vec<usize>] {
        match side {
            Side::Row => &self.row_perms,
            Side::Col => &self.col_perms,
        }
    }

    pub fn linear(&self, side: Side) -> &[Vec<u64>] {
        match side {
            Side::Row => &self.row_linear,
            Side::Col => &self.col_linear,
        }
    }

    pub fn theta_offsets(&self) -> &[u64] {
        &self.theta_offsets
    }

    pub fn coupling(&self) -> ExponentCoupling {
        self.coupling
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed_radix::RadixBlock;

    fn params(row: &[(u64, usize, u32)], col: &[(u64, usize, u32)], rp: &[u64], cp: &[u64]) -> ConstructionParams {
        let spec = RadixSpec::new(
            row.iter().map(|&(p, m, _)| RadixBlock::new(p, m).unwrap()).collect(),
            col.iter().map(|&(q, n, _)| RadixBlock::new(q, n).unwrap()).collect(),
            rp.to_vec(),
            cp.to_vec(),
        )
        .unwrap();
        ConstructionParams::new(
            spec,
            row.iter().map(|r| r.2).collect(),
            col.iter().map(|c| c.2).collect(),
        )
        .unwrap()
    }

    #[test]
    fn example_one_dimensions() {
        let p = params(&[(2, 2, 1)], &[(3, 2, 1)], &[3], &[2]);
        assert_eq!(p.alpha(), 6);
        assert_eq!(p.alpha1(), 36);
        assert_eq!((p.rows(), p.cols()), (12, 18));
        assert_eq!((p.z1(), p.z2()), (4, 9));
        assert_eq!((p.lambda(), p.delta()), (6, 6));
    }

    #[test]
    fn theta_enumeration_is_last_fastest() {
        let p = params(&[(2, 1, 1)], &[(3, 1, 1)], &[], &[]);
        let all = ThetaIndex::all(&p);
        assert_eq!(all.len(), 6);
        assert_eq!(
            all[1],
            ThetaIndex {
                row: vec![0],
                col: vec![1]
            }
        );
        assert_eq!(
            all[3],
            ThetaIndex {
                row: vec![1],
                col: vec![0]
            }
        );
        for (i, th) in all.iter().enumerate() {
            assert_eq!(th.rank(&p), i);
            th.check(&p).unwrap();
        }
        assert!(ThetaIndex {
            row: vec![2],
            col: vec![0]
        }
        .check(&p)
        .is_err());
    }

    #[test]
    fn coset_enumeration_follows_primed_bounds() {
        let p = params(&[(2, 2, 1)], &[(3, 2, 1)], &[3], &[2]);
        let all = CosetIndex::all(p.spec());
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], CosetIndex { c: vec![0], d: vec![1] });
        assert_eq!(all[5], CosetIndex { c: vec![2], d: vec![1] });
        assert!(CosetIndex { c: vec![3], d: vec![0] }.check(p.spec()).is_err());
        assert!(CosetIndex { c: vec![2], d: vec![1] }.check(p.spec()).is_ok());
    }

    #[test]
    fn builder_validation() {
        let p = params(&[(2, 2, 1)], &[(3, 2, 1)], &[3], &[2]);
        let cfg = GeneratorConfig::new(p);
        assert!(cfg.clone().with_permutation(Side::Row, 0, vec![2, 1]).is_ok());
        assert!(cfg.clone().with_permutation(Side::Row, 0, vec![1, 1]).is_err());
        assert!(cfg.clone().with_permutation(Side::Row, 1, vec![1, 2]).is_err());
        assert!(cfg.clone().with_linear(Side::Col, 0, vec![2, 6]).is_err());
        assert!(cfg.clone().with_linear(Side::Col, 0, vec![2]).is_err());
        assert!(cfg.clone().with_theta_offsets(vec![0; 5]).is_err());
        assert!(cfg.with_theta_offsets(vec![5; 6]).is_ok());
    }

    #[test]
    fn exponent_zero_rejected() {
        let spec = RadixSpec::new(
            vec![RadixBlock::new(2, 1).unwrap()],
            vec![RadixBlock::new(3, 1).unwrap()],
            vec![],
            vec![],
        )
        .unwrap();
        assert!(ConstructionParams::new(spec.clone(), vec![0], vec![1]).is_err());
        assert!(ConstructionParams::new(spec, vec![1, 1], vec![1]).is_err());
    }

    #[test]
    fn repeated_primes_detected() {
        let p = params(&[(2, 1, 1), (3, 1, 1)], &[(2, 1, 1)], &[], &[]);
        assert_eq!(p.repeated_primes(), vec![2]);
    }
}
