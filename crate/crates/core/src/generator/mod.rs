//! Phase functions of the construction and assembly of code sets.
//!
//! Arrays are indexed `(row, col) = (gamma_hat, mu_hat)`: rows run over the
//! extended p-side index (length `l1`), columns over the extended q-side index
//! (length `l2`), so the zone `(z1, z2) = (m, n)` attaches to `(rows, cols)`.

mod config;

pub use config::{ConstructionParams, CosetIndex, ExponentCoupling, GeneratorConfig, TIndex, ThetaIndex};

use rayon::prelude::*;

use crate::codeset::{CodeKind, CodeSet, CodeSetParams, PhaseArray};
use crate::correlation::{optimality, Optimality};
use crate::error::{Error, Result};
use crate::mixed_radix::{decompose, radix_digits, DigitVector, Side};

/// Quadratic chain plus linear terms of one side of `f`, mod `lambda`.
fn side_f(cfg: &GeneratorConfig, side: Side, digits: &[Vec<u64>]) -> u64 {
    let lambda = cfg.lambda();
    let blocks = cfg.spec().blocks(side);
    let perms = cfg.permutations(side);
    let linear = cfg.linear(side);
    let mut acc = 0;
    for (i, block) in blocks.iter().enumerate() {
        let g = &digits[i];
        let perm = &perms[i];
        let scale = lambda / block.base();
        for e in 0..block.digits() - 1 {
            acc += scale * g[perm[e] - 1] * g[perm[e + 1] - 1] % lambda;
        }
        for (c, d) in linear[i].iter().zip(g) {
            acc += c * d % lambda;
        }
    }
    acc % lambda
}

/// Digits `g_{i, pi_i(1)}` and `g_{i, pi_i(m_i)}` of every block on one side.
fn end_digits(cfg: &GeneratorConfig, side: Side, digits: &[Vec<u64>]) -> Vec<(u64, u64)> {
    cfg.permutations(side)
        .iter()
        .zip(digits)
        .map(|(perm, g)| (g[perm[0] - 1], g[perm[perm.len() - 1] - 1]))
        .collect()
}

/// `sum_i (modulus/p_i) * (first_i * flock_i + last_i * set_i)` on one side.
fn side_index_terms(
    cfg: &GeneratorConfig,
    side: Side,
    ends: &[(u64, u64)],
    flock: &[u64],
    set: &[u64],
    modulus: u64,
) -> u64 {
    let mut acc = 0;
    for (i, block) in cfg.spec().blocks(side).iter().enumerate() {
        let scale = modulus / block.base();
        let (first, last) = ends[i];
        acc += scale * ((first * flock[i] + last * set[i]) % block.base()) % modulus;
    }
    acc % modulus
}

/// Coupling of the higher base-p digits of the flock and set indices,
/// scaled into `Z_modulus`. Zero under [`ExponentCoupling::Literal`].
fn coupling_term(cfg: &GeneratorConfig, theta: &ThetaIndex, t: &TIndex, modulus: u64) -> u64 {
    if cfg.coupling() == ExponentCoupling::Literal {
        return 0;
    }
    let params = cfg.params();
    let mut acc = 0;
    for (side, flock, set) in [(Side::Row, &theta.row, &t.row), (Side::Col, &theta.col, &t.col)] {
        for (i, (block, &k)) in params
            .spec()
            .blocks(side)
            .iter()
            .zip(params.exponents(side))
            .enumerate()
        {
            let p = block.base();
            if p == 1 || k < 2 {
                continue;
            }
            let bases = vec![p; k as usize];
            let fd = radix_digits(flock[i], &bases);
            let sd = radix_digits(set[i], &bases);
            let dot: u64 = fd[1..].iter().zip(&sd[1..]).map(|(a, b)| a * b).sum();
            acc += (modulus / p) * (dot % p) % modulus;
        }
    }
    acc % modulus
}

/// Primed coset terms `sum c_i (modulus/p'_i) g'_i` on one side.
fn coset_terms(bases: &[u64], coeffs: &[u64], primed: &[u64], modulus: u64) -> u64 {
    bases
        .iter()
        .zip(coeffs)
        .zip(primed)
        .map(|((&b, &c), &g)| (modulus / b) * (c * g % b) % modulus)
        .sum::<u64>()
        % modulus
}

fn check_base_inputs(cfg: &GeneratorConfig, gamma: &DigitVector, mu: &DigitVector) -> Result<()> {
    gamma.check_shape(cfg.spec(), Side::Row)?;
    mu.check_shape(cfg.spec(), Side::Col)
}

fn check_extended_inputs(cfg: &GeneratorConfig, gamma: &DigitVector, mu: &DigitVector) -> Result<()> {
    check_base_inputs(cfg, gamma, mu)?;
    for (v, side) in [(gamma, Side::Row), (mu, Side::Col)] {
        if v.primed.len() != cfg.spec().primed(side).len() {
            return Err(Error::shape(format!(
                "{side:?} input needs {} primed digits, got {}",
                cfg.spec().primed(side).len(),
                v.primed.len()
            )));
        }
    }
    Ok(())
}

/// The quadratic phase function `f`, mod `lambda`.
pub fn eval_f(gamma: &DigitVector, mu: &DigitVector, cfg: &GeneratorConfig) -> Result<u64> {
    check_base_inputs(cfg, gamma, mu)?;
    Ok((side_f(cfg, Side::Row, &gamma.blocks) + side_f(cfg, Side::Col, &mu.blocks)) % cfg.lambda())
}

/// `a_t^theta`: `f` plus the flock (`theta`) and set (`t`) terms and `d_theta`, mod `lambda`.
pub fn eval_a(
    theta: &ThetaIndex,
    t: &TIndex,
    gamma: &DigitVector,
    mu: &DigitVector,
    cfg: &GeneratorConfig,
) -> Result<u64> {
    theta.check(cfg.params())?;
    t.check(cfg.params())?;
    let lambda = cfg.lambda();
    let f = eval_f(gamma, mu, cfg)?;
    let row = side_index_terms(
        cfg,
        Side::Row,
        &end_digits(cfg, Side::Row, &gamma.blocks),
        &theta.row,
        &t.row,
        lambda,
    );
    let col = side_index_terms(
        cfg,
        Side::Col,
        &end_digits(cfg, Side::Col, &mu.blocks),
        &theta.col,
        &t.col,
        lambda,
    );
    let offset = cfg.theta_offsets()[theta.rank(cfg.params())];
    Ok((f + row + col + coupling_term(cfg, theta, t, lambda) + offset) % lambda)
}

/// `M^{c,d}`: `f` lifted to `Z_delta` plus the coset terms.
pub fn eval_m(coset: &CosetIndex, ext_gamma: &DigitVector, ext_mu: &DigitVector, cfg: &GeneratorConfig) -> Result<u64> {
    coset.check(cfg.spec())?;
    check_extended_inputs(cfg, ext_gamma, ext_mu)?;
    let delta = cfg.delta();
    let f = eval_f(ext_gamma, ext_mu, cfg)?;
    let lift = (delta / cfg.lambda()) * f % delta;
    let c = coset_terms(cfg.spec().primed(Side::Row), &coset.c, &ext_gamma.primed, delta);
    let d = coset_terms(cfg.spec().primed(Side::Col), &coset.d, &ext_mu.primed, delta);
    Ok((lift + c + d) % delta)
}

/// `b_t^{theta,c,d}` expanded directly over `Z_delta`.
///
/// Agrees with `(delta/lambda) * eval_a + coset terms`; the two routes are
/// computed independently and compared in the tests.
pub fn eval_b(
    theta: &ThetaIndex,
    t: &TIndex,
    coset: &CosetIndex,
    ext_gamma: &DigitVector,
    ext_mu: &DigitVector,
    cfg: &GeneratorConfig,
) -> Result<u64> {
    theta.check(cfg.params())?;
    t.check(cfg.params())?;
    let delta = cfg.delta();
    let m = eval_m(coset, ext_gamma, ext_mu, cfg)?;
    let row = side_index_terms(
        cfg,
        Side::Row,
        &end_digits(cfg, Side::Row, &ext_gamma.blocks),
        &theta.row,
        &t.row,
        delta,
    );
    let col = side_index_terms(
        cfg,
        Side::Col,
        &end_digits(cfg, Side::Col, &ext_mu.blocks),
        &theta.col,
        &t.col,
        delta,
    );
    let offset = (delta / cfg.lambda()) * cfg.theta_offsets()[theta.rank(cfg.params())] % delta;
    Ok((m + row + col + coupling_term(cfg, theta, t, delta) + offset) % delta)
}

/// Extended digit vectors for every row index and every column index.
fn index_digits(cfg: &GeneratorConfig) -> (Vec<DigitVector>, Vec<DigitVector>) {
    let p = cfg.params();
    let rows = (0..p.rows())
        .map(|g| decompose(g, cfg.spec(), Side::Row, true).expect("index within span"))
        .collect();
    let cols = (0..p.cols())
        .map(|u| decompose(u, cfg.spec(), Side::Col, true).expect("index within span"))
        .collect();
    (rows, cols)
}

/// Fills an `l1 x l2` array over `Z_delta` with `evaluator(gamma_hat, mu_hat)`,
/// passing the extended digit vectors of the row and column index.
pub fn materialize_array(
    cfg: &GeneratorConfig,
    mut evaluator: impl FnMut(&DigitVector, &DigitVector) -> u64,
) -> PhaseArray {
    let (rows, cols) = index_digits(cfg);
    PhaseArray::from_fn(rows.len(), cols.len(), cfg.delta() as u32, |r, c| {
        evaluator(&rows[r], &cols[c])
    })
}

/// Parameters of the family a config produces, without building arrays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub code: CodeSetParams,
    pub lambda: u64,
    pub alpha: u64,
    pub alpha1: u64,
    pub optimality: Optimality,
}

impl DerivedParams {
    pub fn optimal(&self) -> bool {
        self.optimality.optimal
    }
}

/// CCC when the primed part is trivial, 1D-ZCCS when the row side is
/// trivial, 2D-ZCACS otherwise.
pub fn detect_kind(cfg: &GeneratorConfig) -> CodeKind {
    let p = cfg.params();
    if p.primed_trivial() {
        CodeKind::Ccc
    } else if p.row_side_trivial() {
        CodeKind::Zccs1d
    } else {
        CodeKind::Zcacs2d
    }
}

fn params_for(cfg: &GeneratorConfig, kind: CodeKind) -> DerivedParams {
    let p = cfg.params();
    let code = CodeSetParams {
        kind,
        sets: p.alpha1() as usize,
        flock: p.alpha() as usize,
        rows: p.rows() as usize,
        cols: p.cols() as usize,
        z1: p.z1() as usize,
        z2: p.z2() as usize,
        modulus: p.delta() as u32,
    };
    let optimality = optimality(&code).expect("derived parameters are positive and fit");
    DerivedParams {
        code,
        lambda: p.lambda(),
        alpha: p.alpha(),
        alpha1: p.alpha1(),
        optimality,
    }
}

pub fn derive_params(cfg: &GeneratorConfig) -> DerivedParams {
    params_for(cfg, detect_kind(cfg))
}

/// Row-side or column-side contribution of every index for one flock/set/coset choice.
struct SideTables {
    base_f: Vec<u64>,
    ends: Vec<Vec<(u64, u64)>>,
    primed: Vec<Vec<u64>>,
}

impl SideTables {
    fn new(cfg: &GeneratorConfig, side: Side, digits: &[DigitVector]) -> Self {
        SideTables {
            base_f: digits.iter().map(|d| side_f(cfg, side, &d.blocks)).collect(),
            ends: digits.iter().map(|d| end_digits(cfg, side, &d.blocks)).collect(),
            primed: digits.iter().map(|d| d.primed.clone()).collect(),
        }
    }

    fn phases(&self, cfg: &GeneratorConfig, side: Side, flock: &[u64], set: &[u64], coset: &[u64]) -> Vec<u64> {
        let delta = cfg.delta();
        let lift = delta / cfg.lambda();
        let primed_bases = cfg.spec().primed(side);
        (0..self.base_f.len())
            .map(|i| {
                lift * self.base_f[i] % delta
                    + side_index_terms(cfg, side, &self.ends[i], flock, set, delta)
                    + coset_terms(primed_bases, coset, &self.primed[i], delta)
            })
            .collect()
    }
}

fn assemble(cfg: &GeneratorConfig, kind: CodeKind) -> CodeSet {
    let derived = params_for(cfg, kind);
    let delta = cfg.delta();
    let (row_digits, col_digits) = index_digits(cfg);
    let rows = SideTables::new(cfg, Side::Row, &row_digits);
    let cols = SideTables::new(cfg, Side::Col, &col_digits);
    let thetas = ThetaIndex::all(cfg.params());
    let cosets = CosetIndex::all(cfg.spec());
    let keys: Vec<(TIndex, CosetIndex)> = thetas
        .iter()
        .flat_map(|t| cosets.iter().map(move |c| (t.clone(), c.clone())))
        .collect();
    let lift = delta / cfg.lambda();
    let family = keys
        .par_iter()
        .map(|(t, coset)| {
            thetas
                .iter()
                .enumerate()
                .map(|(rank, theta)| {
                    let r = rows.phases(cfg, Side::Row, &theta.row, &t.row, &coset.c);
                    let c = cols.phases(cfg, Side::Col, &theta.col, &t.col, &coset.d);
                    let k = lift * cfg.theta_offsets()[rank] + coupling_term(cfg, theta, t, delta);
                    PhaseArray::from_fn(r.len(), c.len(), delta as u32, |g, u| r[g] + c[u] + k)
                })
                .collect()
        })
        .collect();
    CodeSet::new(family, derived.code, Some(cfg.clone())).expect("assembled family matches its parameters")
}

/// The complete complementary code family (no primed extension).
pub fn build_ccc(cfg: &GeneratorConfig) -> Result<CodeSet> {
    if !cfg.params().primed_trivial() {
        return Err(Error::config(
            "row_primed/col_primed",
            "a CCC needs a trivial primed part; use build_zcacs for extended families",
        ));
    }
    Ok(assemble(cfg, CodeKind::Ccc))
}

/// The extended family: `alpha1` sets of `alpha` arrays of size `l1 x l2`
/// with zone `m x n`.
pub fn build_zcacs(cfg: &GeneratorConfig) -> Result<CodeSet> {
    if cfg.spec().primed(Side::Col).is_empty() {
        return Err(Error::config(
            "col_primed",
            "at least one column primed base is required",
        ));
    }
    Ok(assemble(cfg, CodeKind::Zcacs2d))
}

/// Single-row family for configs whose row side is entirely base 1.
pub fn reduce_to_1d(cfg: &GeneratorConfig) -> Result<CodeSet> {
    if !cfg.params().row_side_trivial() {
        return Err(Error::config(
            "row_blocks",
            "1D reduction needs every row block and row primed base equal to 1",
        ));
    }
    Ok(assemble(cfg, CodeKind::Zccs1d))
}

/// Builds whichever family [`detect_kind`] selects.
pub fn build(cfg: &GeneratorConfig) -> CodeSet {
    assemble(cfg, detect_kind(cfg))
}
