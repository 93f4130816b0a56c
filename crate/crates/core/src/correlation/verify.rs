//! Exhaustive checks of the zero-correlation-zone and complete-complementary
//! properties over every set pair and every in-zone shift.

use std::cmp::Ordering;

use num_complex::Complex64;
use rayon::prelude::*;

use super::exact::{ExactField, ExactValue};
use super::{diff_histogram, window_sum, Window};
use crate::codeset::{unit_roots, CodeKind, CodeSet, PhaseArray};

/// How set correlations are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Sum every overlapping product at every shift.
    #[default]
    Direct,
    /// For arrays whose phase is `u[row] + v[col]` (checked exactly, entry by
    /// entry) the 2D correlation factors into a row and a column 1D
    /// correlation. Falls back to `Direct` if any array does not factor.
    Separable,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Direct => "direct",
            Engine::Separable => "separable",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Absolute tolerance; `None` means `1e-9 * flock * l1 * l2`.
    pub tol: Option<f64>,
    /// Also decide every zero exactly in `Z[w_delta]`.
    pub exact: bool,
    pub engine: Engine,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Keep every violation, not just the worst per category.
    pub verbose: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: None,
            exact: false,
            engine: Engine::Direct,
            threads: None,
            verbose: false,
        }
    }
}

/// A set pair and shift together with its correlation magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Offender {
    pub sets: (usize, usize),
    pub shift: (i64, i64),
    pub magnitude: f64,
}

impl Offender {
    /// Larger magnitude wins; ties go to the smaller shift, then the smaller pair.
    fn outranks(&self, other: &Offender) -> bool {
        match self.magnitude.total_cmp(&other.magnitude) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => (self.shift, self.sets) < (other.shift, other.sets),
        }
    }
}

fn pick(a: Option<Offender>, b: Option<Offender>) -> Option<Offender> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.outranks(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExactSummary {
    /// Every same-set peak equals `flock * l1 * l2` exactly.
    pub peaks_exact: bool,
    pub nonzero_auto: u64,
    pub nonzero_cross: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub kind: CodeKind,
    pub sets: usize,
    pub flock: usize,
    pub rows: usize,
    pub cols: usize,
    pub z1: usize,
    pub z2: usize,
    pub modulus: u32,
    pub tolerance: f64,
    pub engine: Engine,
    pub peak_expected: f64,
    /// Magnitude of the same-set zero-shift value that deviates most from the expected peak.
    pub peak_observed: f64,
    pub peak_deviation: f64,
    pub peak_set: usize,
    /// Worst same-set value over nonzero in-zone shifts.
    pub worst_auto: Option<Offender>,
    /// Worst value over distinct set pairs and in-zone shifts.
    pub worst_cross: Option<Offender>,
    /// Number of (ordered set pair, shift) values evaluated.
    pub evaluations: u64,
    pub exact: Option<ExactSummary>,
    /// Structural problems (wrong set count for a CCC, zone larger than the arrays).
    pub structural: Vec<String>,
    pub violations: Vec<Offender>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn worst_auto_magnitude(&self) -> f64 {
        self.worst_auto.map_or(0.0, |o| o.magnitude)
    }

    pub fn worst_cross_magnitude(&self) -> f64 {
        self.worst_cross.map_or(0.0, |o| o.magnitude)
    }
}

#[derive(Debug, Default)]
struct Tally {
    peak: Option<(f64, f64, usize)>,
    worst_auto: Option<Offender>,
    worst_cross: Option<Offender>,
    evaluations: u64,
    exact_peak_failures: u64,
    nonzero_auto: u64,
    nonzero_cross: u64,
    violations: Vec<Offender>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.peak = match (self.peak, other.peak) {
            (Some(a), Some(b)) => Some(match a.0.total_cmp(&b.0) {
                Ordering::Greater => a,
                Ordering::Less => b,
                Ordering::Equal => {
                    if a.2 <= b.2 {
                        a
                    } else {
                        b
                    }
                }
            }),
            (a, None) => a,
            (None, b) => b,
        };
        self.worst_auto = pick(self.worst_auto, other.worst_auto);
        self.worst_cross = pick(self.worst_cross, other.worst_cross);
        self.evaluations += other.evaluations;
        self.exact_peak_failures += other.exact_peak_failures;
        self.nonzero_auto += other.nonzero_auto;
        self.nonzero_cross += other.nonzero_cross;
        self.violations.extend(other.violations);
        self
    }
}

/// One evaluated shift of a set pair: float value and, in exact mode, the
/// coefficient vector over `Z[w_delta]`.
struct ShiftValue {
    shift: (i64, i64),
    value: Complex64,
    exact: Option<Vec<i64>>,
}

/// Row and column phase vectors of a separable array, as single-row arrays.
struct Factors {
    row: PhaseArray,
    col: PhaseArray,
}

fn factor(a: &PhaseArray) -> Option<Factors> {
    let n = a.modulus();
    let base = a.get(0, 0);
    let u: Vec<u32> = (0..a.rows()).map(|g| a.get(g, 0)).collect();
    let v: Vec<u32> = a.row(0).iter().map(|&e| (e + n - base) % n).collect();
    for (g, &ug) in u.iter().enumerate() {
        for (&e, &vi) in a.row(g).iter().zip(&v) {
            if e != (ug + vi) % n {
                return None;
            }
        }
    }
    Some(Factors {
        row: PhaseArray::new(1, u.len(), n, u).ok()?,
        col: PhaseArray::new(1, v.len(), n, v).ok()?,
    })
}

struct Context<'a> {
    cs: &'a CodeSet,
    z1: usize,
    z2: usize,
    exact: bool,
    roots: Vec<Complex64>,
    factors: Option<Vec<Vec<Factors>>>,
}

impl Context<'_> {
    fn shifts(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let z2 = self.z2 as i64;
        (0..self.z1 as i64).flat_map(move |t1| (1 - z2..z2).map(move |t2| (t1, t2)))
    }

    fn pair_values(&self, k: usize, kk: usize) -> Vec<ShiftValue> {
        match &self.factors {
            Some(f) => self.pair_separable(&f[k], &f[kk]),
            None => self.pair_direct(self.cs.set(k), self.cs.set(kk)),
        }
    }

    fn pair_direct(&self, set_a: &[PhaseArray], set_b: &[PhaseArray]) -> Vec<ShiftValue> {
        let meta = self.cs.meta();
        let n = meta.modulus as usize;
        self.shifts()
            .map(|shift| {
                let w = Window::new(meta.rows, meta.cols, shift.0, shift.1).expect("zone fits the arrays");
                let value = set_a
                    .iter()
                    .zip(set_b)
                    .map(|(a, b)| window_sum(a, b, &w, &self.roots))
                    .sum();
                let exact = self.exact.then(|| {
                    let mut hist = vec![0i64; n];
                    for (a, b) in set_a.iter().zip(set_b) {
                        diff_histogram(a, b, &w, &mut hist);
                    }
                    hist
                });
                ShiftValue { shift, value, exact }
            })
            .collect()
    }

    fn pair_separable(&self, set_a: &[Factors], set_b: &[Factors]) -> Vec<ShiftValue> {
        let meta = self.cs.meta();
        let n = meta.modulus as usize;
        let z2 = self.z2 as i64;
        let line = |a: &PhaseArray, b: &PhaseArray, tau: i64| {
            let w = Window::new(1, a.cols(), 0, tau).expect("shift fits the line");
            let value = window_sum(a, b, &w, &self.roots);
            let exact = self.exact.then(|| {
                let mut hist = vec![0i64; n];
                diff_histogram(a, b, &w, &mut hist);
                ExactValue::from_coeffs(hist)
            });
            (value, exact)
        };
        let per_array: Vec<(Vec<_>, Vec<_>)> = set_a
            .iter()
            .zip(set_b)
            .map(|(fa, fb)| {
                let rows = (0..self.z1 as i64).map(|t| line(&fa.row, &fb.row, t)).collect();
                let cols = (1 - z2..z2).map(|t| line(&fa.col, &fb.col, t)).collect();
                (rows, cols)
            })
            .collect();
        self.shifts()
            .map(|shift| {
                let (ri, ci) = (shift.0 as usize, (shift.1 + z2 - 1) as usize);
                let mut value = Complex64::new(0.0, 0.0);
                let mut exact = self.exact.then(|| ExactValue::zero(meta.modulus));
                for (rows, cols) in &per_array {
                    value += rows[ri].0 * cols[ci].0;
                    if let (Some(acc), Some(r), Some(c)) = (exact.as_mut(), &rows[ri].1, &cols[ci].1) {
                        acc.add_assign(&r.mul(c));
                    }
                }
                ShiftValue {
                    shift,
                    value,
                    exact: exact.map(|e| e.coeffs().to_vec()),
                }
            })
            .collect()
    }
}

/// Checks that the set correlations vanish for every pair of sets and every
/// shift with `|tau1| < z1`, `|tau2| < z2`, except the same-set zero shift,
/// which must equal `flock * l1 * l2`.
///
/// Negative `tau1` is covered through `C(A, B)(-tau) = conj(C(B, A)(tau))`:
/// every ordered pair is evaluated for `0 <= tau1 < z1`.
pub fn verify_zcacs(cs: &CodeSet, z1: usize, z2: usize, opts: &VerifyOptions) -> VerificationReport {
    let run = || verify_inner(cs, z1, z2, opts);
    match opts.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(e) => {
                log::warn!("could not build a {n}-thread pool ({e}); using the global pool");
                run()
            }
        },
        None => run(),
    }
}

fn verify_inner(cs: &CodeSet, z1: usize, z2: usize, opts: &VerifyOptions) -> VerificationReport {
    let meta = *cs.meta();
    let peak_expected = (meta.flock * meta.rows * meta.cols) as f64;
    let tolerance = opts.tol.unwrap_or(1e-9 * peak_expected);
    let mut structural = Vec::new();
    if z1 == 0 || z2 == 0 || z1 > meta.rows || z2 > meta.cols {
        structural.push(format!(
            "zone {z1}x{z2} does not fit {}x{} arrays",
            meta.rows, meta.cols
        ));
    }
    let mut report = VerificationReport {
        kind: meta.kind,
        sets: meta.sets,
        flock: meta.flock,
        rows: meta.rows,
        cols: meta.cols,
        z1,
        z2,
        modulus: meta.modulus,
        tolerance,
        engine: opts.engine,
        peak_expected,
        peak_observed: 0.0,
        peak_deviation: 0.0,
        peak_set: 0,
        worst_auto: None,
        worst_cross: None,
        evaluations: 0,
        exact: None,
        structural,
        violations: Vec::new(),
        pass: false,
    };
    if !report.structural.is_empty() {
        return report;
    }

    let factors = match opts.engine {
        Engine::Direct => None,
        Engine::Separable => {
            let f: Option<Vec<Vec<Factors>>> = cs.family().iter().map(|set| set.iter().map(factor).collect()).collect();
            if f.is_none() {
                log::info!("arrays do not factor into row and column phases; using the direct engine");
                report.engine = Engine::Direct;
            }
            f
        }
    };
    let ctx = Context {
        cs,
        z1,
        z2,
        exact: opts.exact,
        roots: unit_roots(meta.modulus),
        factors,
    };
    let field = opts.exact.then(|| ExactField::new(meta.modulus));
    let flock_peak = (meta.flock * meta.rows * meta.cols) as i64;

    let tally = (0..meta.sets)
        .into_par_iter()
        .map(|k| {
            let mut t = Tally::default();
            for kk in 0..meta.sets {
                for sv in ctx.pair_values(k, kk) {
                    t.evaluations += 1;
                    let magnitude = sv.value.norm();
                    if k == kk && sv.shift == (0, 0) {
                        let dev = (sv.value - Complex64::new(peak_expected, 0.0)).norm();
                        t = t.merge(Tally {
                            peak: Some((dev, magnitude, k)),
                            ..Tally::default()
                        });
                        if let (Some(field), Some(mut coeffs)) = (&field, sv.exact) {
                            coeffs[0] -= flock_peak;
                            if !field.is_zero(&coeffs) {
                                t.exact_peak_failures += 1;
                            }
                        }
                        continue;
                    }
                    let off = Offender {
                        sets: (k, kk),
                        shift: sv.shift,
                        magnitude,
                    };
                    let exact_nonzero = match (&field, &sv.exact) {
                        (Some(field), Some(coeffs)) => !field.is_zero(coeffs),
                        _ => false,
                    };
                    if k == kk {
                        t.worst_auto = pick(t.worst_auto, Some(off));
                        t.nonzero_auto += exact_nonzero as u64;
                    } else {
                        t.worst_cross = pick(t.worst_cross, Some(off));
                        t.nonzero_cross += exact_nonzero as u64;
                    }
                    if opts.verbose && (magnitude > tolerance || exact_nonzero) {
                        t.violations.push(off);
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    if let Some((dev, observed, set)) = tally.peak {
        report.peak_deviation = dev;
        report.peak_observed = observed;
        report.peak_set = set;
    } else {
        report.peak_observed = peak_expected;
    }
    report.worst_auto = tally.worst_auto;
    report.worst_cross = tally.worst_cross;
    report.evaluations = tally.evaluations;
    let mut violations = tally.violations;
    violations.sort_by_key(|a| (a.sets, a.shift));
    report.violations = violations;
    report.exact = opts.exact.then_some(ExactSummary {
        peaks_exact: tally.exact_peak_failures == 0,
        nonzero_auto: tally.nonzero_auto,
        nonzero_cross: tally.nonzero_cross,
    });
    let exact_ok = report
        .exact
        .is_none_or(|e| e.peaks_exact && e.nonzero_auto == 0 && e.nonzero_cross == 0);
    report.pass = report.peak_deviation <= tolerance
        && report.worst_auto_magnitude() <= tolerance
        && report.worst_cross_magnitude() <= tolerance
        && exact_ok;
    report
}

/// Complete complementary check: zone equal to the full array and as many
/// sets as arrays per set.
pub fn verify_ccc(cs: &CodeSet, opts: &VerifyOptions) -> VerificationReport {
    let meta = cs.meta();
    let mut report = verify_zcacs(cs, meta.rows, meta.cols, opts);
    if meta.sets != meta.flock {
        report
            .structural
            .push(format!("{} sets but {} arrays per set", meta.sets, meta.flock));
        report.pass = false;
    }
    report
}
