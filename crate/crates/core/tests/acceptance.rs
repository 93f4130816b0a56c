//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::time::Instant;

use common::{clipped_accf, config_path, example_one, load, random_array, random_grid_config};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zcacs::cli::report::parse_key_values;
use zcacs::cli::run_with;
use zcacs::correlation::{accf_1d, accf_2d, accf_2d_exact, verify_ccc, verify_zcacs, Engine, VerifyOptions};
use zcacs::generator::{
    build, build_ccc, build_zcacs, derive_params, eval_a, eval_b, reduce_to_1d, CosetIndex, ThetaIndex,
};
use zcacs::mixed_radix::{compose, decompose, DigitVector, Side};
use zcacs::{CodeKind, GeneratorConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_opts() -> VerifyOptions {
    VerifyOptions {
        exact: true,
        ..VerifyOptions::default()
    }
}

fn example_one_reproduction() -> Outcome {
    let cs = build_zcacs(&example_one()).map_err(|e| e.to_string())?;
    let m = *cs.meta();
    ensure(
        (m.sets, m.flock, m.rows, m.cols, m.z1, m.z2, m.modulus) == (36, 6, 12, 18, 4, 9, 6),
        || format!("parameters {m:?}"),
    )?;
    let float = verify_zcacs(&cs, 4, 9, &VerifyOptions::default());
    ensure((float.tolerance - 1e-9 * 1296.0).abs() < 1e-15, || {
        format!("tolerance {}", float.tolerance)
    })?;
    ensure(float.pass, || format!("float verification failed: {float:?}"))?;
    // ordered pairs x shifts with 0 <= tau1 < 4, |tau2| < 9; negative tau1 by symmetry
    ensure(float.evaluations == 36 * 36 * 4 * 17, || {
        format!("{} evaluations", float.evaluations)
    })?;
    let exact = verify_zcacs(&cs, 4, 9, &exact_opts());
    let summary = exact.exact.ok_or("no exact summary")?;
    ensure(exact.pass && summary.peaks_exact, || {
        format!("exact verification failed: {summary:?}")
    })?;
    ensure(summary.nonzero_auto == 0 && summary.nonzero_cross == 0, || {
        format!("{summary:?}")
    })?;
    ensure(exact.peak_observed == 1296.0, || {
        format!("peak {}", exact.peak_observed)
    })?;
    let unordered = m.sets * (m.sets - 1) / 2;
    ensure(unordered == 630, || format!("{unordered} unordered pairs"))?;
    Ok(format!(
        "{}; peak 1296 exact; 630 set pairs zero (float worst {:.1e}, exact)",
        m,
        float.worst_cross_magnitude().max(float.worst_auto_magnitude())
    ))
}

fn optimality_equality() -> Outcome {
    let d = derive_params(&example_one());
    let o = d.optimality;
    let floor = d.code.flock * (d.code.rows / d.code.z1) * (d.code.cols / d.code.z2);
    ensure(
        d.code.sets == 36 && floor == 36 && o.optimal_sets == 36 && o.optimal,
        || format!("{o:?}"),
    )?;
    Ok(format!(
        "36 = 6 * floor(12/4) * floor(18/9); bound {} <= {}",
        o.bound_lhs, o.bound_rhs
    ))
}

fn ccc_family() -> Outcome {
    let start = Instant::now();
    let cs = build_ccc(&load("ccc.toml")).map_err(|e| e.to_string())?;
    let m = *cs.meta();
    ensure(
        m.kind == CodeKind::Ccc && (m.sets, m.flock, m.rows, m.cols) == (6, 6, 2, 3),
        || format!("{m:?}"),
    )?;
    let r = verify_ccc(&cs, &exact_opts());
    let summary = r.exact.ok_or("no exact summary")?;
    ensure(
        r.pass && summary.peaks_exact && summary.nonzero_auto + summary.nonzero_cross == 0,
        || format!("{r:?}"),
    )?;
    ensure(r.evaluations == 36 * 2 * 5, || format!("{} evaluations", r.evaluations))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, || format!("took {secs:.2}s"))?;
    Ok(format!(
        "(6,6,2,3) CCC, all 36 ordered pairs and shifts exactly zero off-peak ({secs:.3}s)"
    ))
}

/// Sum over the flock of `accf_1d` for every set pair and `|tau| < z`.
fn one_dimensional_check(cs: &zcacs::CodeSet) -> Result<(), String> {
    let m = cs.meta();
    let peak = (m.flock * m.cols) as f64;
    for k in 0..m.sets {
        for kk in 0..m.sets {
            for tau in -(m.z2 as i64) + 1..m.z2 as i64 {
                let v: Complex64 = cs
                    .set(k)
                    .iter()
                    .zip(cs.set(kk))
                    .map(|(a, b)| accf_1d(a, b, tau).unwrap())
                    .sum();
                let want = if k == kk && tau == 0 { peak } else { 0.0 };
                if (v - Complex64::new(want, 0.0)).norm() > 1e-9 * peak {
                    return Err(format!("sets ({k},{kk}) tau {tau}: {v}"));
                }
            }
        }
    }
    Ok(())
}

fn one_dimensional_reductions() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (file, want) in [
        ("zccs_12_4.toml", (12, 4, 4, 12)),
        ("zccs_8_4.toml", (8, 4, 4, 8)),
        ("zcp_6_4.toml", (6, 4, 2, 12)),
    ] {
        let cs = reduce_to_1d(&load(file)).map_err(|e| e.to_string())?;
        let m = *cs.meta();
        ensure(m.rows == 1 && (m.sets, m.z2, m.flock, m.cols) == want, || {
            format!("{file}: {m:?}")
        })?;
        let r = verify_zcacs(&cs, 1, m.z2, &exact_opts());
        ensure(r.pass, || format!("{file}: {r:?}"))?;
        ensure(derive_params(&load(file)).optimal(), || format!("{file}: not optimal"))?;
        one_dimensional_check(&cs).map_err(|e| format!("{file}: {e}"))?;
        parts.push(format!("({},{})-ZCCS_{}^{}", want.0, want.1, want.2, want.3));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2}s"))?;
    Ok(format!("{} pass ({secs:.2}s)", parts.join(", ")))
}

fn randomized_sweep() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let opts = VerifyOptions {
        engine: Engine::Separable,
        ..VerifyOptions::default()
    };
    let mut largest = 0;
    let mut higher = 0;
    for i in 0..25 {
        let cfg = random_grid_config(&mut rng);
        let p = cfg.params();
        higher += [Side::Row, Side::Col].iter().any(|&s| {
            p.exponents(s)
                .iter()
                .zip(p.spec().blocks(s))
                .any(|(&k, b)| k >= 2 && !b.is_trivial())
        }) as usize;
        let cs = build(&cfg);
        let m = *cs.meta();
        let r = verify_zcacs(&cs, m.z1, m.z2, &opts);
        let d = derive_params(&cfg);
        ensure(r.pass && d.optimal(), || {
            format!("config {i} ({m}) failed: pass={} optimal={}", r.pass, d.optimal())
        })?;
        largest = largest.max(m.sets);
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 600.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "25/25 random configs pass and are optimal ({higher} with an exponent >= 2, up to {largest} sets, {secs:.1}s)"
    ))
}

fn small_random_config(rng: &mut StdRng) -> GeneratorConfig {
    loop {
        let cfg = random_grid_config(rng);
        let p = cfg.params();
        let cosets = p.alpha1() / p.alpha();
        if p.alpha() * p.alpha() * cosets * p.rows() * p.cols() <= 300_000 {
            return cfg;
        }
    }
}

fn linkage(cfg: &GeneratorConfig) -> Result<u64, String> {
    let p = cfg.params();
    let delta = cfg.delta();
    let thetas = ThetaIndex::all(p);
    let cosets = CosetIndex::all(cfg.spec());
    let mut checked = 0;
    for g in 0..p.rows() {
        let ge = decompose(g, cfg.spec(), Side::Row, true).unwrap();
        let gb = DigitVector {
            blocks: ge.blocks.clone(),
            primed: vec![],
        };
        for u in 0..p.cols() {
            let ue = decompose(u, cfg.spec(), Side::Col, true).unwrap();
            let ub = DigitVector {
                blocks: ue.blocks.clone(),
                primed: vec![],
            };
            for th in &thetas {
                for t in &thetas {
                    let a = eval_a(th, t, &gb, &ub, cfg).unwrap();
                    for cd in &cosets {
                        let mut want = (delta / cfg.lambda()) * a;
                        for ((&b, &c), &d) in cfg.spec().primed(Side::Row).iter().zip(&cd.c).zip(&ge.primed) {
                            want += c * (delta / b) * d;
                        }
                        for ((&b, &c), &d) in cfg.spec().primed(Side::Col).iter().zip(&cd.d).zip(&ue.primed) {
                            want += c * (delta / b) * d;
                        }
                        let got = eval_b(th, t, cd, &ge, &ue, cfg).unwrap();
                        if got != want % delta {
                            return Err(format!("b = {got}, linked value {}", want % delta));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn identity_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(21);
    let mut inputs = 0;
    let mut spans = 0;
    for _ in 0..5 {
        let cfg = small_random_config(&mut rng);
        inputs += linkage(&cfg)?;
        for side in [Side::Row, Side::Col] {
            let span = cfg.spec().extended_span(side);
            for v in 0..span {
                let d = decompose(v, cfg.spec(), side, true).map_err(|e| e.to_string())?;
                ensure(compose(&d, cfg.spec(), side) == Ok(v), || format!("round trip of {v}"))?;
            }
            spans += span;
        }
    }
    for _ in 0..100 {
        let (rows, cols) = (rng.gen_range(1..6), rng.gen_range(1..7));
        let modulus = rng.gen_range(2..13);
        let a = random_array(&mut rng, rows, cols, modulus);
        let b = random_array(&mut rng, rows, cols, modulus);
        let tol = 1e-9 * (rows * cols) as f64;
        for t1 in -(rows as i64)..rows as i64 {
            for t2 in -(cols as i64)..cols as i64 {
                let v = accf_2d(&a, &b, t1, t2).unwrap();
                let sym = accf_2d(&b, &a, -t1, -t2).unwrap().conj();
                ensure((v - sym).norm() <= tol, || format!("symmetry at ({t1},{t2})"))?;
                ensure((v - clipped_accf(&a, &b, t1, t2)).norm() <= tol, || {
                    format!("quadrant ({t1},{t2})")
                })?;
                let exact = accf_2d_exact(&a, &b, t1, t2).unwrap().to_complex();
                ensure((v - exact).norm() <= tol, || format!("exact vs float at ({t1},{t2})"))?;
            }
        }
        let ra = random_array(&mut rng, 1, cols + 3, modulus);
        let rb = random_array(&mut rng, 1, cols + 3, modulus);
        for tau in -(cols as i64 + 3)..cols as i64 + 3 {
            let d1 = accf_1d(&ra, &rb, tau).unwrap();
            let d2 = accf_2d(&ra, &rb, 0, tau).unwrap();
            ensure((d1 - d2).norm() <= 1e-9 * (cols + 3) as f64, || {
                format!("1D vs 2D at {tau}")
            })?;
        }
    }
    Ok(format!(
        "linkage on {inputs} inputs of 5 random configs, {spans} indices round-tripped, 100 array pairs consistent"
    ))
}

fn negative_control() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = dir.path().join("example1.txt");
    let cfg = config_path("example1.toml");
    let args = |rest: &[&str]| -> Vec<String> { ["zcacs"].iter().chain(rest).map(|s| s.to_string()).collect() };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(
        args(&[
            "generate",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            file.to_str().unwrap(),
        ]),
        &mut out,
        &mut err,
    );
    ensure(code == 0, || {
        format!("generate exited {code}: {}", String::from_utf8_lossy(&err))
    })?;
    let mut out = Vec::new();
    let code = run_with(
        args(&["verify", file.to_str().unwrap(), "--z1", "5"]),
        &mut out,
        &mut err,
    );
    ensure(code == 1, || format!("verify exited {code}"))?;
    let kv = parse_key_values(&String::from_utf8_lossy(&out));
    let worst = ["worst_auto", "worst_cross"]
        .iter()
        .filter_map(|k| kv.iter().find(|(key, _)| key == k))
        .map(|(_, v)| v.clone())
        .find(|v| v.contains("shift=(4,") || v.contains("shift=(-4,"));
    let worst = worst.ok_or_else(|| format!("no offender at |tau1| = 4: {kv:?}"))?;
    Ok(format!("exit 1, offender {worst}"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("reference 12x18 family", example_one_reproduction),
        ("optimality equality", optimality_equality),
        ("2D-CCC family", ccc_family),
        ("1D reductions", one_dimensional_reductions),
        ("randomized sweep", randomized_sweep),
        ("identity suite", identity_suite),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
