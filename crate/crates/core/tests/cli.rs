mod common;

use std::fs;
use std::path::Path;

use common::{config_path, example_one};
use zcacs::cli::report::parse_key_values;
use zcacs::cli::{read_codeset, run_with};
use zcacs::generator::build;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("zcacs").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cfg(name: &str) -> String {
    config_path(name).display().to_string()
}

fn value<'a>(kv: &'a [(String, String)], key: &str) -> &'a str {
    &kv.iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("missing {key}"))
        .1
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_writes_a_loadable_file_in_both_encodings() {
    let dir = tempfile::tempdir().unwrap();
    let expected = build(&example_one());
    for (format, name) in [("text", "e1.txt"), ("binary", "e1.bin")] {
        let path = dir.path().join(name);
        let (code, out, err) = run(&[
            "generate",
            "--config",
            &cfg("example1.toml"),
            "--out",
            p(&path),
            "--format",
            format,
        ]);
        assert_eq!(code, 0, "{err}");
        let kv = parse_key_values(&out);
        assert_eq!(value(&kv, "sets"), "36");
        assert_eq!(value(&kv, "zone"), "4x9");
        assert_eq!(value(&kv, "optimal"), "true");
        assert_eq!(read_codeset(&path).unwrap(), expected);
    }
    let text = fs::metadata(dir.path().join("e1.txt")).unwrap().len();
    let bin = fs::metadata(dir.path().join("e1.bin")).unwrap().len();
    assert!(bin < text);
}

#[test]
fn generate_reports_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.txt");
    let (code, out, _) = run(&["generate", "--config", &cfg("ccc.toml"), "--out", p(&out_path)]);
    assert_eq!(code, 0);
    let kv = parse_key_values(&out);
    assert_eq!(value(&kv, "kind"), "CCC");
    assert_eq!(value(&kv, "sets"), value(&kv, "flock"));
    let (code, out, _) = run(&["reduce", "--config", &cfg("zccs_12_4.toml"), "--out", p(&out_path)]);
    assert_eq!(code, 0);
    let kv = parse_key_values(&out);
    assert_eq!(value(&kv, "family"), "(12, 4)-ZCCS_4^12 over Z_6");
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("e1.txt");
    assert_eq!(
        run(&["generate", "--config", &cfg("example1.toml"), "--out", p(&file)]).0,
        0
    );

    let report = dir.path().join("report.txt");
    let (code, out, _) = run(&["verify", p(&file), "--out", p(&report)]);
    assert_eq!(code, 0);
    assert_eq!(fs::read_to_string(&report).unwrap(), out);
    assert_eq!(value(&parse_key_values(&out), "verdict"), "pass");

    let (code, out, _) = run(&["verify", p(&file), "--z1", "5", "--out", p(&report)]);
    assert_eq!(code, 1);
    let kv = parse_key_values(&fs::read_to_string(&report).unwrap());
    assert_eq!(value(&kv, "verdict"), "fail");
    assert!(value(&kv, "worst_auto").contains("shift=(4,"));
    assert_eq!(kv, parse_key_values(&out));

    let (code, out, _) = run(&["verify", "--config", &cfg("ccc.toml"), "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(value(&parse_key_values(&out), "exact.nonzero_cross"), "0");
}

#[test]
fn corrupt_and_missing_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("c.txt");
    let bin = dir.path().join("c.bin");
    assert_eq!(run(&["generate", "--config", &cfg("ccc.toml"), "--out", p(&text)]).0, 0);
    assert_eq!(
        run(&[
            "generate",
            "--config",
            &cfg("ccc.toml"),
            "--out",
            p(&bin),
            "--format",
            "binary"
        ])
        .0,
        0
    );

    let full = fs::read(&text).unwrap();
    let cut = dir.path().join("cut.txt");
    fs::write(&cut, &full[..full.len() / 2]).unwrap();
    assert_eq!(run(&["verify", p(&cut)]).0, 4);
    fs::write(&cut, &full[..full.len() - 4]).unwrap();
    assert_eq!(run(&["verify", p(&cut)]).0, 4);
    let bad_entry = String::from_utf8(full.clone()).unwrap().replacen("\n0 ", "\n9 ", 1);
    fs::write(&cut, bad_entry).unwrap();
    assert_eq!(run(&["verify", p(&cut)]).0, 4);

    let full = fs::read(&bin).unwrap();
    for len in [4, 20, full.len() - 1] {
        fs::write(&cut, &full[..len]).unwrap();
        assert_eq!(run(&["verify", p(&cut)]).0, 4, "binary cut at {len}");
    }
    let mut extra = full.clone();
    extra.push(0);
    fs::write(&cut, extra).unwrap();
    assert_eq!(run(&["verify", p(&cut)]).0, 4);

    fs::write(&cut, b"hello").unwrap();
    assert_eq!(run(&["verify", p(&cut)]).0, 4);
    assert_eq!(run(&["verify", p(&dir.path().join("missing"))]).0, 3);
}

#[test]
fn config_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(
        &bad,
        "row_blocks = [[2, 2, 1]]\ncol_blocks = [[3, 2, 1]]\nrow_perms = [[1, 3]]\n",
    )
    .unwrap();
    let out_path = dir.path().join("x.txt");
    let (code, _, err) = run(&["generate", "--config", p(&bad), "--out", p(&out_path)]);
    assert_eq!(code, 2);
    assert!(err.contains("row_perms[0]"), "{err}");
    assert!(!out_path.exists());

    let (code, _, _) = run(&[
        "generate",
        "--config",
        &cfg("example1.toml"),
        "--out",
        p(&out_path),
        "--format",
        "csv",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["reduce", "--config", &cfg("example1.toml"), "--out", p(&out_path)]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", "--config", &cfg("ccc.toml"), "--tol", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify", "--config", &cfg("ccc.toml"), "--threads", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["verify"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&[
        "generate",
        "--config",
        p(&dir.path().join("none.toml")),
        "--out",
        p(&out_path),
    ]);
    assert_eq!(code, 3);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("no/such/dir/out.txt");
    let (code, _, _) = run(&["generate", "--config", &cfg("ccc.toml"), "--out", p(&target)]);
    assert_eq!(code, 3);
}

#[test]
fn seeded_generation_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for path in [&a, &b] {
        let (code, _, _) = run(&[
            "generate",
            "--config",
            &cfg("example1.toml"),
            "--seed",
            "17",
            "--out",
            p(path),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(read_codeset(&a).unwrap(), build(&example_one()));
    assert_eq!(run(&["verify", p(&a), "--engine", "separable"]).0, 0);
}

#[test]
fn bound_command() {
    let (code, out, _) = run(&[
        "bound", "--sets", "36", "--flock", "6", "--rows", "12", "--cols", "18", "--z1", "4", "--z2", "9",
    ]);
    assert_eq!(code, 0);
    let kv = parse_key_values(&out);
    assert_eq!(value(&kv, "optimal"), "true");
    assert_eq!(value(&kv, "optimal_sets"), "36");
    let (code, out, _) = run(&["bound", "--config", &cfg("example1.toml")]);
    assert_eq!(code, 0);
    assert_eq!(value(&parse_key_values(&out), "bound.lhs"), "1296");
    let (code, _, _) = run(&[
        "bound", "--sets", "37", "--flock", "1", "--rows", "2", "--cols", "2", "--z1", "2", "--z2", "2",
    ]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["bound", "--sets", "36"]);
    assert_eq!(code, 2);
}

#[test]
fn table_command() {
    let (code, out, _) = run(&["table", "--config", &cfg("grid.toml"), "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(
        out.lines().any(|l| l.starts_with("ZCACS-2D,36,6,12x18,4x9,6,true,")),
        "{out}"
    );
    let (code, out, _) = run(&["table", "--config", &cfg("grid_set_sizes.toml"), "--format", "csv"]);
    assert_eq!(code, 0);
    let sizes: Vec<usize> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    // 2 q^2 for one block, 2 q1^2 q2^2 for two
    let mut expected: Vec<usize> = Vec::new();
    let qs = [2usize, 3, 5];
    for (i, a) in qs.iter().enumerate() {
        expected.push(2 * a * a);
        for b in &qs[i..] {
            expected.push(2 * a * a * b * b);
        }
    }
    expected.sort_unstable();
    expected.dedup();
    assert_eq!(sizes, expected);

    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.toml");
    fs::write(
        &one,
        "p = [2]\nm = [2]\nq = [3]\nn = [2]\nrow_primed = [[3]]\ncol_primed = [[2]]\n",
    )
    .unwrap();
    let (code, out, _) = run(&["table", "--config", p(&one)]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    fs::write(&one, "p = [2]\nq = []\n").unwrap();
    assert_eq!(run(&["table", "--config", p(&one)]).0, 2);
}

#[test]
fn random_families_round_trip_through_both_encodings() {
    use rand::SeedableRng;
    use zcacs::cli::format::{from_binary, from_text, to_binary, to_text};
    let mut rng = rand::rngs::StdRng::seed_from_u64(31);
    for _ in 0..6 {
        let cs = build(&common::random_grid_config(&mut rng));
        assert_eq!(from_text(&to_text(&cs)).unwrap(), cs);
        assert_eq!(from_binary(&to_binary(&cs)).unwrap(), cs);
    }
}
