use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use swldpc::cli::{format_bits, EXIT_DATA, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_USAGE};
use swldpc::{sample_pair, CorrelationModel};

fn swldpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swldpc"))
        .args(args)
        .output()
        .unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_codes(dir: &Path, n: usize) -> (String, String) {
    let (c1, c2) = (path(dir, "h1.alist"), path(dir, "h2.alist"));
    let n = n.to_string();
    assert_eq!(
        swldpc(&["makecode", "--n", &n, "--identity", "--out", &c1])
            .status
            .code(),
        Some(EXIT_OK)
    );
    let out = swldpc(&[
        "makecode", "--n", &n, "--dv", "3", "--dc", "6", "--seed", "11", "--out", &c2,
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    (c1, c2)
}

/// Writes u1 and u2 bits files for `blocks` independent pairs.
fn write_sources(dir: &Path, n: usize, p: f64, blocks: u64) -> (String, String, String) {
    let model = CorrelationModel::new(p).unwrap();
    let pairs: Vec<_> = (0..blocks)
        .map(|k| sample_pair(&model, n, 300 + k).unwrap())
        .collect();
    let (a, b) = (path(dir, "u1.bits"), path(dir, "u2.bits"));
    fs::write(&a, format_bits(pairs.iter().map(|x| x.u1.as_slice()))).unwrap();
    fs::write(&b, format_bits(pairs.iter().map(|x| x.u2.as_slice()))).unwrap();
    let both = format_bits(
        pairs
            .iter()
            .flat_map(|x| [x.u1.as_slice(), x.u2.as_slice()]),
    );
    (a, b, both)
}

fn encode_both(
    dir: &Path,
    codes: &(String, String),
    sources: &(String, String, String),
) -> (String, String) {
    let (s1, s2) = (path(dir, "s1.bits"), path(dir, "s2.bits"));
    assert_eq!(
        swldpc(&["encode", "--code1", &codes.0, &sources.0, "--out", &s1])
            .status
            .code(),
        Some(EXIT_OK)
    );
    assert_eq!(
        swldpc(&["encode", "--code1", &codes.1, &sources.1, "--out", &s2])
            .status
            .code(),
        Some(EXIT_OK)
    );
    (s1, s2)
}

#[test]
fn makecode_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.alist"), path(dir.path(), "b.alist"));
    let args = [
        "makecode", "--n", "96", "--dv", "3", "--dc", "6", "--seed", "4", "--out",
    ];
    let first = swldpc(&[&args[..], &[a.as_str()]].concat());
    swldpc(&[&args[..], &[b.as_str()]].concat());
    assert_eq!(first.status.code(), Some(EXIT_OK));
    assert!(stderr(&first).contains("48 x 96"), "{}", stderr(&first));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let stdout = swldpc(&args[..args.len() - 1]);
    assert_eq!(stdout.stdout, fs::read(&a).unwrap());
}

#[test]
fn encode_then_decode_recovers_sources() {
    let dir = tempfile::tempdir().unwrap();
    let n = 256;
    let codes = write_codes(dir.path(), n);
    let sources = write_sources(dir.path(), n, 0.99, 3);
    let (s1, s2) = encode_both(dir.path(), &codes, &sources);
    assert_eq!(
        fs::read_to_string(&s2)
            .unwrap()
            .lines()
            .next()
            .unwrap()
            .len(),
        n / 2
    );

    let out_path = path(dir.path(), "decoded.bits");
    let out = swldpc(&[
        "decode", "--code1", &codes.0, "--code2", &codes.1, "--syn1", &s1, "--syn2", &s2, "--p",
        "0.99", "--out", &out_path,
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stderr(&out));
    assert_eq!(fs::read_to_string(&out_path).unwrap(), sources.2);
}

#[test]
fn decode_reports_non_convergence() {
    let dir = tempfile::tempdir().unwrap();
    let n = 128;
    let codes = write_codes(dir.path(), n);
    let sources = write_sources(dir.path(), n, 0.6, 1);
    let (s1, s2) = encode_both(dir.path(), &codes, &sources);
    let out = swldpc(&[
        "decode",
        "--code1",
        &codes.0,
        "--code2",
        &codes.1,
        "--syn1",
        &s1,
        "--syn2",
        &s2,
        "--p",
        "0.6",
        "--max-iters",
        "5",
        "--trace",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_NOT_CONVERGED));
    let err = stderr(&out);
    assert!(err.contains("block 0 iter 1 unsatisfied"), "{err}");
    assert!(err.contains("block 0 iter 5 unsatisfied"), "{err}");
    assert!(err.contains("did not converge after 5 iterations"), "{err}");
    // decisions are still written
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn malformed_alist_names_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.alist");
    fs::write(&bad, "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3 3\n").unwrap();
    let bits = path(dir.path(), "u.bits");
    fs::write(&bits, "101\n").unwrap();
    let out = swldpc(&["encode", "--code1", &bad, &bits]);
    assert_eq!(out.status.code(), Some(EXIT_DATA));
    let err = stderr(&out);
    assert!(err.contains("bad.alist") && err.contains("line 9"), "{err}");

    fs::write(&bits, "1x1\n").unwrap();
    let good = path(dir.path(), "good.alist");
    swldpc(&["makecode", "--n", "3", "--identity", "--out", &good]);
    let out = swldpc(&["encode", "--code1", &good, &bits]);
    assert_eq!(out.status.code(), Some(EXIT_DATA));
    assert!(stderr(&out).contains("u.bits line 1"), "{}", stderr(&out));
}

#[test]
fn usage_errors() {
    let out = swldpc(&["simulate", "--p", "0.9", "--n", "64", "--trials", "2"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&out).contains("--seed"));
    assert_eq!(
        swldpc(&["bounds", "--p", "1.5", "--r1", "1", "--r2", "1"])
            .status
            .code(),
        Some(EXIT_USAGE)
    );
    assert_eq!(swldpc(&["frobnicate"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(swldpc(&["--help"]).status.code(), Some(EXIT_OK));
}

#[test]
fn bounds_at_corner_point() {
    let out = swldpc(&["bounds", "--p", "0.9", "--r1", "1", "--r2", "0.5"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("admissible=true\n"), "{text}");
    assert!(
        text.contains("conditional_entropy=0.4689955935892811\n"),
        "{text}"
    );
}

#[test]
fn simulate_config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = path(dir.path(), "sim.toml");
    fs::write(
        &config,
        "sweep_p = [0.97, 0.9]\nn = 128\ntrials = 6\nseed = 8\nmode = \"symmetric\"\n",
    )
    .unwrap();
    let from_file = swldpc(&["simulate", "--config", &config]);
    assert_eq!(
        from_file.status.code(),
        Some(EXIT_OK),
        "{}",
        stderr(&from_file)
    );
    let from_flags = swldpc(&[
        "simulate",
        "--sweep-p",
        "0.97,0.9",
        "--n",
        "128",
        "--trials",
        "6",
        "--seed",
        "8",
        "--mode",
        "symmetric",
    ]);
    assert_eq!(from_file.stdout, from_flags.stdout);
    let text = String::from_utf8(from_file.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(
        text.lines().nth(1).unwrap().starts_with("0.97,128,"),
        "{text}"
    );

    // flags override the file
    let overridden = swldpc(&["simulate", "--config", &config, "--trials", "3"]);
    let text = String::from_utf8(overridden.stdout).unwrap();
    assert_eq!(
        text.lines().nth(1).unwrap().split(',').nth(4),
        Some("3"),
        "{text}"
    );

    fs::write(&config, "seed = 1\np = 0.9\nbogus = 3\n").unwrap();
    assert_eq!(
        swldpc(&["simulate", "--config", &config]).status.code(),
        Some(EXIT_DATA)
    );
}
