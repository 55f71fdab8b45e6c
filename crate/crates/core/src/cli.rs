//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or format error,
//! 3 `decode` finished without converging on at least one block.
//!
//! Bits files hold one block per line as ASCII `0`/`1` characters.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::code::{
    gallager_construct, load_alist, save_alist, syndrome, SparseParityMatrix, Syndrome,
};
use crate::correlation::{sw_region_check, CorrelationModel, RatePair};
use crate::decoder::{decode_traced, DecoderConfig};
use crate::graph::{GraphForm, JointTannerGraph};
use crate::sim::{split_codes, sweep, write_csv, SimConfig, SimMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "swldpc",
    version,
    about = "Slepian-Wolf coding of correlated binary sources with LDPC syndromes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a parity-check matrix and write it as alist.
    Makecode(MakecodeArgs),
    /// Compress a bits file to syndromes.
    Encode(EncodeArgs),
    /// Jointly decode two syndrome files.
    Decode(DecodeArgs),
    /// Test a rate pair against the Slepian-Wolf region.
    Bounds(BoundsArgs),
    /// Monte Carlo BER/FER measurement, CSV on stdout.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct MakecodeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, required_unless_present = "identity")]
    dv: Option<usize>,
    #[arg(long, required_unless_present = "identity")]
    dc: Option<usize>,
    #[arg(long, required_unless_present = "identity")]
    seed: Option<u64>,
    /// Emit the n x n identity (the uncompressed corner point).
    #[arg(long, conflicts_with_all = ["dv", "dc", "seed"])]
    identity: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EncodeArgs {
    /// alist of the encoding code
    #[arg(long)]
    code1: PathBuf,
    /// Bits file, one source block per line
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DecodeArgs {
    #[arg(long)]
    code1: PathBuf,
    #[arg(long)]
    code2: PathBuf,
    #[arg(long)]
    syn1: PathBuf,
    #[arg(long)]
    syn2: PathBuf,
    /// Pr(U1 = U2)
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 100)]
    max_iters: usize,
    #[arg(long, default_value_t = 0.0)]
    damping: f64,
    /// Per-iteration diagnostics on stderr.
    #[arg(long)]
    trace: bool,
    /// Output bits file: u1 then u2 for every block.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    r1: f64,
    #[arg(long)]
    r2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Asymmetric,
    Symmetric,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// TOML file with the same keys as the flags (underscores for dashes).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, conflicts_with = "sweep_p")]
    p: Option<f64>,
    #[arg(long = "sweep-p", value_delimiter = ',')]
    sweep_p: Option<Vec<f64>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    dv: Option<usize>,
    #[arg(long)]
    dc: Option<usize>,
    /// alist overriding the constructed code 1 (symmetric mode)
    #[arg(long)]
    code1: Option<PathBuf>,
    /// alist overriding the constructed code 2
    #[arg(long)]
    code2: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    damping: Option<f64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Worker threads; output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateFile {
    p: Option<f64>,
    sweep_p: Option<Vec<f64>>,
    n: Option<usize>,
    dv: Option<usize>,
    dc: Option<usize>,
    code1: Option<PathBuf>,
    code2: Option<PathBuf>,
    seed: Option<u64>,
    trials: Option<usize>,
    max_iters: Option<usize>,
    damping: Option<f64>,
    mode: Option<ModeArg>,
    jobs: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    NotConverged,
}

type CliResult<T> = std::result::Result<T, Failure>;

fn data_err(path: &Path, err: impl std::fmt::Display) -> Failure {
    Failure::Data(format!("{}: {err}", path.display()))
}

fn usage_err(err: impl std::fmt::Display) -> Failure {
    Failure::Usage(err.to_string())
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = stdout.write_all(rendered.as_bytes());
                return EXIT_OK;
            }
            let _ = stderr.write_all(rendered.as_bytes());
            return EXIT_USAGE;
        }
    };
    let outcome = match cli.command {
        Command::Makecode(a) => makecode(a, stdout, stderr),
        Command::Encode(a) => encode(a, stdout),
        Command::Decode(a) => decode_cmd(a, stdout, stderr),
        Command::Bounds(a) => bounds(a, stdout),
        Command::Simulate(a) => simulate(a, stdout),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DATA
        }
        Err(Failure::NotConverged) => EXIT_NOT_CONVERGED,
    }
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| data_err(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Data(format!("stdout: {e}"))),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| data_err(path, e))
}

fn read_code(path: &Path) -> CliResult<SparseParityMatrix> {
    load_alist(&read_text(path)?).map_err(|e| data_err(path, e))
}

/// Parses a bits file into blocks, skipping blank lines.
pub fn parse_bits(text: &str) -> std::result::Result<Vec<Vec<u8>>, (usize, String)> {
    let mut blocks = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let block = line
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err((k + 1, format!("unexpected character {other:?}"))),
            })
            .collect::<std::result::Result<Vec<u8>, _>>()?;
        blocks.push(block);
    }
    Ok(blocks)
}

/// One line per block of ASCII bits.
pub fn format_bits<'a>(blocks: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut out = String::new();
    for block in blocks {
        out.extend(block.iter().map(|&b| if b == 1 { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

fn read_bits(path: &Path) -> CliResult<Vec<Vec<u8>>> {
    parse_bits(&read_text(path)?)
        .map_err(|(line, msg)| Failure::Data(format!("{} line {line}: {msg}", path.display())))
}

fn makecode(a: MakecodeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let h = if a.identity {
        SparseParityMatrix::identity(a.n)
    } else {
        let (dv, dc, seed) = (
            a.dv.unwrap_or_default(),
            a.dc.unwrap_or_default(),
            a.seed.unwrap_or_default(),
        );
        gallager_construct(a.n, dv, dc, seed).map_err(usage_err)?
    };
    let rank = h.rank_gf2();
    let _ = writeln!(
        stderr,
        "{} x {} matrix, GF(2) rank {rank}, rate {}",
        h.m(),
        h.n(),
        rank as f64 / h.n() as f64
    );
    emit(a.out.as_deref(), &save_alist(&h), stdout)
}

fn encode(a: EncodeArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let h = read_code(&a.code1)?;
    let blocks = read_bits(&a.input)?;
    let syndromes = blocks
        .iter()
        .map(|u| syndrome(&h, u).map_err(|e| data_err(&a.input, e)))
        .collect::<CliResult<Vec<Syndrome>>>()?;
    emit(
        a.out.as_deref(),
        &format_bits(syndromes.iter().map(Syndrome::bits)),
        stdout,
    )
}

fn decode_cmd(a: DecodeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let model = CorrelationModel::new(a.p).map_err(usage_err)?;
    let config = DecoderConfig {
        max_iterations: a.max_iters,
        damping: a.damping,
        early_stop: true,
    };
    config.validate().map_err(usage_err)?;
    let h1 = read_code(&a.code1)?;
    let h2 = read_code(&a.code2)?;
    let graph = JointTannerGraph::build(&h1, &h2, &model, GraphForm::FoldedZ)
        .map_err(|e| data_err(&a.code2, e))?;
    let syn1 = read_bits(&a.syn1)?;
    let syn2 = read_bits(&a.syn2)?;
    if syn1.len() != syn2.len() {
        return Err(Failure::Data(format!(
            "{} has {} blocks but {} has {}",
            a.syn1.display(),
            syn1.len(),
            a.syn2.display(),
            syn2.len()
        )));
    }
    let mut decoded: Vec<Vec<u8>> = Vec::with_capacity(2 * syn1.len());
    let mut all_converged = true;
    for (k, (b1, b2)) in syn1.into_iter().zip(syn2).enumerate() {
        let s1 = Syndrome::from_bits(b1).map_err(|e| data_err(&a.syn1, e))?;
        let s2 = Syndrome::from_bits(b2).map_err(|e| data_err(&a.syn2, e))?;
        let result = decode_traced(&graph, &s1, &s2, &config, |line| {
            if a.trace {
                let _ = writeln!(stderr, "block {k} {line}");
            }
        })
        .map_err(|e| Failure::Data(format!("block {k}: {e}")))?;
        if !result.converged {
            let _ = writeln!(
                stderr,
                "block {k}: did not converge after {} iterations",
                result.iterations_used
            );
            all_converged = false;
        }
        decoded.push(result.u1_hat);
        decoded.push(result.u2_hat);
    }
    emit(
        a.out.as_deref(),
        &format_bits(decoded.iter().map(Vec::as_slice)),
        stdout,
    )?;
    if all_converged {
        Ok(())
    } else {
        Err(Failure::NotConverged)
    }
}

fn bounds(a: BoundsArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let model = CorrelationModel::new(a.p).map_err(usage_err)?;
    let rates = RatePair::new(a.r1, a.r2).map_err(usage_err)?;
    let check = sw_region_check(&model, rates);
    let text = format!(
        "admissible={}\nslack_r1={}\nslack_r2={}\nslack_sum={}\nconditional_entropy={}\njoint_entropy={}\n",
        check.admissible,
        check.slack_r1,
        check.slack_r2,
        check.slack_sum,
        model.conditional_entropy(),
        model.joint_entropy()
    );
    emit(None, &text, stdout)
}

fn simulate(a: SimulateArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let file = match &a.config {
        Some(path) => {
            toml::from_str::<SimulateFile>(&read_text(path)?).map_err(|e| data_err(path, e))?
        }
        None => SimulateFile::default(),
    };
    let seed = a
        .seed
        .or(file.seed)
        .ok_or_else(|| usage_err("simulate requires --seed (or seed in the config file)"))?;
    let ps = match (a.p, a.sweep_p, file.p, file.sweep_p) {
        (Some(p), _, _, _) => vec![p],
        (None, Some(list), _, _) => list,
        (None, None, Some(p), _) => vec![p],
        (None, None, None, Some(list)) => list,
        _ => return Err(usage_err("simulate requires --p or --sweep-p")),
    };
    if ps.is_empty() {
        return Err(usage_err("--sweep-p needs at least one value"));
    }
    let n = a.n.or(file.n).unwrap_or(1024);
    let dv = a.dv.or(file.dv).unwrap_or(3);
    let dc = a.dc.or(file.dc).unwrap_or(6);
    let trials = a.trials.or(file.trials).unwrap_or(100);
    let mode = a.mode.or(file.mode).unwrap_or(ModeArg::Asymmetric);
    let decoder = DecoderConfig {
        max_iterations: a.max_iters.or(file.max_iters).unwrap_or(100),
        damping: a.damping.or(file.damping).unwrap_or(0.0),
        early_stop: true,
    };
    decoder.validate().map_err(usage_err)?;
    let jobs = a.jobs.or(file.jobs);
    if jobs == Some(0) {
        return Err(usage_err("--jobs must be at least 1"));
    }

    let code1_path = a.code1.or(file.code1);
    let code2_path = a.code2.or(file.code2);
    let (code1, code2) = match mode {
        ModeArg::Asymmetric => {
            if code1_path.is_some() {
                return Err(usage_err(
                    "--code1 is fixed to the identity in asymmetric mode",
                ));
            }
            let h2 = match &code2_path {
                Some(path) => read_code(path)?,
                None => gallager_construct(n, dv, dc, seed).map_err(usage_err)?,
            };
            (SparseParityMatrix::identity(h2.n()), h2)
        }
        ModeArg::Symmetric => {
            let (mut h1, mut h2) = match (&code1_path, &code2_path) {
                (Some(_), Some(_)) => (
                    SparseParityMatrix::identity(0),
                    SparseParityMatrix::identity(0),
                ),
                _ => split_codes(n, dv, dc, seed).map_err(usage_err)?,
            };
            if let Some(path) = &code1_path {
                h1 = read_code(path)?;
            }
            if let Some(path) = &code2_path {
                h2 = read_code(path)?;
            }
            (h1, h2)
        }
    };
    if code1.n() != code2.n() {
        return Err(Failure::Data(format!(
            "code lengths differ: {} vs {}",
            code1.n(),
            code2.n()
        )));
    }
    let (code1, code2) = (Arc::new(code1), Arc::new(code2));
    let configs = ps
        .iter()
        .map(|&p| {
            let model = CorrelationModel::new(p).map_err(usage_err)?;
            Ok(SimConfig {
                model,
                code1: Arc::clone(&code1),
                code2: Arc::clone(&code2),
                trials,
                master_seed: seed,
                decoder,
                mode: match mode {
                    ModeArg::Asymmetric => SimMode::Asymmetric,
                    ModeArg::Symmetric => SimMode::Symmetric,
                },
                correlation_enabled: true,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let records = match jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Failure::Data(e.to_string()))?;
            pool.install(|| sweep(&configs))
        }
        None => sweep(&configs),
    }
    .map_err(usage_err)?;
    emit(None, &write_csv(&records), stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("swldpc").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn bounds_output() {
        let (code, out, _) = run_capture(&["bounds", "--p", "0.9", "--r1", "1.0", "--r2", "0.5"]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "admissible=true");
        let slack = |prefix: &str| -> f64 {
            lines
                .iter()
                .find_map(|l| l.strip_prefix(prefix))
                .unwrap()
                .parse()
                .unwrap()
        };
        assert!((slack("slack_r1=") - 0.5310044064107189).abs() < 1e-12);
        assert!((slack("slack_r2=") - 0.031004406410718888).abs() < 1e-12);
        assert!((slack("slack_sum=") - 0.031004406410718888).abs() < 1e-12);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["bounds", "--p", "0.9"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["bounds", "--p", "0.9", "--r1", "1", "--r2", "1", "--bogus"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["bounds", "--p", "1.0", "--r1", "1", "--r2", "1"]).0,
            EXIT_USAGE
        );
        let (code, _, err) = run_capture(&["simulate", "--p", "0.9", "--n", "64", "--trials", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--seed"), "{err}");
        assert_eq!(
            run_capture(&["makecode", "--n", "12", "--dv", "3", "--dc", "6"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&[]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("simulate"));
    }

    #[test]
    fn bits_parsing() {
        assert_eq!(
            parse_bits("0101\n\n11 \n").unwrap(),
            vec![vec![0, 1, 0, 1], vec![1, 1]]
        );
        assert_eq!(parse_bits("01\n0x1\n").unwrap_err().0, 2);
        assert_eq!(format_bits([&[1u8, 0, 1][..], &[0][..]]), "101\n0\n");
    }

    #[test]
    fn makecode_identity_to_stdout() {
        let (code, out, _) = run_capture(&["makecode", "--n", "2", "--identity"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "2 2\n1 1\n1 1\n1 1\n1\n2\n1\n2\n");
    }

    #[test]
    fn simulate_stdout_is_csv() {
        let (code, out, _) = run_capture(&[
            "simulate", "--p", "0.97", "--n", "96", "--trials", "3", "--seed", "1",
        ]);
        assert_eq!(code, EXIT_OK);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some(crate::sim::CSV_HEADER));
        assert!(lines.next().unwrap().starts_with("0.97,96,1,0.5,3,"));
        assert_eq!(lines.next(), None);
    }
}
