//! Seeded Monte Carlo experiments: sample, compress, decode, count errors.
//!
//! Trial `t` of a run draws its source pair from `trial_seed(master_seed, t)`,
//! so trials are independent of one another and of how they are scheduled
//! across threads. Aggregation sums integer counts in trial order, which makes
//! a record a pure function of its [`SimConfig`].

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::code::{gallager_construct, syndrome, SparseParityMatrix};
use crate::correlation::{sample_pair, CorrelationModel, Llr};
use crate::decoder::{decode, DecoderConfig};
use crate::error::{Error, Result};
use crate::graph::{GraphForm, JointTannerGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMode {
    /// `U1` sent uncompressed (code 1 is the identity); `U2` compressed.
    Asymmetric,
    /// Both sources compressed.
    Symmetric,
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub model: CorrelationModel,
    pub code1: Arc<SparseParityMatrix>,
    pub code2: Arc<SparseParityMatrix>,
    pub trials: usize,
    pub master_seed: u64,
    pub decoder: DecoderConfig,
    pub mode: SimMode,
    /// When false the decoder's correlation checks carry a zero hidden LLR,
    /// i.e. the decoder ignores that the sources are correlated.
    pub correlation_enabled: bool,
}

impl SimConfig {
    /// Corner-point setup: `U1` at rate 1 through the identity, `U2` through `code2`.
    pub fn asymmetric(
        model: CorrelationModel,
        code2: Arc<SparseParityMatrix>,
        trials: usize,
        master_seed: u64,
    ) -> Self {
        SimConfig {
            model,
            code1: Arc::new(SparseParityMatrix::identity(code2.n())),
            code2,
            trials,
            master_seed,
            decoder: DecoderConfig::default(),
            mode: SimMode::Asymmetric,
            correlation_enabled: true,
        }
    }

    pub fn symmetric(
        model: CorrelationModel,
        code1: Arc<SparseParityMatrix>,
        code2: Arc<SparseParityMatrix>,
        trials: usize,
        master_seed: u64,
    ) -> Self {
        SimConfig {
            model,
            code1,
            code2,
            trials,
            master_seed,
            decoder: DecoderConfig::default(),
            mode: SimMode::Symmetric,
            correlation_enabled: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.code1.n() != self.code2.n() {
            return Err(Error::LengthMismatch {
                what: "code 2 block length",
                expected: self.code1.n(),
                found: self.code2.n(),
            });
        }
        if self.mode == SimMode::Asymmetric && !self.code1.is_identity() {
            return Err(Error::InvalidParameter(
                "asymmetric mode needs the identity as code 1".into(),
            ));
        }
        self.decoder.validate()
    }

    pub fn n(&self) -> usize {
        self.code1.n()
    }
}

/// Builds the two codes of a symmetric split. `U1` sends its first half
/// uncompressed and the syndrome of its second half under a
/// `(dv, dc)`-regular code; `U2` does the mirror image. Each half is then a
/// corner-point problem of half the length, and each rate is
/// `(1 + dv / dc) / 2`.
///
/// Pure syndromes of both sources would not do: with two fair sources every
/// message stays at zero and belief propagation never starts.
pub fn split_codes(
    n: usize,
    dv: usize,
    dc: usize,
    seed: u64,
) -> Result<(SparseParityMatrix, SparseParityMatrix)> {
    let half = n / 2;
    let tail = gallager_construct(n - half, dv, dc, trial_seed(seed, 0))?;
    let head = gallager_construct(half, dv, dc, trial_seed(seed, 1))?;
    let h1 = SparseParityMatrix::selector(n, 0..half)?.stack(&embed(&tail, n, half)?)?;
    let h2 = embed(&head, n, 0)?.stack(&SparseParityMatrix::selector(n, half..n)?)?;
    Ok((h1, h2))
}

/// `h` acting on columns `offset..offset + h.n()` of a length-`n` word.
fn embed(h: &SparseParityMatrix, n: usize, offset: usize) -> Result<SparseParityMatrix> {
    let rows = h
        .rows()
        .iter()
        .map(|r| r.iter().map(|&c| c + offset).collect())
        .collect();
    SparseParityMatrix::from_rows(n, rows)
}

/// One row of results.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRecord {
    pub p: f64,
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
    pub trials: usize,
    pub ber1: f64,
    pub ber2: f64,
    pub fer: f64,
    pub avg_iterations: f64,
    pub converged_fraction: f64,
    /// `r1 + r2 - 1 - h2(p)`; negative means outside the Slepian-Wolf region.
    pub sw_sum_slack: f64,
}

/// Per-trial log.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub seed: u64,
    pub bit_errors1: usize,
    pub bit_errors2: usize,
    pub converged: bool,
    pub iterations: usize,
}

impl TrialOutcome {
    pub fn frame_error(&self) -> bool {
        self.bit_errors1 + self.bit_errors2 > 0
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of trial `t`: `splitmix64(master ^ splitmix64(t))`.
pub fn trial_seed(master_seed: u64, trial: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(trial))
}

/// Runs every trial of `config` and returns the aggregate and per-trial logs.
///
/// Trials are spread over the current rayon thread pool; results do not
/// depend on its size.
pub fn run_trials_detailed(config: &SimConfig) -> Result<(SimRecord, Vec<TrialOutcome>)> {
    config.validate()?;
    let n = config.n();
    let hidden = if config.correlation_enabled {
        config.model.hidden_llr()
    } else {
        Llr::ZERO
    };
    let graph =
        JointTannerGraph::build_with_llr(&config.code1, &config.code2, hidden, GraphForm::FoldedZ)?;

    let outcomes = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(config.master_seed, t);
            let pair = sample_pair(&config.model, n, seed)?;
            let s1 = syndrome(&config.code1, &pair.u1)?;
            let s2 = syndrome(&config.code2, &pair.u2)?;
            let result = decode(&graph, &s1, &s2, &config.decoder)?;
            let errors = |a: &[u8], b: &[u8]| a.iter().zip(b).filter(|(x, y)| x != y).count();
            Ok(TrialOutcome {
                seed,
                bit_errors1: errors(&result.u1_hat, &pair.u1),
                bit_errors2: errors(&result.u2_hat, &pair.u2),
                converged: result.converged,
                iterations: result.iterations_used,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let trials = outcomes.len();
    let bits = (trials * n) as f64;
    let sum = |f: fn(&TrialOutcome) -> usize| outcomes.iter().map(f).sum::<usize>() as f64;
    let r1 = config.code1.rate();
    let r2 = config.code2.rate();
    let record = SimRecord {
        p: config.model.p(),
        n,
        r1,
        r2,
        trials,
        ber1: sum(|o| o.bit_errors1) / bits,
        ber2: sum(|o| o.bit_errors2) / bits,
        fer: sum(|o| usize::from(o.frame_error())) / trials as f64,
        avg_iterations: sum(|o| o.iterations) / trials as f64,
        converged_fraction: sum(|o| usize::from(o.converged)) / trials as f64,
        sw_sum_slack: r1 + r2 - config.model.joint_entropy(),
    };
    Ok((record, outcomes))
}

pub fn run_trials(config: &SimConfig) -> Result<SimRecord> {
    run_trials_detailed(config).map(|(record, _)| record)
}

/// Runs each configuration in turn; output order matches input order.
pub fn sweep(configs: &[SimConfig]) -> Result<Vec<SimRecord>> {
    if configs.is_empty() {
        return Err(Error::InvalidParameter(
            "sweep needs at least one configuration".into(),
        ));
    }
    configs.iter().map(run_trials).collect()
}

pub const CSV_HEADER: &str =
    "p,n,r1,r2,trials,ber1,ber2,fer,avg_iterations,converged_fraction,sw_sum_slack";

/// Header plus one line per record. Floats use the shortest representation
/// that round-trips.
pub fn write_csv(records: &[SimRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.p,
            r.n,
            r.r1,
            r.r2,
            r.trials,
            r.ber1,
            r.ber2,
            r.fer,
            r.avg_iterations,
            r.converged_fraction,
            r.sw_sum_slack
        );
    }
    out
}
