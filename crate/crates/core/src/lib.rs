//! Slepian-Wolf compression of two correlated binary sources.
//!
//! Each source block is compressed to an LDPC syndrome by its own encoder.
//! The decoder joins the two codes' Tanner graphs with one correlation check
//! per bit position; each correlation check is also attached to a hidden
//! variable node standing for the error bit `Z = U1 XOR U2`, whose prior is a
//! constant LLR derived from the correlation parameter `p = Pr(U1 = U2)`.
//! Sum-product decoding on that joint graph recovers both blocks from the two
//! syndromes and `p` alone.
//!
//! Conventions used throughout the crate:
//!
//! * LLRs are `ln(Pr(bit = 0) / Pr(bit = 1))` in nats; positive favours 0.
//! * Entropies and rates are in bits per source bit.
//! * Bits are `u8` values 0 or 1.
//!
//! Module map:
//!
//! * [`correlation`]: the correlation model, entropies, sampling, rate-region test.
//! * [`code`]: sparse parity-check matrices, regular construction, alist I/O, syndromes.
//! * [`graph`]: the joint Tanner graph in explicit-Z and folded-Z form.
//! * [`decoder`]: flooding sum-product decoder and the brute-force marginal oracle.
//! * [`sim`]: seeded Monte Carlo trials, sweeps and CSV output.
//! * [`cli`]: the command-line front end used by the `swldpc` binary.

pub mod cli;
pub mod code;
pub mod correlation;
pub mod decoder;
mod error;
pub mod graph;
pub mod sim;

pub use code::{gallager_construct, syndrome, SparseParityMatrix, Syndrome};
pub use correlation::{
    binary_entropy, sample_pair, sw_region_check, CorrelatedPair, CorrelationModel, Llr, RateCheck,
    RatePair, LLR_MAX,
};
pub use decoder::{brute_force_marginals, decode, DecodeResult, DecoderConfig, ExactMarginals};
pub use error::{Error, Result};
pub use graph::{GraphForm, JointTannerGraph};
pub use sim::{run_trials, sweep, write_csv, SimConfig, SimMode, SimRecord};

/// Returns `true` if every element is 0 or 1.
pub(crate) fn is_bits(bits: &[u8]) -> bool {
    bits.iter().all(|&b| b <= 1)
}
