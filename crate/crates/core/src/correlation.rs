//! The symmetric single-parameter correlation model between two binary
//! sources.
//!
//! `p = Pr(U1 = U2)`. Equivalently `U2 = U1 XOR Z` where `Z` is an error bit
//! with `Pr(Z = 1) = 1 - p`, i.e. `U2` is the output of a binary symmetric
//! channel with crossover `1 - p` fed by `U1`. Both sources are fair bits, so
//! `H(U1|U2) = H(U2|U1) = h2(p)` and `H(U1, U2) = 1 + h2(p)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Clamp applied to every LLR and message, in nats. `tanh(LLR_MAX / 2)` is
/// already 1.0 in double precision.
pub const LLR_MAX: f64 = 30.0;

/// Binary entropy `h2(q)` in bits, with `0 log 0 = 0`.
pub fn binary_entropy(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidProbability {
            value: q,
            range: "[0, 1]",
        });
    }
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * x.log2() };
    Ok(term(q) + term(1.0 - q))
}

/// Correlation parameter `p = Pr(U1 = U2)`, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationModel {
    p: f64,
}

impl CorrelationModel {
    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p < 1.0 {
            Ok(CorrelationModel { p })
        } else {
            Err(Error::InvalidProbability {
                value: p,
                range: "(0, 1)",
            })
        }
    }

    /// Independent sources; the correlation checks carry no information.
    pub fn independent() -> Self {
        CorrelationModel { p: 0.5 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `Pr(Z = 1) = 1 - p`.
    pub fn crossover(&self) -> f64 {
        1.0 - self.p
    }

    /// `H(U1|U2) = H(U2|U1) = h2(p)` in bits.
    pub fn conditional_entropy(&self) -> f64 {
        binary_entropy(self.p).expect("p is a valid probability")
    }

    /// `H(U1, U2) = 1 + h2(p)` in bits.
    pub fn joint_entropy(&self) -> f64 {
        1.0 + self.conditional_entropy()
    }

    /// Prior LLR of the hidden error bit `Z`: `ln(Pr(Z=0)/Pr(Z=1)) = ln(p/(1-p))`.
    ///
    /// Written as a difference of logs so that `hidden_llr(p) = -hidden_llr(1-p)`
    /// holds bit-for-bit whenever `1 - (1 - p) == p`.
    pub fn hidden_llr(&self) -> Llr {
        Llr::clamped(self.p.ln() - (1.0 - self.p).ln())
    }
}

/// Free-function form of [`CorrelationModel::conditional_entropy`].
pub fn conditional_entropy(model: &CorrelationModel) -> f64 {
    model.conditional_entropy()
}

/// Free-function form of [`CorrelationModel::joint_entropy`].
pub fn joint_entropy(model: &CorrelationModel) -> f64 {
    model.joint_entropy()
}

/// Free-function form of [`CorrelationModel::hidden_llr`].
pub fn hidden_llr(model: &CorrelationModel) -> Llr {
    model.hidden_llr()
}

/// A log-likelihood ratio in nats, always within `±LLR_MAX`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Llr(f64);

impl Llr {
    pub const ZERO: Llr = Llr(0.0);

    /// Clamps `value` into `[-LLR_MAX, LLR_MAX]`. NaN maps to 0.
    pub fn clamped(value: f64) -> Self {
        if value.is_nan() {
            Llr(0.0)
        } else {
            Llr(value.clamp(-LLR_MAX, LLR_MAX))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Llr> for f64 {
    fn from(llr: Llr) -> f64 {
        llr.0
    }
}

/// One realisation of the correlated pair, with the error pattern that links it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelatedPair {
    pub u1: Vec<u8>,
    pub u2: Vec<u8>,
    pub z: Vec<u8>,
}

impl CorrelatedPair {
    pub fn len(&self) -> usize {
        self.u1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u1.is_empty()
    }

    /// Number of positions where `u1` and `u2` agree.
    pub fn agreements(&self) -> usize {
        self.z.iter().filter(|&&b| b == 0).count()
    }
}

/// Draws `n` fair bits for `u1` and an i.i.d. Bernoulli(1 - p) error pattern `z`.
///
/// Position `i` consumes one fair bit and then one uniform variate, in that
/// order. Two models sampled with the same seed therefore see the same `u1`
/// and nested error patterns: `z` at a smaller `p` covers `z` at a larger one.
pub fn sample_pair(model: &CorrelationModel, n: usize, seed: u64) -> Result<CorrelatedPair> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "block length must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let crossover = model.crossover();
    let mut u1 = Vec::with_capacity(n);
    let mut u2 = Vec::with_capacity(n);
    let mut z = Vec::with_capacity(n);
    for _ in 0..n {
        let a = u8::from(rng.gen::<bool>());
        let e = u8::from(rng.gen::<f64>() < crossover);
        u1.push(a);
        z.push(e);
        u2.push(a ^ e);
    }
    Ok(CorrelatedPair { u1, u2, z })
}

/// Compression rates in bits per source bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        if !(r1 >= 0.0 && r2 >= 0.0 && r1.is_finite() && r2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rates must be finite and non-negative, got ({r1}, {r2})"
            )));
        }
        Ok(RatePair { r1, r2 })
    }

    pub fn sum(&self) -> f64 {
        self.r1 + self.r2
    }
}

/// Outcome of a Slepian-Wolf admissibility test with the three slacks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateCheck {
    pub admissible: bool,
    /// `r1 - h2(p)`
    pub slack_r1: f64,
    /// `r2 - h2(p)`
    pub slack_r2: f64,
    /// `r1 + r2 - 1 - h2(p)`
    pub slack_sum: f64,
}

/// Tests whether `rates` lies in the Slepian-Wolf region of `model`.
pub fn sw_region_check(model: &CorrelationModel, rates: RatePair) -> RateCheck {
    let h = model.conditional_entropy();
    let slack_r1 = rates.r1 - h;
    let slack_r2 = rates.r2 - h;
    let slack_sum = rates.sum() - model.joint_entropy();
    RateCheck {
        admissible: slack_r1 >= 0.0 && slack_r2 >= 0.0 && slack_sum >= 0.0,
        slack_r1,
        slack_r2,
        slack_sum,
    }
}
