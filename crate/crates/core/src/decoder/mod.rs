//! Flooding sum-product decoding on the joint Tanner graph.
//!
//! One iteration:
//!
//! 1. every variable sends `prior + sum of the other incoming check messages`;
//! 2. every check with target parity `b` and constant factor `c` sends
//!    `2 atanh((1 - 2b) c prod tanh(L/2))` over its other neighbours;
//! 3. posteriors are `prior + sum of all incoming check messages`, and a bit
//!    decodes to 1 iff its posterior is negative.
//!
//! All messages are clamped to `±LLR_MAX`.

mod oracle;

pub use oracle::{brute_force_marginals, ExactMarginals, BRUTE_FORCE_LIMIT};

use std::fmt;

use crate::code::Syndrome;
use crate::correlation::LLR_MAX;
use crate::error::{Error, Result};
use crate::graph::{CheckRole, JointTannerGraph, VarRole};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    /// Weight of the previous check message in a convex combination with the
    /// new one. 0 disables damping.
    pub damping: f64,
    /// Stop as soon as the hard decisions satisfy every check.
    pub early_stop: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            max_iterations: 100,
            damping: 0.0,
            early_stop: true,
        }
    }
}

impl DecoderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::InvalidParameter(format!(
                "damping {} outside [0, 1)",
                self.damping
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub u1_hat: Vec<u8>,
    pub u2_hat: Vec<u8>,
    /// Always `u1_hat ^ u2_hat`.
    pub z_hat: Vec<u8>,
    /// The final hard decisions satisfy every check.
    pub converged: bool,
    pub iterations_used: usize,
    /// One posterior LLR per variable node, in graph order.
    pub posterior_llrs: Vec<f64>,
}

/// Messages on one edge after the latest iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeMessage {
    pub var: usize,
    pub check: usize,
    pub to_check: f64,
    pub to_var: f64,
}

/// Per-iteration diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceLine {
    pub iteration: usize,
    pub unsatisfied_checks: usize,
    pub mean_abs_posterior: f64,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "iter {} unsatisfied {} mean|llr| {}",
            self.iteration, self.unsatisfied_checks, self.mean_abs_posterior
        )
    }
}

fn check_message(x: f64) -> f64 {
    if x >= 1.0 {
        LLR_MAX
    } else if x <= -1.0 {
        -LLR_MAX
    } else {
        (2.0 * x.atanh()).clamp(-LLR_MAX, LLR_MAX)
    }
}

/// Message buffers for one decoding run over a shared graph.
#[derive(Debug, Clone)]
pub struct Session<'g> {
    graph: &'g JointTannerGraph,
    parity: Vec<u8>,
    damping: f64,
    to_check: Vec<f64>,
    to_var: Vec<f64>,
    tanh_half: Vec<f64>,
    posterior: Vec<f64>,
    iteration: usize,
}

impl<'g> Session<'g> {
    pub fn new(
        graph: &'g JointTannerGraph,
        s1: &Syndrome,
        s2: &Syndrome,
        damping: f64,
    ) -> Result<Self> {
        let parity = graph.parities(s1, s2)?;
        let edges = graph.num_edges();
        Ok(Session {
            graph,
            parity,
            damping,
            to_check: vec![0.0; edges],
            to_var: vec![0.0; edges],
            tanh_half: vec![0.0; edges],
            posterior: graph.priors().to_vec(),
            iteration: 0,
        })
    }

    /// Runs one flooding iteration.
    pub fn step(&mut self) -> Result<()> {
        let g = self.graph;
        let priors = g.priors();
        for (v, &prior) in priors.iter().enumerate() {
            let edges = g.var_edges(v);
            for &e in edges {
                let mut sum = prior;
                for &other in edges {
                    if other != e {
                        sum += self.to_var[other];
                    }
                }
                let msg = sum.clamp(-LLR_MAX, LLR_MAX);
                self.to_check[e] = msg;
                self.tanh_half[e] = (msg / 2.0).tanh();
            }
        }

        for c in 0..g.checks().len() {
            let range = g.check_edges(c);
            let sign = if self.parity[c] == 1 { -1.0 } else { 1.0 };
            let factor = g.check_factor(c);
            for e in range.clone() {
                let mut prod = 1.0;
                for other in range.clone() {
                    if other != e {
                        prod *= self.tanh_half[other];
                    }
                }
                let fresh = check_message(prod * factor * sign);
                self.to_var[e] = if self.damping == 0.0 {
                    fresh
                } else {
                    ((1.0 - self.damping) * fresh + self.damping * self.to_var[e])
                        .clamp(-LLR_MAX, LLR_MAX)
                };
            }
        }

        self.iteration += 1;
        for (v, &prior) in priors.iter().enumerate() {
            self.posterior[v] = prior + g.var_edges(v).iter().map(|&e| self.to_var[e]).sum::<f64>();
        }
        let finite = self
            .to_var
            .iter()
            .chain(&self.to_check)
            .chain(&self.posterior)
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::NonFinite {
                iteration: self.iteration,
            });
        }
        Ok(())
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn posteriors(&self) -> &[f64] {
        &self.posterior
    }

    pub fn var_to_check(&self) -> &[f64] {
        &self.to_check
    }

    pub fn check_to_var(&self) -> &[f64] {
        &self.to_var
    }

    /// Messages on every edge touching a `u1` or `u2` variable, in edge order.
    /// Edge order of these edges is the same for both graph forms.
    pub fn source_messages(&self) -> Vec<EdgeMessage> {
        let g = self.graph;
        (0..g.num_edges())
            .filter(|&e| g.vars()[g.edge_var(e)].role != VarRole::Z)
            .map(|e| EdgeMessage {
                var: g.edge_var(e),
                check: g.edge_check(e),
                to_check: self.to_check[e],
                to_var: self.to_var[e],
            })
            .collect()
    }

    /// Hard decisions for `u1` and `u2`.
    pub fn hard_decisions(&self) -> (Vec<u8>, Vec<u8>) {
        let n = self.graph.n();
        let bit = |x: &f64| u8::from(*x < 0.0);
        let u1 = self.posterior[..n].iter().map(bit).collect();
        let u2 = self.posterior[n..2 * n].iter().map(bit).collect();
        (u1, u2)
    }

    /// Number of checks violated by the current hard decisions, with
    /// `z_hat = u1_hat ^ u2_hat` feeding the correlation checks.
    pub fn unsatisfied_checks(&self) -> usize {
        let g = self.graph;
        let (u1, u2) = self.hard_decisions();
        let value = |v: usize| -> u8 {
            let node = g.vars()[v];
            match node.role {
                VarRole::U1 => u1[node.index],
                VarRole::U2 => u2[node.index],
                VarRole::Z => u1[node.index] ^ u2[node.index],
            }
        };
        g.checks()
            .iter()
            .enumerate()
            .filter(|&(c, node)| {
                let mut xor = g
                    .check_neighbours(c)
                    .iter()
                    .fold(0, |acc, &v| acc ^ value(v));
                if node.role == CheckRole::Correlation && g.z_var(node.index).is_none() {
                    // folded hidden bit
                    xor ^= u1[node.index] ^ u2[node.index];
                }
                xor != self.parity[c]
            })
            .count()
    }

    pub fn trace_line(&self) -> TraceLine {
        let mean =
            self.posterior.iter().map(|x| x.abs()).sum::<f64>() / self.posterior.len() as f64;
        TraceLine {
            iteration: self.iteration,
            unsatisfied_checks: self.unsatisfied_checks(),
            mean_abs_posterior: mean,
        }
    }

    pub fn result(&self) -> DecodeResult {
        let (u1_hat, u2_hat) = self.hard_decisions();
        let z_hat = u1_hat.iter().zip(&u2_hat).map(|(a, b)| a ^ b).collect();
        DecodeResult {
            u1_hat,
            u2_hat,
            z_hat,
            converged: self.unsatisfied_checks() == 0,
            iterations_used: self.iteration,
            posterior_llrs: self.posterior.clone(),
        }
    }
}

/// Decodes both sources from their syndromes.
///
/// Non-convergence is not an error: the result then carries
/// `converged = false` and the last hard decisions.
pub fn decode(
    graph: &JointTannerGraph,
    s1: &Syndrome,
    s2: &Syndrome,
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    decode_traced(graph, s1, s2, config, |_| {})
}

/// As [`decode`], reporting a [`TraceLine`] after every iteration.
pub fn decode_traced(
    graph: &JointTannerGraph,
    s1: &Syndrome,
    s2: &Syndrome,
    config: &DecoderConfig,
    mut trace: impl FnMut(&TraceLine),
) -> Result<DecodeResult> {
    config.validate()?;
    let mut session = Session::new(graph, s1, s2, config.damping)?;
    for _ in 0..config.max_iterations {
        session.step()?;
        let line = session.trace_line();
        trace(&line);
        if config.early_stop && line.unsatisfied_checks == 0 {
            break;
        }
    }
    Ok(session.result())
}
