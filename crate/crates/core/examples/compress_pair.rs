//! End to end: draw a correlated pair, compress each source with its own
//! code, and recover both from the two syndromes.
//!
//! cargo run --release --example compress_pair -- [p] [n] [seed]

use swldpc::sim::split_codes;
use swldpc::{
    decode, gallager_construct, sample_pair, sw_region_check, syndrome, CorrelationModel,
    DecoderConfig, GraphForm, JointTannerGraph, RatePair, SparseParityMatrix,
};

fn errors(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn run(
    label: &str,
    h1: &SparseParityMatrix,
    h2: &SparseParityMatrix,
    model: &CorrelationModel,
    seed: u64,
) -> swldpc::Result<()> {
    let n = h1.n();
    let pair = sample_pair(model, n, seed)?;
    let s1 = syndrome(h1, &pair.u1)?;
    let s2 = syndrome(h2, &pair.u2)?;
    let (r1, r2) = (s1.len() as f64 / n as f64, s2.len() as f64 / n as f64);
    let check = sw_region_check(model, RatePair::new(r1, r2)?);

    let graph = JointTannerGraph::build(h1, h2, model, GraphForm::FoldedZ)?;
    let result = decode(&graph, &s1, &s2, &DecoderConfig::default())?;
    println!(
        "{label}: {} + {} syndrome bits for {} + {} source bits",
        s1.len(),
        s2.len(),
        n,
        n
    );
    println!("  rates ({r1}, {r2}), sum slack {:+.4}", check.slack_sum);
    println!(
        "  converged={} after {} iterations, errors u1={} u2={}",
        result.converged,
        result.iterations_used,
        errors(&result.u1_hat, &pair.u1),
        errors(&result.u2_hat, &pair.u2)
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.95);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1024);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let model = CorrelationModel::new(p)?;
    println!(
        "p = {p}, H(U1,U2) = {:.4} bits per pair\n",
        model.joint_entropy()
    );

    // U1 is sent as is, U2 is compressed to half its length.
    let h2 = gallager_construct(n, 3, 6, seed)?;
    run(
        "corner point",
        &SparseParityMatrix::identity(n),
        &h2,
        &model,
        seed,
    )?;

    // Each source sends half its bits plus half the syndrome of a shared code.
    let (h1, h2) = split_codes(n, 3, 6, seed)?;
    run("symmetric split", &h1, &h2, &model, seed)?;
    Ok(())
}
