//! Slepian-Wolf bounds for a few correlation strengths, and where some
//! concrete rate pairs fall.
//!
//! cargo run --example entropy_bounds

use swldpc::{sw_region_check, CorrelationModel, RatePair};

fn main() -> swldpc::Result<()> {
    println!(
        "{:>6} {:>10} {:>10} {:>10}",
        "p", "H(U1|U2)", "H(U1,U2)", "LLR"
    );
    for p in [0.5, 0.7, 0.85, 0.9, 0.95, 0.99] {
        let m = CorrelationModel::new(p)?;
        println!(
            "{p:>6} {:>10.6} {:>10.6} {:>10.6}",
            m.conditional_entropy(),
            m.joint_entropy(),
            m.hidden_llr().value()
        );
    }

    let m = CorrelationModel::new(0.9)?;
    println!("\nrate pairs at p = 0.9");
    for (r1, r2) in [(1.0, 0.5), (0.75, 0.75), (0.5, 0.5), (1.0, 0.4)] {
        let c = sw_region_check(&m, RatePair::new(r1, r2)?);
        println!(
            "({r1}, {r2}): admissible={} slack r1 {:+.4} r2 {:+.4} sum {:+.4}",
            c.admissible, c.slack_r1, c.slack_r2, c.slack_sum
        );
    }
    Ok(())
}
