//! Sum-product on a cycle-free joint graph next to exact enumeration.
//!
//! cargo run --example exact_oracle

use swldpc::{
    brute_force_marginals, decode, sample_pair, syndrome, CorrelationModel, DecoderConfig,
    GraphForm, JointTannerGraph, SparseParityMatrix,
};

fn main() -> swldpc::Result<()> {
    let n = 6;
    // U1 reveals bits 0 and 3; both codes leave the rest to the correlation.
    let h1 = SparseParityMatrix::from_rows(n, vec![vec![0], vec![3], vec![1, 2]])?;
    let h2 = SparseParityMatrix::from_rows(n, vec![vec![0, 4], vec![3, 5], vec![2]])?;
    let model = CorrelationModel::new(0.9)?;
    let pair = sample_pair(&model, n, 12)?;
    let s1 = syndrome(&h1, &pair.u1)?;
    let s2 = syndrome(&h2, &pair.u2)?;

    let graph = JointTannerGraph::build(&h1, &h2, &model, GraphForm::FoldedZ)?;
    let config = DecoderConfig {
        max_iterations: 40,
        early_stop: false,
        ..Default::default()
    };
    let bp = decode(&graph, &s1, &s2, &config)?;
    let exact = brute_force_marginals(&h1, &h2, &model, &s1, &s2)?;

    println!("{} consistent pairs", exact.support);
    println!("{:>4} {:>14} {:>14}", "bit", "bp llr", "exact llr");
    for (k, (b, e)) in bp.posterior_llrs.iter().zip(exact.llrs()).enumerate() {
        let name = if k < n {
            format!("u1[{k}]")
        } else {
            format!("u2[{}]", k - n)
        };
        println!("{name:>6} {b:>14.9} {e:>14.9}");
    }
    println!("map u1 {:?}  u2 {:?}", exact.map_u1, exact.map_u2);
    println!("bp  u1 {:?}  u2 {:?}", bp.u1_hat, bp.u2_hat);
    Ok(())
}
