//! Monte Carlo behaviour of the full system. Every run uses a fixed master
//! seed, so the comparisons below reuse the same source pairs.

use std::sync::Arc;

use swldpc::{
    gallager_construct, run_trials, sweep, CorrelationModel, SimConfig, SparseParityMatrix,
};

fn asymmetric(p: f64, code2: &Arc<SparseParityMatrix>, trials: usize) -> SimConfig {
    SimConfig::asymmetric(
        CorrelationModel::new(p).unwrap(),
        Arc::clone(code2),
        trials,
        31,
    )
}

#[test]
fn more_syndrome_bits_never_hurt() {
    let n = 256;
    let base = gallager_construct(n, 3, 6, 21).unwrap();
    let richer = Arc::new(
        base.stack(&SparseParityMatrix::selector(n, 0..n / 4).unwrap())
            .unwrap(),
    );
    let base = Arc::new(base);
    let plain = run_trials(&asymmetric(0.9, &base, 1000)).unwrap();
    let more = run_trials(&asymmetric(0.9, &richer, 1000)).unwrap();
    assert_eq!(more.r2, 0.75);
    assert!(more.ber2 <= plain.ber2, "{more:?} vs {plain:?}");
    assert!(more.fer < plain.fer, "{more:?} vs {plain:?}");
}

#[test]
fn correlation_checks_help() {
    let code = Arc::new(gallager_construct(256, 3, 6, 22).unwrap());
    let enabled = asymmetric(0.95, &code, 1000);
    let disabled = SimConfig {
        correlation_enabled: false,
        ..enabled.clone()
    };
    let with = run_trials(&enabled).unwrap();
    let without = run_trials(&disabled).unwrap();
    assert!(with.ber2 < without.ber2, "{with:?} vs {without:?}");
    assert!(without.ber2 > 0.4, "{without:?}");
    assert_eq!(with.ber1, 0.0);
}

#[test]
fn outside_the_region_frames_fail() {
    let code = Arc::new(gallager_construct(1024, 3, 6, 23).unwrap());
    let record = run_trials(&asymmetric(0.85, &code, 60)).unwrap();
    assert!(record.sw_sum_slack < -0.05, "{record:?}");
    assert!(record.fer > 0.9, "{record:?}");
}

#[test]
fn errors_grow_as_correlation_weakens() {
    let code = Arc::new(gallager_construct(256, 3, 6, 24).unwrap());
    let configs: Vec<SimConfig> = [0.99, 0.96, 0.92, 0.88]
        .iter()
        .map(|&p| asymmetric(p, &code, 300))
        .collect();
    let records = sweep(&configs).unwrap();
    for w in records.windows(2) {
        assert!(w[0].ber2 <= w[1].ber2, "{:?} then {:?}", w[0], w[1]);
        assert!(w[0].fer <= w[1].fer, "{:?} then {:?}", w[0], w[1]);
    }
    assert!(records[0].fer < records[3].fer);
}
