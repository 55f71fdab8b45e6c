//! Corner-point waterfall: U1 sent uncompressed, U2 compressed to half rate
//! by a (3,6)-regular code, swept over the correlation parameter. A second
//! sweep runs the same trials with the correlation checks switched off.
//!
//! cargo run --release --example waterfall -- [trials] [n]

use std::sync::Arc;

use swldpc::{gallager_construct, sweep, write_csv, CorrelationModel, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1024);

    let code = Arc::new(gallager_construct(n, 3, 6, 7)?);
    let ps = [0.99, 0.97, 0.96, 0.95, 0.94, 0.93, 0.92, 0.90, 0.88, 0.85];
    let configs: Vec<SimConfig> = ps
        .iter()
        .map(|&p| {
            Ok(SimConfig::asymmetric(
                CorrelationModel::new(p)?,
                Arc::clone(&code),
                trials,
                2024,
            ))
        })
        .collect::<swldpc::Result<_>>()?;

    println!("# correlation checks enabled");
    print!("{}", write_csv(&sweep(&configs)?));

    let blind: Vec<SimConfig> = configs
        .into_iter()
        .map(|c| SimConfig {
            correlation_enabled: false,
            ..c
        })
        .collect();
    println!("# correlation checks disabled (hidden LLR 0)");
    print!("{}", write_csv(&sweep(&blind)?));
    Ok(())
}
