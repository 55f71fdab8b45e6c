//! Build a regular LDPC code, inspect it, and round-trip it through alist.
//!
//! cargo run --example build_code -- [n] [dv] [dc] [seed]

use swldpc::code::{load_alist, save_alist};
use swldpc::gallager_construct;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let arg = |k: usize, default: usize| args.get(k).copied().unwrap_or(default);
    let (n, dv, dc, seed) = (arg(0, 24), arg(1, 3), arg(2, 6), arg(3, 1));

    let h = gallager_construct(n, dv, dc, seed as u64)?;
    println!("{} x {} matrix, {} ones", h.m(), h.n(), h.nnz());
    println!("design rate {}, GF(2) rank {}", h.rate(), h.rank_gf2());
    for (j, row) in h.rows().iter().enumerate().take(4) {
        println!("row {j}: {row:?}");
    }

    let text = save_alist(&h);
    assert_eq!(load_alist(&text)?, h);
    println!("\nalist ({} bytes), first lines:", text.len());
    for line in text.lines().take(6) {
        println!("  {line}");
    }
    Ok(())
}
