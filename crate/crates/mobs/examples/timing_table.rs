//! The timing experiment: average wall-clock time to recover a shared key,
//! across the prime-sum parameter sizes, 20 keys per size, n = 3.
//!
//! ```bash
//! cargo run --release -p mobs --example timing_table [trials]
//! ```

use mobs::bench::{bench_harness, rows_to_csv, BenchConfig};

fn main() {
    let trials = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("trials must be a number"))
        .unwrap_or(20);

    let cfg = BenchConfig::new(vec![9, 12, 16, 22], 3, trials, 0xBE5C);
    let rows = bench_harness(&cfg).unwrap();

    println!("{:>5} | {:>22} | {:>12} | {:>14}", "k", "avg attack time (s)", "success rate", "products (avg)");
    println!("{}", "-".repeat(63));
    for row in &rows {
        println!(
            "{:>5} | {:>22.6} | {:>12.2} | {:>14.1}",
            row.k, row.avg_attack_seconds, row.success_rate, row.products_mean
        );
    }

    println!("\ncsv:\n{}", rows_to_csv(&rows));
}
