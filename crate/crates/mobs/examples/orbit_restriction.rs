//! Measures the orbit-restricted matching optimization.
//!
//! Candidate products only ever get compared on one cycle's orbit, so the
//! product itself can be evaluated on just the words covering that orbit
//! instead of the full width. Results are identical; this run shows the
//! speed difference.
//!
//! ```bash
//! cargo run --release -p mobs --example orbit_restriction
//! ```

use std::time::Instant;

use mobs::attack::{recover_key_with, AttackOptions};
use mobs::protocol::simulate_exchange;

fn main() {
    const TRIALS: usize = 20;
    println!("{:>5} {:>6} {:>14} {:>14} {:>9}", "t", "k", "full (ms)", "orbit (ms)", "speedup");
    for t in [9usize, 12, 16, 22] {
        let transcripts: Vec<_> = (0..TRIALS)
            .map(|i| simulate_exchange(t, 3, 128, 7000 + i as u64).unwrap())
            .collect();
        let mut timings = [0.0f64; 2];
        let mut checks = Vec::new();
        for (slot, restricted) in [(0, false), (1, true)] {
            let options = AttackOptions {
                orbit_restricted_products: restricted,
                ..AttackOptions::default()
            };
            let started = Instant::now();
            for transcript in &transcripts {
                let result = recover_key_with(
                    transcript.params.g(),
                    transcript.params.phi(),
                    &transcript.alice_public,
                    &transcript.bob_public,
                    &options,
                )
                .unwrap();
                assert_eq!(Some(&result.recovered_key), transcript.shared_key.as_ref());
                checks.push(result.alpha);
            }
            timings[slot] = started.elapsed().as_secs_f64() / TRIALS as f64;
        }
        let (full, orbit) = (checks.len() / 2, checks.len());
        assert_eq!(checks[..full], checks[full..orbit], "same alphas either way");
        let k = transcripts[0].params.k();
        println!(
            "{t:>5} {k:>6} {:>14.3} {:>14.3} {:>8.1}x",
            timings[0] * 1e3,
            timings[1] * 1e3,
            timings[0] / timings[1]
        );
    }
}
