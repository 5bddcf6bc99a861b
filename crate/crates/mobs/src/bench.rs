//! Timing harness for the attack across parameter sizes.
//!
//! One [`BenchRow`] per `t`: it times the exchange and the key recovery
//! separately (recovery timing covers `recover_key` only, no instance
//! generation or I/O) and records the success rate and the mean number of
//! candidate products.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::attack::{recover_key_with, AttackOptions};
use crate::protocol::{first_primes, simulate_exchange};
use crate::Error;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub t_list: Vec<usize>,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub exponent_bits: u32,
    /// Run the trials of each row on a thread pool. Seeds are derived
    /// up front so results are identical to the sequential order; only the
    /// wall-clock comparability suffers.
    pub parallel: bool,
    pub attack_options: AttackOptions,
}

impl BenchConfig {
    pub fn new(t_list: Vec<usize>, n: usize, trials: usize, seed: u64) -> Self {
        Self {
            t_list,
            n,
            trials,
            seed,
            exponent_bits: 128,
            parallel: false,
            attack_options: AttackOptions::default(),
        }
    }
}

/// Aggregated measurements for one parameter shape.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    pub trials: usize,
    pub avg_attack_seconds: f64,
    pub avg_exchange_seconds: f64,
    pub success_rate: f64,
    pub products_mean: f64,
}

struct Trial {
    success: bool,
    attack_seconds: f64,
    exchange_seconds: f64,
    products: usize,
}

fn run_trial(
    t: usize,
    n: usize,
    exponent_bits: u32,
    seed: u64,
    options: &AttackOptions,
) -> Result<Trial, Error> {
    let started = Instant::now();
    let transcript = simulate_exchange(t, n, exponent_bits, seed)?;
    let exchange_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let outcome = recover_key_with(
        transcript.params.g(),
        transcript.params.phi(),
        &transcript.alice_public,
        &transcript.bob_public,
        options,
    );
    let attack_seconds = started.elapsed().as_secs_f64();

    Ok(match outcome {
        Ok(result) => Trial {
            success: Some(&result.recovered_key) == transcript.shared_key.as_ref(),
            attack_seconds,
            exchange_seconds,
            products: result.products_evaluated,
        },
        Err(_) => Trial {
            success: false,
            attack_seconds,
            exchange_seconds,
            products: 0,
        },
    })
}

/// Runs `cfg.trials` seeded exchanges and attacks for every `t` in the
/// list. The instance stream is fully determined by `cfg.seed`.
pub fn bench_harness(cfg: &BenchConfig) -> Result<Vec<BenchRow>, Error> {
    assert!(cfg.trials >= 1, "benchmark needs at least one trial");
    let mut seed_stream = ChaCha12Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.t_list.len());
    for &t in &cfg.t_list {
        let trial_seeds: Vec<u64> = (0..cfg.trials).map(|_| seed_stream.gen()).collect();
        let trials: Vec<Trial> = if cfg.parallel {
            trial_seeds
                .par_iter()
                .map(|&s| run_trial(t, cfg.n, cfg.exponent_bits, s, &cfg.attack_options))
                .collect::<Result<_, _>>()?
        } else {
            trial_seeds
                .iter()
                .map(|&s| run_trial(t, cfg.n, cfg.exponent_bits, s, &cfg.attack_options))
                .collect::<Result<_, _>>()?
        };
        let count = trials.len() as f64;
        rows.push(BenchRow {
            k: first_primes(t).iter().sum(),
            n: cfg.n,
            t,
            trials: cfg.trials,
            avg_attack_seconds: trials.iter().map(|x| x.attack_seconds).sum::<f64>() / count,
            avg_exchange_seconds: trials.iter().map(|x| x.exchange_seconds).sum::<f64>() / count,
            success_rate: trials.iter().filter(|x| x.success).count() as f64 / count,
            products_mean: trials.iter().map(|x| x.products as f64).sum::<f64>() / count,
        });
    }
    Ok(rows)
}

pub const CSV_HEADER: &str =
    "k,n,t,trials,avg_attack_seconds,avg_exchange_seconds,success_rate,products_mean";

/// Renders rows as CSV. Floats use Rust's shortest round-trip formatting,
/// so parsing the output reproduces the rows exactly.
pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.k,
            r.n,
            r.t,
            r.trials,
            r.avg_attack_seconds,
            r.avg_exchange_seconds,
            r.success_rate,
            r.products_mean
        ));
    }
    out
}

pub fn rows_from_csv(text: &str) -> Result<Vec<BenchRow>, Error> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        _ => {
            return Err(Error::BadCsv {
                line: 1,
                reason: format!("expected header {CSV_HEADER:?}"),
            })
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let bad = |reason: &str| Error::BadCsv {
            line: idx + 1,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(bad("expected 8 fields"));
        }
        let row = BenchRow {
            k: fields[0].parse().map_err(|_| bad("k"))?,
            n: fields[1].parse().map_err(|_| bad("n"))?,
            t: fields[2].parse().map_err(|_| bad("t"))?,
            trials: fields[3].parse().map_err(|_| bad("trials"))?,
            avg_attack_seconds: fields[4].parse().map_err(|_| bad("avg_attack_seconds"))?,
            avg_exchange_seconds: fields[5].parse().map_err(|_| bad("avg_exchange_seconds"))?,
            success_rate: fields[6].parse().map_err(|_| bad("success_rate"))?,
            products_mean: fields[7].parse().map_err(|_| bad("products_mean"))?,
        };
        if row.trials == 0 {
            return Err(bad("trials must be at least 1"));
        }
        if !(0.0..=1.0).contains(&row.success_rate) {
            return Err(bad("success_rate out of [0, 1]"));
        }
        if row.avg_attack_seconds < 0.0 || row.avg_exchange_seconds < 0.0 {
            return Err(bad("negative timing"));
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench_runs_and_round_trips() {
        let cfg = BenchConfig::new(vec![2, 3], 2, 3, 42);
        let rows = bench_harness(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].k, 5);
        assert_eq!(rows[1].k, 10);
        for r in &rows {
            assert_eq!(r.success_rate, 1.0);
            assert!(r.products_mean <= r.k as f64);
        }
        let csv = rows_to_csv(&rows);
        assert_eq!(rows_from_csv(&csv).unwrap(), rows);
    }

    #[test]
    fn single_trial_rate_is_zero_or_one() {
        let cfg = BenchConfig::new(vec![2], 1, 1, 7);
        let rows = bench_harness(&cfg).unwrap();
        assert!(rows[0].success_rate == 0.0 || rows[0].success_rate == 1.0);
    }

    #[test]
    fn parallel_matches_sequential_results() {
        let mut cfg = BenchConfig::new(vec![3], 2, 4, 11);
        let sequential = bench_harness(&cfg).unwrap();
        cfg.parallel = true;
        let parallel = bench_harness(&cfg).unwrap();
        assert_eq!(sequential[0].success_rate, parallel[0].success_rate);
        assert_eq!(sequential[0].products_mean, parallel[0].products_mean);
        assert_eq!(sequential[0].k, parallel[0].k);
    }

    #[test]
    fn csv_rejects_malformed_input() {
        assert!(matches!(
            rows_from_csv("nope\n"),
            Err(Error::BadCsv { line: 1, .. })
        ));
        let bad_row = format!("{CSV_HEADER}\n1,2,3\n");
        assert!(matches!(
            rows_from_csv(&bad_row),
            Err(Error::BadCsv { line: 2, .. })
        ));
        let bad_rate = format!("{CSV_HEADER}\n5,2,2,3,0.1,0.1,1.5,4\n");
        assert!(rows_from_csv(&bad_rate).is_err());
    }
}
