//! Thin command-line wrapper around the library: generate parameters,
//! complete exchanges, attack transcripts, and run the timing benchmark.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use mobs::attack::{recover_key_with, AttackOptions};
use mobs::bench::{bench_harness, rows_to_csv, BenchConfig};
use mobs::json::{AttackReportJson, TranscriptJson};
use mobs::protocol::{complete_exchange, gen_params, sample_exponent};

#[derive(Parser)]
#[command(name = "mobs", version, about = "Bitstring-matrix key exchange and its key-recovery attack")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a parameter-and-exponents transcript skeleton
    Gen {
        /// Number of cycles; cycle lengths are the first t primes
        #[arg(long)]
        t: usize,
        /// Matrix dimension
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Private exponents are sampled from [2, 2^BITS)
        #[arg(long, default_value_t = 128)]
        exponent_bits: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Complete a transcript: compute A, B and the shared key
    Exchange {
        #[arg(long = "in")]
        input: PathBuf,
        /// Resample exponents from [2, 2^BITS); requires --seed
        #[arg(long)]
        exponent_bits: Option<u32>,
        /// Resample the private exponents from this seed
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover the shared key from a completed transcript
    Attack {
        #[arg(long = "in")]
        input: PathBuf,
        /// Where to write the attack report JSON
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluate candidate products only on each cycle's orbit words
        #[arg(long)]
        orbit_restricted: bool,
    },
    /// Time exchanges and attacks across parameter sizes, emitting CSV
    Bench {
        /// Comma-separated list of cycle counts, e.g. 9,12,16,22
        #[arg(long = "t-list", value_delimiter = ',', required = true)]
        t_list: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 128)]
        exponent_bits: u32,
        /// Write CSV here instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Run trials on a thread pool (seeds stay deterministic)
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        orbit_restricted: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Gen {
            t,
            n,
            seed,
            exponent_bits,
            out,
        } => {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let params = gen_params(t, n, &mut rng)?;
            let a = sample_exponent(exponent_bits, &mut rng)?;
            let b = sample_exponent(exponent_bits, &mut rng)?;
            let doc = TranscriptJson::skeleton(&params, Some(&a), Some(&b), seed, exponent_bits);
            fs::write(&out, doc.to_json_string())?;
            println!(
                "wrote skeleton: t={t} n={n} k={} -> {}",
                params.k(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Exchange {
            input,
            exponent_bits,
            seed,
            out,
        } => {
            let doc = TranscriptJson::from_json_str(&fs::read_to_string(&input)?)?;
            let params = doc.params()?;
            let (a, b, seed_used, bits_used) = match seed {
                Some(seed) => {
                    let bits = exponent_bits.unwrap_or(doc.exponent_bits);
                    let mut rng = ChaCha12Rng::seed_from_u64(seed);
                    let a = sample_exponent(bits, &mut rng)?;
                    let b = sample_exponent(bits, &mut rng)?;
                    (a, b, seed, bits)
                }
                None => {
                    let (a, b) = doc.exponents()?;
                    match (a, b) {
                        (Some(a), Some(b)) => (a, b, doc.seed()?, doc.exponent_bits),
                        _ => return Err(
                            "transcript has no exponents; pass --seed (and optionally --exponent-bits) to sample them"
                                .into(),
                        ),
                    }
                }
            };
            let transcript = complete_exchange(params, a, b, seed_used, bits_used);
            fs::write(&out, TranscriptJson::from_transcript(&transcript).to_json_string())?;
            println!(
                "completed exchange: k={} n={} -> {}",
                transcript.params.k(),
                transcript.params.n(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Attack {
            input,
            out,
            orbit_restricted,
        } => {
            let doc = TranscriptJson::from_json_str(&fs::read_to_string(&input)?)?;
            let transcript = doc.to_transcript()?;
            let options = AttackOptions {
                orbit_restricted_products: orbit_restricted,
                ..AttackOptions::default()
            };
            let started = Instant::now();
            let outcome = recover_key_with(
                transcript.params.g(),
                transcript.params.phi(),
                &transcript.alice_public,
                &transcript.bob_public,
                &options,
            );
            let seconds = started.elapsed().as_secs_f64();
            let (report, ok) = match outcome {
                Ok(result) => {
                    let matches_key = match &transcript.shared_key {
                        Some(key) => {
                            if *key != result.recovered_key {
                                eprintln!("recovered key differs from the transcript's K");
                            }
                            *key == result.recovered_key
                        }
                        None => true,
                    };
                    println!(
                        "attack succeeded in {seconds:.6} s: alpha = {} (mod {}), {} candidate products",
                        result.alpha,
                        result.modulus(),
                        result.products_evaluated
                    );
                    (AttackReportJson::from_result(&result), matches_key)
                }
                Err(failure) => {
                    eprintln!("attack failed after {seconds:.6} s: {failure}");
                    (AttackReportJson::failure(0), false)
                }
            };
            if let Some(path) = out {
                fs::write(&path, report.to_json_string())?;
                println!("report -> {}", path.display());
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Bench {
            t_list,
            n,
            trials,
            seed,
            exponent_bits,
            csv,
            parallel,
            orbit_restricted,
        } => {
            let cfg = BenchConfig {
                t_list,
                n,
                trials,
                seed,
                exponent_bits,
                parallel,
                attack_options: AttackOptions {
                    orbit_restricted_products: orbit_restricted,
                    ..AttackOptions::default()
                },
            };
            let rows = bench_harness(&cfg)?;
            let csv_text = rows_to_csv(&rows);
            match csv {
                Some(path) => {
                    fs::write(&path, &csv_text)?;
                    for r in &rows {
                        println!(
                            "t={} k={} trials={} avg_attack={:.6}s avg_exchange={:.6}s success={:.2} products_mean={:.1}",
                            r.t,
                            r.k,
                            r.trials,
                            r.avg_attack_seconds,
                            r.avg_exchange_seconds,
                            r.success_rate,
                            r.products_mean
                        );
                    }
                    println!("csv -> {}", path.display());
                }
                None => print!("{csv_text}"),
            }
            let all_succeeded = rows.iter().all(|r| r.success_rate == 1.0);
            Ok(if all_succeeded {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
