//! The on-disk formats: transcript documents and attack reports.
//!
//! A skeleton holds the public parameters and sampled exponents; completing
//! it fills in `A`, `B` and `K`. The attack consumes a completed document
//! and emits a report. The same files drive the `mobs` binary's `gen`,
//! `exchange` and `attack` subcommands.
//!
//! ```bash
//! cargo run -p mobs --example transcript_files
//! ```

use mobs::attack::recover_key;
use mobs::json::{AttackReportJson, TranscriptJson};
use mobs::protocol::{complete_exchange, gen_params, sample_exponent};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let dir = std::env::temp_dir().join("mobs_transcript_example");
    std::fs::create_dir_all(&dir).unwrap();

    // Parameter skeleton, as `mobs gen` writes it.
    let seed = 424242;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let params = gen_params(5, 2, &mut rng).unwrap();
    let a = sample_exponent(64, &mut rng).unwrap();
    let b = sample_exponent(64, &mut rng).unwrap();
    let skeleton = TranscriptJson::skeleton(&params, Some(&a), Some(&b), seed, 64);
    let skeleton_path = dir.join("skeleton.json");
    std::fs::write(&skeleton_path, skeleton.to_json_string()).unwrap();
    println!("skeleton -> {}", skeleton_path.display());

    // Complete the exchange and write the full transcript.
    let transcript = complete_exchange(params, a, b, seed, 64);
    let doc = TranscriptJson::from_transcript(&transcript);
    let transcript_path = dir.join("transcript.json");
    std::fs::write(&transcript_path, doc.to_json_string()).unwrap();
    println!("completed transcript -> {}", transcript_path.display());

    // Read it back; the round trip is bit-exact.
    let reread = TranscriptJson::from_json_str(
        &std::fs::read_to_string(&transcript_path).unwrap(),
    )
    .unwrap();
    assert_eq!(reread.to_transcript().unwrap(), transcript);
    println!("round trip: bit-exact");

    // Attack from the file contents alone and write the report.
    let loaded = reread.to_transcript().unwrap();
    let result = recover_key(
        loaded.params.g(),
        loaded.params.phi(),
        &loaded.alice_public,
        &loaded.bob_public,
    )
    .unwrap();
    assert_eq!(Some(&result.recovered_key), loaded.shared_key.as_ref());
    let report = AttackReportJson::from_result(&result);
    let report_path = dir.join("report.json");
    std::fs::write(&report_path, report.to_json_string()).unwrap();
    println!("attack report -> {}", report_path.display());
    println!("\n{}", report.to_json_string());
}
