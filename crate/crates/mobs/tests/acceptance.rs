//! Acceptance suite: one test per criterion. Each prints a `PASS` line with
//! its measurements (visible with `cargo test --test acceptance -- --nocapture`).

use std::sync::LazyLock;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use mobs::attack::{
    attack_target, brute_force_recover, crt_combine, recover_key, recover_key_direct, Congruence,
    CongruenceSystem,
};
use mobs::json::{AttackReportJson, TranscriptJson};
use mobs::perm::Permutation;
use mobs::protocol::{derive_public, derive_shared, first_primes, simulate_exchange, Params};
use mobs::semidirect::{pow_matrix_iterative, SemidirectElement};
use mobs::semiring::{BitMatrix, Bitstring};

fn big(e: u64) -> BigUint {
    BigUint::from(e)
}

/// A transcript built directly from a prescribed cycle type, with known
/// exponents, for small-scale criteria.
fn transcript_with_type(
    lengths: &[usize],
    k: usize,
    n: usize,
    max_exponent: u64,
    seed: u64,
) -> (Params, BitMatrix, BitMatrix, BitMatrix) {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let phi = Permutation::random_with_cycle_type(lengths, k, &mut rng).unwrap();
    let g = BitMatrix::random(n, k, &mut rng).unwrap();
    let params = Params::new(g, phi, lengths.to_vec()).unwrap();
    let a = rng.gen_range(1..=max_exponent);
    let b = rng.gen_range(1..=max_exponent);
    let a_pub = derive_public(&params, &big(a));
    let b_pub = derive_public(&params, &big(b));
    let key = derive_shared(&params, &big(a), &b_pub, &a_pub);
    (params, a_pub, b_pub, key)
}

struct Trial {
    success: bool,
    products: usize,
    attack_seconds: f64,
}

struct ShapeRun {
    t: usize,
    k: usize,
    trials: Vec<Trial>,
}

/// The experiment-scale run, shared by criteria 2, 3 and 4: for each
/// t in {9, 12, 16, 22} (k in {100, 197, 381, 791}), n = 3, 20 seeded
/// trials of exchange + key recovery.
static EXPERIMENT_SCALE: LazyLock<Vec<ShapeRun>> = LazyLock::new(|| {
    [9usize, 12, 16, 22]
        .iter()
        .map(|&t| {
            let mut seed_rng = ChaCha12Rng::seed_from_u64(0xACCE_57ED ^ t as u64);
            let trials = (0..20)
                .map(|_| {
                    let transcript = simulate_exchange(t, 3, 128, seed_rng.gen()).unwrap();
                    let started = Instant::now();
                    let outcome = recover_key(
                        transcript.params.g(),
                        transcript.params.phi(),
                        &transcript.alice_public,
                        &transcript.bob_public,
                    );
                    let attack_seconds = started.elapsed().as_secs_f64();
                    let result = outcome.expect("honest transcripts must be recoverable");
                    Trial {
                        success: Some(&result.recovered_key)
                            == transcript.shared_key.as_ref(),
                        products: result.products_evaluated,
                        attack_seconds,
                    }
                })
                .collect();
            ShapeRun {
                t,
                k: first_primes(t).iter().sum(),
                trials,
            }
        })
        .collect()
});

#[test]
fn criterion_1_key_agreement() {
    let shapes = [(3usize, 2usize, 334usize), (9, 3, 333), (12, 3, 333)];
    let started = Instant::now();
    let mut runs = 0;
    for (t, n, count) in shapes {
        for i in 0..count {
            let seed = 0xAB00 + i as u64;
            let transcript = simulate_exchange(t, n, 128, seed).unwrap();
            let a = transcript.alice_exponent.as_ref().unwrap();
            let b = transcript.bob_exponent.as_ref().unwrap();
            let key_alice =
                derive_shared(&transcript.params, a, &transcript.bob_public, &transcript.alice_public);
            let key_bob =
                derive_shared(&transcript.params, b, &transcript.alice_public, &transcript.bob_public);
            assert_eq!(key_alice, key_bob, "t={t} n={n} seed={seed}");
            assert_eq!(Some(key_alice), transcript.shared_key);
            runs += 1;
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert_eq!(runs, 1000);
    assert!(
        elapsed < 60.0,
        "1000 exchanges took {elapsed:.1} s, budget is 60 s"
    );
    println!("criterion 1 (key agreement): PASS - 1000/1000 agreements in {elapsed:.2} s");
}

#[test]
fn criterion_2_attack_correctness_at_experiment_scale() {
    let expected_k = [100, 197, 381, 791];
    for (run, &k) in EXPERIMENT_SCALE.iter().zip(&expected_k) {
        assert_eq!(run.k, k);
        let successes = run.trials.iter().filter(|x| x.success).count();
        assert_eq!(
            successes,
            run.trials.len(),
            "t={} k={}: {}/{} keys recovered",
            run.t,
            run.k,
            successes,
            run.trials.len()
        );
    }
    println!(
        "criterion 2 (attack correctness at experiment scale): PASS - 20/20 recoveries at k in {expected_k:?}"
    );
}

#[test]
fn criterion_3_attack_timing() {
    // Reference wall-clock times for k in {100, 197, 381, 791}. A
    // word-packed native implementation runs far below them, so the check
    // is one-sided: no more than 100x slower, and monotone in k.
    let reference = [0.0878f64, 0.2374, 0.5325, 1.7000];
    let mut averages = Vec::new();
    for (run, &reference_seconds) in EXPERIMENT_SCALE.iter().zip(&reference) {
        let avg = run.trials.iter().map(|x| x.attack_seconds).sum::<f64>()
            / run.trials.len() as f64;
        assert!(
            avg <= 100.0 * reference_seconds,
            "k={}: avg {avg:.4} s exceeds 100x the reference {reference_seconds} s",
            run.k
        );
        assert!(avg > 0.0);
        averages.push((run.k, avg));
    }
    for pair in averages.windows(2) {
        assert!(
            pair[1].1 > pair[0].1,
            "attack time must increase with k: {averages:?}"
        );
    }
    let shown: Vec<String> = averages
        .iter()
        .map(|(k, avg)| format!("k={k}: {:.3} ms", avg * 1e3))
        .collect();
    println!(
        "criterion 3 (attack timing): PASS - monotone and within bound [{}]",
        shown.join(", ")
    );
}

#[test]
fn criterion_4_work_bound() {
    for run in EXPERIMENT_SCALE.iter() {
        for (i, trial) in run.trials.iter().enumerate() {
            assert!(
                trial.products <= run.k,
                "t={} trial {i}: {} products exceeds k={}",
                run.t,
                trial.products,
                run.k
            );
        }
    }
    println!("criterion 4 (work bound): PASS - candidate products <= k in all 80 trials");
}

#[test]
fn criterion_5_oracle_equivalence() {
    let started = Instant::now();
    // Mixed cycle types with k <= 12, n = 2, including non-coprime lengths
    // and fixed points.
    let shapes: &[(&[usize], usize)] = &[
        (&[2, 3], 5),
        (&[2, 4], 6),
        (&[2, 2, 3], 7),
        (&[3, 4], 7),
        (&[2, 2, 2], 6),
        (&[2, 5], 7),
        (&[3, 3], 6),
        (&[2, 3, 4], 9),
        (&[4, 6], 10),
        (&[2, 2, 4], 10),
        (&[12], 12),
        (&[2, 10], 12),
        (&[5, 7], 12),
        (&[2, 4], 8),
        (&[6, 6], 12),
        (&[2, 3], 8),
    ];
    for i in 0..200usize {
        let (lengths, k) = shapes[i % shapes.len()];
        let (params, a_pub, b_pub, key) =
            transcript_with_type(lengths, k, 2, 300, 0x5EED + i as u64);
        let via_crt = recover_key(params.g(), params.phi(), &a_pub, &b_pub)
            .unwrap_or_else(|e| panic!("instance {i} ({lengths:?}, k={k}): {e}"))
            .recovered_key;
        let via_direct = recover_key_direct(params.g(), params.phi(), &a_pub, &b_pub).unwrap();
        let via_scan = brute_force_recover(params.g(), params.phi(), &a_pub, &b_pub).unwrap();
        assert_eq!(via_crt, key, "instance {i}: CRT route");
        assert_eq!(via_direct, key, "instance {i}: direct route");
        assert_eq!(via_scan, key, "instance {i}: brute-force route");
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "took {elapsed:.1} s, budget is 30 s");
    println!(
        "criterion 5 (oracle equivalence): PASS - 200 instances, 3 routes agree, {elapsed:.2} s"
    );
}

#[test]
fn criterion_6_algebra_property_suite() {
    const CASES: usize = 500;
    let mut rng = ChaCha12Rng::seed_from_u64(0xA16EB12A);

    // Scalar semiring laws on width-70 bitstrings (crosses a word boundary).
    for _ in 0..CASES {
        let a = Bitstring::random(70, &mut rng).unwrap();
        let b = Bitstring::random(70, &mut rng).unwrap();
        let c = Bitstring::random(70, &mut rng).unwrap();
        let zero = Bitstring::zeros(70).unwrap();
        let one = Bitstring::ones(70).unwrap();
        assert_eq!(a.or(&b).or(&c), a.or(&b.or(&c)));
        assert_eq!(a.and(&b).and(&c), a.and(&b.and(&c)));
        assert_eq!(a.or(&b), b.or(&a));
        assert_eq!(a.and(&b), b.and(&a));
        assert_eq!(a.and(&b.or(&c)), a.and(&b).or(&a.and(&c)));
        assert_eq!(zero.or(&a), a);
        assert_eq!(one.and(&a), a);
        assert_eq!(zero.and(&a), zero);
        assert_eq!(one.or(&a), one);
    }

    // Matrix product associativity, 3x3 over width 16.
    for _ in 0..CASES {
        let x = BitMatrix::random(3, 16, &mut rng).unwrap();
        let y = BitMatrix::random(3, 16, &mut rng).unwrap();
        let z = BitMatrix::random(3, 16, &mut rng).unwrap();
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    fn random_perm(k: usize, rng: &mut ChaCha12Rng) -> Permutation {
        let mut images: Vec<usize> = (0..k).collect();
        rand::seq::SliceRandom::shuffle(&mut images[..], rng);
        Permutation::from_images(images).unwrap()
    }

    // Action homomorphism and automorphism law.
    for _ in 0..CASES {
        let k = rng.gen_range(1..=24);
        let s = random_perm(k, &mut rng);
        let t = random_perm(k, &mut rng);
        let x = Bitstring::random(k, &mut rng).unwrap();
        assert_eq!(
            s.compose(&t).apply_to_bitstring(&x),
            s.apply_to_bitstring(&t.apply_to_bitstring(&x))
        );
        let m1 = BitMatrix::random(2, k, &mut rng).unwrap();
        let m2 = BitMatrix::random(2, k, &mut rng).unwrap();
        assert_eq!(
            s.apply_to_matrix(&m1.mul(&m2)),
            s.apply_to_matrix(&m1).mul(&s.apply_to_matrix(&m2))
        );
    }

    // Twisted-product associativity, 3x3 over width 16.
    for _ in 0..CASES {
        let element = |rng: &mut ChaCha12Rng| {
            SemidirectElement::new(
                BitMatrix::random(3, 16, rng).unwrap(),
                random_perm(16, rng),
            )
        };
        let x = element(&mut rng);
        let y = element(&mut rng);
        let z = element(&mut rng);
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    // Fast power against the literal product expansion.
    for _ in 0..CASES {
        let x = SemidirectElement::new(
            BitMatrix::random(2, 12, &mut rng).unwrap(),
            random_perm(12, &mut rng),
        );
        let a = rng.gen_range(1u64..=64);
        assert_eq!(
            *x.pow(&big(a)).mat(),
            pow_matrix_iterative(x.mat(), x.perm(), a)
        );
    }

    println!(
        "criterion 6 (algebra property suite): PASS - {CASES} cases per law, zero failures"
    );
}

#[test]
fn criterion_7_soundness_of_condition() {
    // On honest transcripts, every alpha satisfying the matching condition
    // must reproduce the shared key; checked exhaustively over a full
    // period of phi.
    let shapes: &[(&[usize], usize)] = &[
        (&[2, 3, 4], 9),
        (&[2, 3, 5], 10),
        (&[3, 5], 8),
        (&[2, 7], 9),
        (&[4, 6], 10),
    ];
    let mut total_matches = 0u64;
    for i in 0..100usize {
        let (lengths, k) = shapes[i % shapes.len()];
        let (params, a_pub, b_pub, key) =
            transcript_with_type(lengths, k, 2, 200, 0xC0DE + i as u64);
        let target = attack_target(params.g(), params.phi(), &a_pub);
        let order = params
            .phi()
            .cycle_decomposition()
            .order()
            .to_u64()
            .unwrap();
        let mut matches = 0;
        for alpha in 0..order {
            let psi = params.phi().pow(&big(alpha));
            if psi.apply_to_matrix(params.g()).mul(&a_pub) == target {
                matches += 1;
                assert_eq!(
                    psi.apply_to_matrix(&b_pub).mul(&a_pub),
                    key,
                    "instance {i}, alpha={alpha}: condition held but key differs"
                );
            }
        }
        assert!(matches >= 1, "instance {i}: no alpha matched");
        total_matches += matches;
    }
    println!(
        "criterion 7 (soundness of condition): PASS - 100 transcripts, {total_matches} matching exponents, all yield K"
    );
}

#[test]
fn criterion_8_generalized_crt() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xC27);
    let mut solvable = 0;
    let mut unsolvable = 0;
    for case in 0..1000 {
        let count = rng.gen_range(1..=4);
        let entries: Vec<Congruence> = (0..count)
            .map(|_| {
                let modulus = rng.gen_range(2u64..=30);
                Congruence {
                    residue: rng.gen_range(0..modulus),
                    modulus,
                }
            })
            .collect();
        let system = CongruenceSystem::new(entries).unwrap();
        let lcm = system.lcm().to_u64().unwrap();
        let scan = (0..lcm).find(|&x| {
            system
                .entries()
                .iter()
                .all(|c| x % c.modulus == c.residue)
        });
        match (crt_combine(&system), scan) {
            (Some((alpha, modulus)), Some(expected)) => {
                assert_eq!(alpha, big(expected), "case {case}: wrong least solution");
                assert_eq!(modulus, big(lcm), "case {case}: wrong modulus");
                solvable += 1;
            }
            (None, None) => unsolvable += 1,
            (got, want) => panic!("case {case}: solvability mismatch {got:?} vs {want:?}"),
        }
    }
    assert!(unsolvable > 0, "random stream must include incompatible systems");
    // And a pinned incompatible system.
    let parity_conflict = CongruenceSystem::new(vec![
        Congruence { residue: 0, modulus: 2 },
        Congruence { residue: 1, modulus: 4 },
    ])
    .unwrap();
    assert_eq!(crt_combine(&parity_conflict), None);
    println!(
        "criterion 8 (generalized CRT): PASS - 1000 systems vs scan ({solvable} solvable, {unsolvable} unsolvable)"
    );
}

#[test]
fn criterion_9_serialization() {
    // Pinned hex bit-order vector: k=10, only bit 9 set -> bytes 00 02.
    let mut x = Bitstring::zeros(10).unwrap();
    x.set(9);
    assert_eq!(x.to_hex(), "0002");
    assert_eq!(Bitstring::from_hex("0002", 10).unwrap(), x);

    // Transcript round trip, bit exact.
    let transcript = simulate_exchange(9, 3, 128, 0x10AD).unwrap();
    let doc = TranscriptJson::from_transcript(&transcript);
    let json = doc.to_json_string();
    let reparsed = TranscriptJson::from_json_str(&json).unwrap();
    assert_eq!(json, reparsed.to_json_string());
    assert_eq!(reparsed.to_transcript().unwrap(), transcript);

    // Attack report round trip, bit exact.
    let result = recover_key(
        transcript.params.g(),
        transcript.params.phi(),
        &transcript.alice_public,
        &transcript.bob_public,
    )
    .unwrap();
    let report = AttackReportJson::from_result(&result);
    let report_json = report.to_json_string();
    let reparsed = AttackReportJson::from_json_str(&report_json).unwrap();
    assert_eq!(report_json, reparsed.to_json_string());
    assert_eq!(report, reparsed);

    println!("criterion 9 (serialization): PASS - fixed vector and bit-exact round trips");
}
