//! Key exchange over matrices of bitstrings, and the attack that breaks it.
//!
//! This crate implements both sides of a semidirect-product Diffie-Hellman
//! variant. The platform is the semigroup of `n x n` matrices whose entries
//! are width-`k` bitstrings with OR as addition and AND as multiplication,
//! twisted by bit-position permutations. It also implements the
//! polynomial-time passive attack against it: split the public permutation
//! into disjoint cycles, brute-force one residue per cycle (at most `k`
//! candidate products in total), recombine with a generalized Chinese
//! Remainder step, and read off the shared key.
//!
//! # Examples directory
//!
//! The `examples/` directory is the guided tour; each file is runnable on
//! its own:
//!
//! - **`semiring_matrices`** - bitstring and matrix arithmetic basics
//! - **`cycle_structure`** - permutations, cycle decomposition, orders
//! - **`key_exchange`** - one honest exchange, end to end
//! - **`recover_shared_key`** - the attack, step by step, on a fresh
//!   transcript
//! - **`transcript_files`** - the transcript and attack-report JSON formats
//! - **`orbit_restriction`** - measuring the orbit-restricted matching
//!   optimization
//! - **`timing_table`** - the full timing experiment across parameter sizes
//!
//! ```bash
//! cargo run --release -p mobs --example key_exchange
//! cargo run --release -p mobs --example recover_shared_key
//! cargo run --release -p mobs --example timing_table
//! ```
//!
//! There is also a thin `mobs` binary wrapping the same library calls in
//! `gen` / `exchange` / `attack` / `bench` subcommands for scripted use.
//!
//! # Quick start
//!
//! ```
//! use mobs::{attack, protocol};
//!
//! // Alice and Bob agree on parameters and exchange public matrices.
//! let transcript = protocol::simulate_exchange(9, 3, 128, 7).unwrap();
//!
//! // Eve sees only g, phi, A, B and recovers the shared key.
//! let result = attack::recover_key(
//!     transcript.params.g(),
//!     transcript.params.phi(),
//!     &transcript.alice_public,
//!     &transcript.bob_public,
//! )
//! .unwrap();
//! assert_eq!(Some(result.recovered_key), transcript.shared_key);
//! ```

use thiserror::Error as ThisError;

pub mod attack;
pub mod bench;
pub mod json;
pub mod perm;
pub mod protocol;
pub mod semidirect;
pub mod semiring;

pub use attack::{AttackFailure, AttackOptions, AttackResult, Congruence, CongruenceSystem};
pub use perm::{CycleDecomposition, Permutation};
pub use protocol::{Params, Transcript};
pub use semidirect::SemidirectElement;
pub use semiring::{BitMatrix, Bitstring};

/// Everything that can go wrong constructing or parsing values. Shape
/// mismatches in the middle of arithmetic are programming errors and panic
/// instead.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("bitstring width must be at least 1")]
    ZeroWidth,
    #[error("matrix dimension must be at least 1")]
    ZeroDimension,
    #[error("matrix entries must form a square grid")]
    RaggedMatrix,
    #[error("bitstring width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("invalid hex string {0:?}")]
    InvalidHex(String),
    #[error("hex string encodes {got} bytes but width {width} needs {expected}")]
    HexLength {
        got: usize,
        expected: usize,
        width: usize,
    },
    #[error("pad bits beyond position {width} must be zero")]
    NonZeroPadBits { width: usize },
    #[error("images do not form a permutation of 0..{degree}")]
    InvalidPermutation { degree: usize },
    #[error("cycle lengths sum to {sum}, exceeding degree {degree}")]
    CycleTypeTooLarge { sum: usize, degree: usize },
    #[error("nontrivial cycle lengths must be at least 2")]
    CycleLengthTooShort,
    #[error("permutation degree {degree} does not match bit width {width}")]
    DegreeWidthMismatch { degree: usize, width: usize },
    #[error("prescribed cycle type {prescribed:?} but phi has {actual:?}")]
    CycleTypeMismatch {
        prescribed: Vec<usize>,
        actual: Vec<usize>,
    },
    #[error("parameter generation needs at least one cycle")]
    ZeroCycles,
    #[error("exponent range [2, 2^{exponent_bits}) is empty")]
    ExponentRangeEmpty { exponent_bits: u32 },
    #[error("congruence residue {residue} invalid for modulus {modulus}")]
    InvalidCongruence { residue: u64, modulus: u64 },
    #[error("matrix must be {expected} x {expected}")]
    BadMatrixShape { expected: usize },
    #[error("field {field:?} holds {value:?}, expected a positive decimal integer")]
    BadDecimalField { field: String, value: String },
    #[error("transcript declares t = {declared} cycles but phi has {actual}")]
    CycleCountMismatch { declared: usize, actual: usize },
    #[error("transcript field {field:?} is null; run the exchange first")]
    IncompleteTranscript { field: &'static str },
    #[error("malformed CSV line {line}: {reason}")]
    BadCsv { line: usize, reason: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Attack(#[from] attack::AttackFailure),
}
