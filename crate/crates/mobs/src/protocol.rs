//! The honest-party key exchange.
//!
//! Two parties agree on a public pair `(g, phi)`, raise it to private
//! exponents inside the semidirect product, exchange only the matrix parts
//! `A` and `B`, and both arrive at the shared key `K = phi^a(B) * A =
//! phi^b(A) * B`. Parameters follow the prime-sum shape: the permutation's
//! cycle lengths are the first `t` primes and the bit width `k` is their sum.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::perm::Permutation;
use crate::semidirect::SemidirectElement;
use crate::semiring::BitMatrix;
use crate::Error;

/// Public parameters of one exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    k: usize,
    n: usize,
    g: BitMatrix,
    phi: Permutation,
    cycle_lengths: Vec<usize>,
}

impl Params {
    /// Validates that `g`, `phi` and the prescribed cycle type are mutually
    /// consistent. `cycle_lengths` is kept sorted.
    pub fn new(
        g: BitMatrix,
        phi: Permutation,
        cycle_lengths: Vec<usize>,
    ) -> Result<Self, Error> {
        if phi.degree() != g.width() {
            return Err(Error::DegreeWidthMismatch {
                degree: phi.degree(),
                width: g.width(),
            });
        }
        let mut prescribed = cycle_lengths;
        prescribed.sort_unstable();
        let mut actual = phi.cycle_decomposition().cycle_lengths();
        actual.sort_unstable();
        if prescribed != actual {
            return Err(Error::CycleTypeMismatch {
                prescribed,
                actual,
            });
        }
        Ok(Self {
            k: g.width(),
            n: g.dim(),
            g,
            phi,
            cycle_lengths: prescribed,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> &BitMatrix {
        &self.g
    }

    pub fn phi(&self) -> &Permutation {
        &self.phi
    }

    pub fn cycle_lengths(&self) -> &[usize] {
        &self.cycle_lengths
    }

    /// Number of nontrivial cycles of `phi`.
    pub fn t(&self) -> usize {
        self.cycle_lengths.len()
    }
}

/// The record of one exchange: public parameters and transmitted values,
/// plus the private exponents and shared key when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub params: Params,
    pub alice_public: BitMatrix,
    pub bob_public: BitMatrix,
    pub alice_exponent: Option<BigUint>,
    pub bob_exponent: Option<BigUint>,
    pub shared_key: Option<BitMatrix>,
    pub seed: u64,
    pub exponent_bits: u32,
}

/// The first `t` primes, the cycle lengths used by the experiments.
pub fn first_primes(t: usize) -> Vec<usize> {
    let mut primes = Vec::with_capacity(t);
    let mut candidate = 2usize;
    while primes.len() < t {
        if primes.iter().all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Generates parameters of the experiment shape: cycle lengths are the first
/// `t` primes, `k` is their sum (so `phi` has no fixed points), and `g` is a
/// uniformly random `n x n` matrix.
pub fn gen_params<R: Rng + ?Sized>(t: usize, n: usize, rng: &mut R) -> Result<Params, Error> {
    if t == 0 {
        return Err(Error::ZeroCycles);
    }
    let cycle_lengths = first_primes(t);
    let k: usize = cycle_lengths.iter().sum();
    let phi = Permutation::random_with_cycle_type(&cycle_lengths, k, rng)?;
    let g = BitMatrix::random(n, k, rng)?;
    Params::new(g, phi, cycle_lengths)
}

/// Computes the transmitted matrix `A` of `(g, phi)^x`; the permutation part
/// stays private. Panics when `x = 0`.
pub fn derive_public(params: &Params, x: &BigUint) -> BitMatrix {
    assert!(!x.is_zero(), "private exponent must be >= 1");
    SemidirectElement::new(params.g.clone(), params.phi.clone())
        .pow(x)
        .into_parts()
        .0
}

/// One party's shared-key derivation `phi^x(peer_public) * own_public`.
pub fn derive_shared(
    params: &Params,
    x: &BigUint,
    peer_public: &BitMatrix,
    own_public: &BitMatrix,
) -> BitMatrix {
    assert!(!x.is_zero(), "private exponent must be >= 1");
    params
        .phi
        .pow(x)
        .apply_to_matrix(peer_public)
        .mul(own_public)
}

/// Runs both sides of the exchange for the given private exponents and
/// checks that the two derivations agree.
///
/// Panics if the derivations disagree; that would be a bug in the algebra,
/// not a property of the input.
pub fn complete_exchange(
    params: Params,
    a: BigUint,
    b: BigUint,
    seed: u64,
    exponent_bits: u32,
) -> Transcript {
    let alice_public = derive_public(&params, &a);
    let bob_public = derive_public(&params, &b);
    let key_alice = derive_shared(&params, &a, &bob_public, &alice_public);
    let key_bob = derive_shared(&params, &b, &alice_public, &bob_public);
    assert_eq!(
        key_alice, key_bob,
        "key agreement failed; the semidirect algebra is broken"
    );
    Transcript {
        params,
        alice_public,
        bob_public,
        alice_exponent: Some(a),
        bob_exponent: Some(b),
        shared_key: Some(key_alice),
        seed,
        exponent_bits,
    }
}

/// Samples a private exponent uniformly from `[2, 2^exponent_bits)`.
pub fn sample_exponent<R: Rng + ?Sized>(exponent_bits: u32, rng: &mut R) -> Result<BigUint, Error> {
    if exponent_bits < 2 {
        return Err(Error::ExponentRangeEmpty { exponent_bits });
    }
    let low = BigUint::from(2u32);
    let high = BigUint::one() << exponent_bits;
    Ok(rng.gen_biguint_range(&low, &high))
}

/// Generates parameters and runs one full exchange, all randomness drawn
/// from a ChaCha12 stream seeded with `seed`. Draw order: `phi`, then `g`,
/// then `a`, then `b`, so equal seeds give byte-identical transcripts.
pub fn simulate_exchange(
    t: usize,
    n: usize,
    exponent_bits: u32,
    seed: u64,
) -> Result<Transcript, Error> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let params = gen_params(t, n, &mut rng)?;
    let a = sample_exponent(exponent_bits, &mut rng)?;
    let b = sample_exponent(exponent_bits, &mut rng)?;
    Ok(complete_exchange(params, a, b, seed, exponent_bits))
}
