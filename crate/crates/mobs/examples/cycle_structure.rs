//! Bit-position permutations: how they act on bitstrings, their disjoint
//! cycle decomposition, and the prime-sum cycle types the experiments use.
//!
//! ```bash
//! cargo run -p mobs --example cycle_structure
//! ```

use mobs::protocol::first_primes;
use mobs::{Bitstring, Permutation};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    // sigma moves bit i to position sigma(i).
    let sigma = Permutation::from_images(vec![1, 2, 0, 4, 3]).unwrap();
    let x = Bitstring::from_bits(&[true, true, false, true, false]).unwrap();
    println!("sigma images = {:?}", sigma.images());
    println!("x            = {x}");
    println!("sigma(x)     = {}", sigma.apply_to_bitstring(&x));

    let decomp = sigma.cycle_decomposition();
    println!("cycles       = {:?}", decomp.cycles());
    println!("fixed points = {:?}", decomp.fixed_points());
    println!("order        = {}", decomp.order());
    assert_eq!(decomp.recompose(), sigma);

    // Huge exponents reduce per cycle, so powering stays O(k).
    let e = BigUint::parse_bytes(b"340282366920938463463374607431768211457", 10).unwrap();
    println!("sigma^(2^128 + 1) = {:?}", sigma.pow(&e).images());

    // The experiment shape: cycle lengths are the first t primes, k their
    // sum, so the order is their product (about 2^101 at k = 791).
    let mut rng = ChaCha12Rng::seed_from_u64(9);
    for t in [9usize, 12, 16, 22] {
        let lengths = first_primes(t);
        let k: usize = lengths.iter().sum();
        let phi = Permutation::random_with_cycle_type(&lengths, k, &mut rng).unwrap();
        let order = phi.cycle_decomposition().order();
        println!("t = {t:2}  k = {k:3}  order(phi) = {order} (~2^{})", order.bits() - 1);
    }
}
