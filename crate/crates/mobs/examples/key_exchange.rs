//! One honest key exchange, end to end, at the experiment scale.
//!
//! Alice and Bob share `(g, phi)`, keep private exponents `a` and `b`, and
//! exchange only the matrix parts of `(g, phi)^a` and `(g, phi)^b`. Both
//! sides then derive the same key `phi^a(B) * A = phi^b(A) * B`.
//!
//! ```bash
//! cargo run -p mobs --example key_exchange
//! ```

use mobs::protocol::{derive_shared, simulate_exchange};
use mobs::semidirect::pow_matrix_iterative;
use num_traits::ToPrimitive;

fn main() {
    let transcript = simulate_exchange(9, 3, 128, 2024).unwrap();
    let params = &transcript.params;
    println!(
        "parameters: n = {}, k = {} (cycle lengths {:?})",
        params.n(),
        params.k(),
        params.cycle_lengths()
    );
    let a = transcript.alice_exponent.as_ref().unwrap();
    let b = transcript.bob_exponent.as_ref().unwrap();
    println!("alice's private exponent: {a}");
    println!("bob's   private exponent: {b}");

    let key_alice = derive_shared(params, a, &transcript.bob_public, &transcript.alice_public);
    let key_bob = derive_shared(params, b, &transcript.alice_public, &transcript.bob_public);
    assert_eq!(key_alice, key_bob);
    println!("\nboth derivations agree; shared key:");
    println!("{key_alice:?}");

    // For small exponents the transmitted value matches the literal
    // product expansion phi^(x-1)(g) * ... * phi(g) * g.
    let small = simulate_exchange(3, 2, 5, 7).unwrap();
    let x = small.alice_exponent.as_ref().unwrap();
    let expansion = pow_matrix_iterative(small.params.g(), small.params.phi(), x.to_u64().unwrap());
    assert_eq!(expansion, small.alice_public);
    println!("\nsmall-exponent cross-check against the literal product: ok (x = {x})");
}
