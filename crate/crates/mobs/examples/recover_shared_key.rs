//! The key-recovery attack, step by step, on a fresh transcript.
//!
//! Eve sees only the public data `(g, phi, A, B)`. She looks for an
//! exponent `alpha` with `phi^alpha(g) * A = phi(A) * g`; any such alpha
//! hands her the shared key as `phi^alpha(B) * A`. Because `phi`'s disjoint
//! cycles touch disjoint bit positions, she can search each cycle
//! independently (at most `k` candidate products in total) and stitch the
//! residues together with a Chinese Remainder step.
//!
//! ```bash
//! cargo run -p mobs --example recover_shared_key
//! ```

use mobs::attack::{attack_target, find_cycle_residues, recover_key};
use mobs::protocol::simulate_exchange;

fn main() {
    let transcript = simulate_exchange(9, 3, 128, 31337).unwrap();
    let params = &transcript.params;
    let g = params.g();
    let phi = params.phi();
    let a_pub = &transcript.alice_public;
    let b_pub = &transcript.bob_public;
    println!(
        "attacking a transcript with k = {}, n = {}; private exponents stay hidden",
        params.k(),
        params.n()
    );

    // Step 1: the matching target phi(A) * g.
    let target = attack_target(g, phi, a_pub);

    // Step 2: per-cycle residue search.
    let decomp = phi.cycle_decomposition();
    println!("\nphi has {} cycles of lengths {:?}", decomp.cycles().len(), decomp.cycle_lengths());
    for (j, cycle) in decomp.cycles().iter().enumerate() {
        let residues = find_cycle_residues(&decomp.lift_cycle(j), cycle, g, a_pub, &target);
        println!(
            "  cycle {j} (length {:2}): matching residues {residues:?}",
            cycle.len()
        );
    }

    // Step 3: the full pipeline (search + CRT + verification + assembly).
    let result = recover_key(g, phi, a_pub, b_pub).unwrap();
    println!("\nalpha = {} (mod {})", result.alpha, result.modulus());
    println!(
        "candidate products evaluated: {} (bound: k = {})",
        result.products_evaluated,
        params.k()
    );

    assert_eq!(Some(&result.recovered_key), transcript.shared_key.as_ref());
    println!("\nrecovered key equals the honest parties' shared key:");
    println!("{:?}", result.recovered_key);
}
