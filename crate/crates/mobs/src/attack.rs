//! Key recovery from a transcript alone.
//!
//! The attacker sees `g`, `phi`, `A`, `B` and wants the shared key without
//! either private exponent. It is enough to find any exponent `alpha` with
//! `phi^alpha(g) * A = phi(A) * g`: the telescoping identity then gives
//! `phi^alpha(B) * A = K`. Alice's own exponent is a witness, so a solution
//! always exists for honest transcripts.
//!
//! Because `phi`'s disjoint cycles act on disjoint bit positions, the
//! matching condition splits per cycle: scan the at most `|sigma_j|` powers
//! of each cycle, collect every residue that matches on that cycle's orbit,
//! and combine one residue per cycle with a generalized Chinese Remainder
//! step. The total work is at most `k` candidate matrix products.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error as ThisError;

use crate::perm::Permutation;
use crate::semiring::BitMatrix;
use crate::Error;

/// One congruence `alpha = residue (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub residue: u64,
    pub modulus: u64,
}

/// A system of congruences with its least common modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSystem {
    entries: Vec<Congruence>,
    lcm: BigUint,
}

impl CongruenceSystem {
    /// Validates `0 <= residue < modulus` and `modulus >= 2` for every
    /// entry. An empty system is allowed and has modulus 1.
    pub fn new(entries: Vec<Congruence>) -> Result<Self, Error> {
        let mut lcm = BigUint::one();
        for c in &entries {
            if c.modulus < 2 || c.residue >= c.modulus {
                return Err(Error::InvalidCongruence {
                    residue: c.residue,
                    modulus: c.modulus,
                });
            }
            lcm = lcm.lcm(&BigUint::from(c.modulus));
        }
        Ok(Self { entries, lcm })
    }

    pub fn entries(&self) -> &[Congruence] {
        &self.entries
    }

    pub fn lcm(&self) -> &BigUint {
        &self.lcm
    }
}

/// Why a key recovery gave up. None of these are crashes: they classify
/// inputs that cannot have come from an honest exchange (or, for
/// [`AttackFailure::OrderTooLarge`], an oracle misuse).
#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum AttackFailure {
    #[error("no residue matches the target on cycle {cycle_index} (length {cycle_len})")]
    NoResidueForCycle {
        cycle_index: usize,
        cycle_len: usize,
    },
    #[error("the per-cycle residue sets admit no CRT-compatible combination")]
    NoCompatibleResidues,
    #[error("candidate exponent failed final verification against phi(A)g")]
    VerificationFailed,
    #[error("permutation order {order} is too large to enumerate")]
    OrderTooLarge { order: BigUint },
}

/// Tuning knobs for [`recover_key_with`]. The defaults match the plain
/// procedure: full-matrix candidate products and the fixed-point sanity
/// check enabled.
#[derive(Clone, Copy, Debug)]
pub struct AttackOptions {
    /// Evaluate candidate products only on the words covering the current
    /// cycle's orbit instead of materializing the full product. Sound
    /// because OR and AND are positionwise; changes speed, never results.
    pub orbit_restricted_products: bool,
    /// Also compare `g * A` against the target on `phi`'s fixed bit
    /// positions. Honest transcripts always agree there; a mismatch is
    /// reported in the result but never aborts the attack.
    pub check_fixed_points: bool,
}

impl Default for AttackOptions {
    fn default() -> Self {
        Self {
            orbit_restricted_products: false,
            check_fixed_points: true,
        }
    }
}

/// Everything the attack recovered from one transcript.
#[derive(Clone, Debug)]
pub struct AttackResult {
    /// The least non-negative exponent satisfying all chosen congruences.
    pub alpha: BigUint,
    /// The chosen residue per cycle; its lcm is the modulus of `alpha`.
    pub residues: CongruenceSystem,
    /// `phi^alpha(B) * A`, equal to the shared key on honest transcripts.
    pub recovered_key: BitMatrix,
    /// Candidate matrix products evaluated; at most `k`.
    pub products_evaluated: usize,
    /// Outcome of the fixed-point sanity check, when it ran.
    pub fixed_points_consistent: Option<bool>,
}

impl AttackResult {
    /// The modulus `alpha` is determined to: the lcm of the cycle lengths
    /// that produced it.
    pub fn modulus(&self) -> &BigUint {
        self.residues.lcm()
    }
}

/// The matching target `phi(A) * g`. A power `phi^alpha(g) * A` that equals
/// this is the handle on the shared key.
pub fn attack_target(g: &BitMatrix, phi: &Permutation, alice_public: &BitMatrix) -> BitMatrix {
    phi.apply_to_matrix(alice_public).mul(g)
}

/// Per-word masks covering a set of bit positions.
fn position_masks(positions: &[usize]) -> Vec<(usize, u64)> {
    let mut masks: Vec<(usize, u64)> = Vec::new();
    for &p in positions {
        let word = p / 64;
        let bit = 1u64 << (p % 64);
        match masks.iter_mut().find(|(w, _)| *w == word) {
            Some((_, m)) => *m |= bit,
            None => masks.push((word, bit)),
        }
    }
    masks.sort_unstable_by_key(|&(w, _)| w);
    masks
}

/// Rotates, in every entry of `m`, the bit at `cycle[i]` into `cycle[i+1]`.
/// This is exactly one application of the lifted cycle permutation, in
/// `O(|cycle|)` per entry.
fn rotate_cycle_bits(m: &mut BitMatrix, cycle: &[usize]) {
    let dim = m.dim();
    for i in 0..dim {
        for j in 0..dim {
            let entry = m.entry_mut(i, j);
            let mut carry = entry.get(cycle[cycle.len() - 1]);
            for &pos in cycle {
                let tmp = entry.get(pos);
                entry.assign(pos, carry);
                carry = tmp;
            }
        }
    }
}

/// True when `lhs * rhs` agrees with `target` on every masked bit. Computes
/// only the masked words of the product.
fn masked_product_agrees(
    lhs: &BitMatrix,
    rhs: &BitMatrix,
    target: &BitMatrix,
    masks: &[(usize, u64)],
) -> bool {
    let dim = lhs.dim();
    for i in 0..dim {
        for j in 0..dim {
            let target_words = target.entry(i, j).words();
            for &(w, mask) in masks {
                let mut acc = 0u64;
                for l in 0..dim {
                    acc |= lhs.entry(i, l).words()[w] & rhs.entry(l, j).words()[w];
                }
                if (acc ^ target_words[w]) & mask != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// True when `product` agrees with `target` on every masked bit.
fn masked_agrees(product: &BitMatrix, target: &BitMatrix, masks: &[(usize, u64)]) -> bool {
    product
        .entries()
        .iter()
        .zip(target.entries())
        .all(|(p, t)| {
            masks
                .iter()
                .all(|&(w, mask)| (p.words()[w] ^ t.words()[w]) & mask == 0)
        })
}

/// Scans `sigma_j^r(g) * A` for `r` in `[0, |sigma_j|)` and collects every
/// residue that agrees with `target` on the cycle's orbit.
fn cycle_residue_scan(
    cycle: &[usize],
    g: &BitMatrix,
    alice_public: &BitMatrix,
    target: &BitMatrix,
    restrict_products: bool,
    products_evaluated: &mut usize,
) -> Vec<u64> {
    let masks = position_masks(cycle);
    let mut residues = Vec::new();
    let mut cur = g.clone();
    for r in 0..cycle.len() as u64 {
        if r > 0 {
            rotate_cycle_bits(&mut cur, cycle);
        }
        *products_evaluated += 1;
        let agrees = if restrict_products {
            masked_product_agrees(&cur, alice_public, target, &masks)
        } else {
            masked_agrees(&cur.mul(alice_public), target, &masks)
        };
        if agrees {
            residues.push(r);
        }
    }
    residues
}

/// All residues `r` in `[0, |sigma_j|)` for which `sigma_j^r(g) * A` agrees
/// with `target` on the orbit positions of the single cycle of `sigma_j`.
///
/// `sigma_j` must be a one-cycle permutation and `orbit` its moved-position
/// set. An empty result means the input is not an honest transcript.
pub fn find_cycle_residues(
    sigma_j: &Permutation,
    orbit: &[usize],
    g: &BitMatrix,
    alice_public: &BitMatrix,
    target: &BitMatrix,
) -> Vec<u64> {
    let decomp = sigma_j.cycle_decomposition();
    assert_eq!(
        decomp.cycles().len(),
        1,
        "sigma_j must consist of exactly one cycle"
    );
    let cycle = &decomp.cycles()[0];
    let mut sorted_orbit = orbit.to_vec();
    sorted_orbit.sort_unstable();
    let mut sorted_cycle = cycle.clone();
    sorted_cycle.sort_unstable();
    assert_eq!(
        sorted_orbit, sorted_cycle,
        "orbit does not match the moved positions of sigma_j"
    );
    let mut products = 0;
    cycle_residue_scan(cycle, g, alice_public, target, false, &mut products)
}

/// Solves the system by pairwise merging, handling non-coprime moduli.
/// Returns the least non-negative solution together with the lcm of the
/// moduli, or `None` when the congruences are incompatible.
pub fn crt_combine(system: &CongruenceSystem) -> Option<(BigUint, BigUint)> {
    let mut alpha = BigUint::zero();
    let mut modulus = BigUint::one();
    for c in system.entries() {
        let (a, m) = crt_merge(&alpha, &modulus, c.residue, c.modulus)?;
        alpha = a;
        modulus = m;
    }
    Some((alpha, modulus))
}

/// Merges `x = r1 (mod m1)` with `x = r2 (mod m2)`; `None` if incompatible.
fn crt_merge(r1: &BigUint, m1: &BigUint, r2: u64, m2: u64) -> Option<(BigUint, BigUint)> {
    let m1_mod = (m1 % m2).to_u64().expect("reduced below u64 modulus");
    let r1_mod = (r1 % m2).to_u64().expect("reduced below u64 modulus");
    // (r2 - r1) mod m2, kept non-negative.
    let diff = (r2 + m2 - r1_mod) % m2;
    let g = m1_mod.gcd(&m2);
    if !diff.is_multiple_of(g) {
        return None;
    }
    let m2_reduced = m2 / g;
    // Solve (m1/g) * x = diff/g (mod m2/g); the coefficient is invertible.
    let x = if m2_reduced == 1 {
        0
    } else {
        let coeff = (m1_mod / g) % m2_reduced;
        let inv = mod_inverse(coeff, m2_reduced)?;
        (((diff / g) as u128 * inv as u128) % m2_reduced as u128) as u64
    };
    let alpha = r1 + m1 * x;
    let modulus = m1 * m2_reduced;
    Some((alpha, modulus))
}

/// Modular inverse by extended Euclid; `None` when `a` and `m` share a
/// factor.
fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Chooses one residue per cycle such that the combined system is solvable,
/// by depth-first search with incremental CRT merging. Residue sets are
/// scanned in ascending order, so the result is deterministic.
fn search_compatible_assignment(
    residue_sets: &[Vec<u64>],
    moduli: &[u64],
) -> Option<(BigUint, BigUint)> {
    fn go(
        idx: usize,
        alpha: BigUint,
        modulus: BigUint,
        residue_sets: &[Vec<u64>],
        moduli: &[u64],
    ) -> Option<(BigUint, BigUint)> {
        if idx == residue_sets.len() {
            return Some((alpha, modulus));
        }
        for &r in &residue_sets[idx] {
            if let Some((a, m)) = crt_merge(&alpha, &modulus, r, moduli[idx]) {
                if let Some(found) = go(idx + 1, a, m, residue_sets, moduli) {
                    return Some(found);
                }
            }
        }
        None
    }
    go(
        0,
        BigUint::zero(),
        BigUint::one(),
        residue_sets,
        moduli,
    )
}

/// Recovers the shared key of a transcript with default [`AttackOptions`].
pub fn recover_key(
    g: &BitMatrix,
    phi: &Permutation,
    alice_public: &BitMatrix,
    bob_public: &BitMatrix,
) -> Result<AttackResult, AttackFailure> {
    recover_key_with(g, phi, alice_public, bob_public, &AttackOptions::default())
}

/// The full procedure: decompose `phi`, collect matching residues per
/// cycle, combine a compatible choice by CRT, verify the candidate against
/// `phi(A) * g`, and assemble `phi^alpha(B) * A`.
pub fn recover_key_with(
    g: &BitMatrix,
    phi: &Permutation,
    alice_public: &BitMatrix,
    bob_public: &BitMatrix,
    options: &AttackOptions,
) -> Result<AttackResult, AttackFailure> {
    let target = attack_target(g, phi, alice_public);
    let decomp = phi.cycle_decomposition();

    let fixed_points_consistent = if options.check_fixed_points {
        let masks = position_masks(decomp.fixed_points());
        Some(masked_product_agrees(g, alice_public, &target, &masks))
    } else {
        None
    };

    let mut products_evaluated = 0;
    let mut residue_sets = Vec::with_capacity(decomp.cycles().len());
    let mut moduli = Vec::with_capacity(decomp.cycles().len());
    for (j, cycle) in decomp.cycles().iter().enumerate() {
        let residues = cycle_residue_scan(
            cycle,
            g,
            alice_public,
            &target,
            options.orbit_restricted_products,
            &mut products_evaluated,
        );
        if residues.is_empty() {
            return Err(AttackFailure::NoResidueForCycle {
                cycle_index: j,
                cycle_len: cycle.len(),
            });
        }
        residue_sets.push(residues);
        moduli.push(cycle.len() as u64);
    }

    let (alpha, _modulus) = search_compatible_assignment(&residue_sets, &moduli)
        .ok_or(AttackFailure::NoCompatibleResidues)?;

    // Always verify before emitting a key: a compatible assignment plus a
    // fixed-point mismatch would otherwise fail silently.
    let psi = phi.pow(&alpha);
    if psi.apply_to_matrix(g).mul(alice_public) != target {
        return Err(AttackFailure::VerificationFailed);
    }

    let chosen = moduli
        .iter()
        .map(|&m| Congruence {
            residue: (&alpha % m).to_u64().expect("residue below u64 modulus"),
            modulus: m,
        })
        .collect();
    let residues = CongruenceSystem::new(chosen).expect("cycle lengths are valid moduli");

    let recovered_key = psi.apply_to_matrix(bob_public).mul(alice_public);
    Ok(AttackResult {
        alpha,
        residues,
        recovered_key,
        products_evaluated,
        fixed_points_consistent,
    })
}

/// CRT-free variant: raises each cycle to its own residue and composes the
/// results into an endomorphism `psi` directly, then returns `psi(B) * A`.
/// Disjoint cycles commute, so `psi` commutes with `phi` just like a true
/// power does.
pub fn recover_key_direct(
    g: &BitMatrix,
    phi: &Permutation,
    alice_public: &BitMatrix,
    bob_public: &BitMatrix,
) -> Result<BitMatrix, AttackFailure> {
    let target = attack_target(g, phi, alice_public);
    let decomp = phi.cycle_decomposition();
    let mut products_evaluated = 0;
    let mut psi = Permutation::identity(phi.degree());
    for (j, cycle) in decomp.cycles().iter().enumerate() {
        let residues = cycle_residue_scan(
            cycle,
            g,
            alice_public,
            &target,
            false,
            &mut products_evaluated,
        );
        let Some(&r) = residues.first() else {
            return Err(AttackFailure::NoResidueForCycle {
                cycle_index: j,
                cycle_len: cycle.len(),
            });
        };
        psi = psi.compose(&decomp.lift_cycle(j).pow(&BigUint::from(r)));
    }
    if psi.apply_to_matrix(g).mul(alice_public) != target {
        return Err(AttackFailure::VerificationFailed);
    }
    Ok(psi.apply_to_matrix(bob_public).mul(alice_public))
}

/// Oracle: scans every exponent in `[0, order(phi))` for one satisfying the
/// matching condition, then returns `phi^alpha(B) * A`. Only usable when
/// the order is small.
pub fn brute_force_recover(
    g: &BitMatrix,
    phi: &Permutation,
    alice_public: &BitMatrix,
    bob_public: &BitMatrix,
) -> Result<BitMatrix, AttackFailure> {
    const MAX_ORDER: u64 = 10_000_000;
    let order = phi.cycle_decomposition().order();
    let order = order
        .to_u64()
        .filter(|&o| o <= MAX_ORDER)
        .ok_or(AttackFailure::OrderTooLarge { order })?;
    let target = attack_target(g, phi, alice_public);
    let mut powered = g.clone();
    for alpha in 0..order {
        if alpha > 0 {
            powered = phi.apply_to_matrix(&powered);
        }
        if powered.mul(alice_public) == target {
            let psi = phi.pow(&BigUint::from(alpha));
            return Ok(psi.apply_to_matrix(bob_public).mul(alice_public));
        }
    }
    Err(AttackFailure::VerificationFailed)
}
