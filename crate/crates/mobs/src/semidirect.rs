//! The semidirect product of the matrix semigroup with bit permutations.
//!
//! Elements are pairs `(g, phi)` multiplied by the twisted rule
//! `(g1, phi1)(g2, phi2) = (phi2(g1) * g2, phi1 . phi2)`. Powers of a single
//! element are what the key exchange transmits, so [`SemidirectElement::pow`]
//! implements square-and-multiply over the twisted product;
//! [`pow_matrix_iterative`] keeps the literal product expansion around as a
//! slow reference.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::perm::Permutation;
use crate::semiring::BitMatrix;

/// A pair `(mat, perm)` in the semidirect product; the permutation degree
/// must equal the matrix entry width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectElement {
    mat: BitMatrix,
    perm: Permutation,
}

impl SemidirectElement {
    pub fn new(mat: BitMatrix, perm: Permutation) -> Self {
        assert_eq!(
            perm.degree(),
            mat.width(),
            "permutation degree {} does not match matrix width {}",
            perm.degree(),
            mat.width()
        );
        Self { mat, perm }
    }

    pub fn mat(&self) -> &BitMatrix {
        &self.mat
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn into_parts(self) -> (BitMatrix, Permutation) {
        (self.mat, self.perm)
    }

    /// The twisted product: `rhs`'s permutation hits `self`'s matrix, and
    /// the permutation parts compose with `self` acting first. That pairing
    /// with the left bit-action is what makes the product associative.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            mat: rhs.perm.apply_to_matrix(&self.mat).mul(&rhs.mat),
            perm: rhs.perm.compose(&self.perm),
        }
    }

    /// The `e`-fold product of `self` with itself, by square-and-multiply;
    /// `O(log e)` twisted products.
    ///
    /// Panics when `e = 0`: the semigroup has no identity element to return.
    pub fn pow(&self, e: &BigUint) -> Self {
        assert!(!e.is_zero(), "semidirect power requires exponent >= 1");
        let mut result = self.clone();
        for i in (0..e.bits() - 1).rev() {
            result = result.mul(&result);
            if e.bit(i) {
                result = result.mul(self);
            }
        }
        result
    }
}

/// Reference evaluation of the matrix part of `(g, phi)^a` as the literal
/// product `phi^(a-1)(g) * phi^(a-2)(g) * .. * phi(g) * g`.
///
/// Costs `a` matrix products, so this is only suitable as a test oracle for
/// small exponents. Panics when `a = 0`.
pub fn pow_matrix_iterative(g: &BitMatrix, phi: &Permutation, a: u64) -> BitMatrix {
    assert!(a >= 1, "iterative power requires exponent >= 1");
    let mut acc = phi.pow(&BigUint::from(a - 1)).apply_to_matrix(g);
    for j in (0..a - 1).rev() {
        acc = acc.mul(&phi.pow(&BigUint::from(j)).apply_to_matrix(g));
    }
    acc
}
