//! Bitstring and matrix arithmetic basics: OR is addition, AND is
//! multiplication, and matrices over them form a multiplicative semigroup.
//!
//! ```bash
//! cargo run -p mobs --example semiring_matrices
//! ```

use mobs::{BitMatrix, Bitstring};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let a = Bitstring::from_bits(&[true, true, false, false]).unwrap();
    let b = Bitstring::from_bits(&[true, false, true, false]).unwrap();
    println!("a         = {a}");
    println!("b         = {b}");
    println!("a OR b    = {}", a.or(&b));
    println!("a AND b   = {}", a.and(&b));

    let zero = Bitstring::zeros(4).unwrap();
    let one = Bitstring::ones(4).unwrap();
    assert_eq!(zero.or(&a), a, "all-zero is the additive identity");
    assert_eq!(one.and(&a), a, "all-one is the multiplicative identity");
    assert_eq!(zero.and(&a), zero, "and the annihilator");

    // Matrix product: result(i,j) = OR over l of (X(i,l) AND Y(l,j)).
    let mut rng = ChaCha12Rng::seed_from_u64(1);
    let x = BitMatrix::random(3, 20, &mut rng).unwrap();
    let y = BitMatrix::random(3, 20, &mut rng).unwrap();
    let z = BitMatrix::random(3, 20, &mut rng).unwrap();
    let id = BitMatrix::identity(3, 20).unwrap();

    assert_eq!(id.mul(&x), x);
    assert_eq!(x.mul(&id), x);
    assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)), "associative");

    println!("\n3x3 matrices over 20-bit strings:");
    println!("X = {x:?}");
    println!("X * Y = {:?}", x.mul(&y));

    // The hex encoding used by the JSON formats: bit i lives at bit
    // (i mod 8) of byte (i / 8).
    let mut v = Bitstring::zeros(10).unwrap();
    v.set(9);
    println!("k=10 bitstring with bit 9 set encodes as {:?}", v.to_hex());
    assert_eq!(v.to_hex(), "0002");
}
