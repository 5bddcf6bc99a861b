//! The semiring `B_k` of fixed-width bitstrings and square matrices over it.
//!
//! A [`Bitstring`] of width `k` is an element of `B_k`: addition is bitwise
//! OR, multiplication is bitwise AND. Both operations are word-parallel over
//! packed 64-bit words. A [`BitMatrix`] is an `n x n` matrix of equal-width
//! bitstrings; its product uses OR as the sum and AND as the product, which
//! makes the set of `n x n` matrices a multiplicative semigroup.
//!
//! Widths are explicit and checked: combining values of different widths is
//! a usage error and panics rather than truncating.

use std::fmt;

use rand::Rng;

use crate::Error;

const WORD_BITS: usize = 64;

/// An element of `B_k`: `width` bits packed LSB-first into 64-bit words.
///
/// Bit position `i` lives at bit `i % 64` of word `i / 64`. Any pad bits in
/// the last word are kept zero by every operation, so equality on the packed
/// words is equality of the bitstrings.
#[derive(Clone, PartialEq, Eq)]
pub struct Bitstring {
    width: usize,
    words: Vec<u64>,
}

impl Bitstring {
    /// The all-zero bitstring, the additive identity of `B_k`.
    pub fn zeros(width: usize) -> Result<Self, Error> {
        if width == 0 {
            return Err(Error::ZeroWidth);
        }
        Ok(Self {
            width,
            words: vec![0; width.div_ceil(WORD_BITS)],
        })
    }

    /// The all-one bitstring, the multiplicative identity of `B_k`.
    pub fn ones(width: usize) -> Result<Self, Error> {
        let mut bs = Self::zeros(width)?;
        for w in &mut bs.words {
            *w = u64::MAX;
        }
        bs.clear_pad_bits();
        Ok(bs)
    }

    /// Builds a bitstring from one `bool` per position, position 0 first.
    pub fn from_bits(bits: &[bool]) -> Result<Self, Error> {
        let mut bs = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                bs.set(i);
            }
        }
        Ok(bs)
    }

    /// Samples `width` independent fair coin flips from `rng`, bit 0 first.
    pub fn random<R: Rng + ?Sized>(width: usize, rng: &mut R) -> Result<Self, Error> {
        let mut bs = Self::zeros(width)?;
        for i in 0..width {
            if rng.gen::<bool>() {
                bs.set(i);
            }
        }
        Ok(bs)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, pos: usize) -> bool {
        assert!(pos < self.width, "bit position {pos} out of range for width {}", self.width);
        self.words[pos / WORD_BITS] >> (pos % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, pos: usize) {
        assert!(pos < self.width, "bit position {pos} out of range for width {}", self.width);
        self.words[pos / WORD_BITS] |= 1 << (pos % WORD_BITS);
    }

    pub fn clear(&mut self, pos: usize) {
        assert!(pos < self.width, "bit position {pos} out of range for width {}", self.width);
        self.words[pos / WORD_BITS] &= !(1 << (pos % WORD_BITS));
    }

    pub fn assign(&mut self, pos: usize, value: bool) {
        if value {
            self.set(pos);
        } else {
            self.clear(pos);
        }
    }

    /// Semiring addition: bitwise OR. Panics if the widths differ.
    pub fn or(&self, other: &Self) -> Self {
        self.check_width(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Self { width: self.width, words }
    }

    /// Semiring multiplication: bitwise AND. Panics if the widths differ.
    pub fn and(&self, other: &Self) -> Self {
        self.check_width(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Self { width: self.width, words }
    }

    /// Fused `self |= a & b`, the inner step of the matrix product.
    pub(crate) fn or_and_assign(&mut self, a: &Self, b: &Self) {
        debug_assert_eq!(self.width, a.width);
        debug_assert_eq!(self.width, b.width);
        for ((acc, &x), &y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *acc |= x & y;
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Encodes `ceil(width / 8)` bytes as lowercase hex. Bit `i` is bit
    /// `i % 8` of byte `i / 8`; pad bits of the last byte are zero.
    pub fn to_hex(&self) -> String {
        let n_bytes = self.width.div_ceil(8);
        let mut bytes = vec![0u8; n_bytes];
        for (j, byte) in bytes.iter_mut().enumerate() {
            *byte = (self.words[j / 8] >> (8 * (j % 8))) as u8;
        }
        hex::encode(bytes)
    }

    /// Decodes the [`to_hex`](Self::to_hex) encoding. The hex string must
    /// cover exactly `ceil(width / 8)` bytes and pad bits must be zero.
    pub fn from_hex(s: &str, width: usize) -> Result<Self, Error> {
        let mut bs = Self::zeros(width)?;
        let bytes = hex::decode(s).map_err(|_| Error::InvalidHex(s.to_string()))?;
        if bytes.len() != width.div_ceil(8) {
            return Err(Error::HexLength {
                got: bytes.len(),
                expected: width.div_ceil(8),
                width,
            });
        }
        for (j, &byte) in bytes.iter().enumerate() {
            bs.words[j / 8] |= (byte as u64) << (8 * (j % 8));
        }
        if !bs.pad_bits_zero() {
            return Err(Error::NonZeroPadBits { width });
        }
        Ok(bs)
    }

    /// True when every bit beyond position `width - 1` is zero.
    pub fn pad_bits_zero(&self) -> bool {
        let rem = self.width % WORD_BITS;
        if rem == 0 {
            return true;
        }
        self.words[self.words.len() - 1] & !((1u64 << rem) - 1) == 0
    }

    fn clear_pad_bits(&mut self) {
        let rem = self.width % WORD_BITS;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
    }

    fn check_width(&self, other: &Self) {
        assert_eq!(
            self.width, other.width,
            "bitstring width mismatch: {} vs {}",
            self.width, other.width
        );
    }
}

impl fmt::Debug for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bitstring(k={}, 0x{})", self.width, self.to_hex())
    }
}

/// Positional rendering, bit 0 first: `Bitstring` 110 has bits 0 and 1 set.
impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// An `n x n` matrix over `B_k`, an element of the multiplicative semigroup.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    dim: usize,
    width: usize,
    entries: Vec<Bitstring>,
}

impl BitMatrix {
    /// The all-zero matrix, the annihilator of the semigroup.
    pub fn zeros(dim: usize, width: usize) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dim,
            width,
            entries: vec![Bitstring::zeros(width)?; dim * dim],
        })
    }

    /// The multiplicative identity: all-one bitstrings on the diagonal,
    /// all-zero off it.
    pub fn identity(dim: usize, width: usize) -> Result<Self, Error> {
        let mut m = Self::zeros(dim, width)?;
        let one = Bitstring::ones(width)?;
        for i in 0..dim {
            m.entries[i * dim + i] = one.clone();
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries; all must share one width.
    pub fn from_rows(rows: Vec<Vec<Bitstring>>) -> Result<Self, Error> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let width = rows[0].first().ok_or(Error::RaggedMatrix)?.width();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::RaggedMatrix);
            }
            for e in row {
                if e.width() != width {
                    return Err(Error::WidthMismatch {
                        left: width,
                        right: e.width(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(Self { dim, width, entries })
    }

    /// Samples every one of the `n * n * k` bits as an independent fair coin
    /// flip from `rng`, entries in row-major order.
    pub fn random<R: Rng + ?Sized>(dim: usize, width: usize, rng: &mut R) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let entries = (0..dim * dim)
            .map(|_| Bitstring::random(width, rng))
            .collect::<Result<_, _>>()?;
        Ok(Self { dim, width, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entry(&self, row: usize, col: usize) -> &Bitstring {
        &self.entries[row * self.dim + col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut Bitstring {
        &mut self.entries[row * self.dim + col]
    }

    /// Matrix product with OR as the sum and AND as the product:
    /// `result(i,j) = OR_l (self(i,l) AND rhs(l,j))`.
    ///
    /// Panics if the dimensions or widths differ.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.dim, rhs.dim,
            "matrix dimension mismatch: {} vs {}",
            self.dim, rhs.dim
        );
        assert_eq!(
            self.width, rhs.width,
            "matrix width mismatch: {} vs {}",
            self.width, rhs.width
        );
        let mut out = Self::zeros(self.dim, self.width).expect("operands are well-formed");
        for i in 0..self.dim {
            for j in 0..self.dim {
                let acc = &mut out.entries[i * self.dim + j];
                for l in 0..self.dim {
                    acc.or_and_assign(
                        &self.entries[i * self.dim + l],
                        &rhs.entries[l * self.dim + j],
                    );
                }
            }
        }
        out
    }

    pub(crate) fn entries(&self) -> &[Bitstring] {
        &self.entries
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix(n={}, k={})", self.dim, self.width)?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j).to_hex())?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
