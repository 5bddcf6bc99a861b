//! Permutations of bit positions and their action on `B_k`.
//!
//! A [`Permutation`] of degree `k` acts on a width-`k` [`Bitstring`] by
//! moving bit `i` to position `sigma(i)`, and entrywise on a [`BitMatrix`].
//! Because OR and AND are positionwise, the action is an automorphism of the
//! matrix semigroup. [`CycleDecomposition`] exposes the disjoint cycle
//! structure that the key-recovery attack works cycle by cycle.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::semiring::{BitMatrix, Bitstring};
use crate::Error;

/// A bijection of `{0, .., k-1}`, stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from `images[i] = sigma(i)`, validating that the
    /// sequence is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            if img >= degree || seen[img] {
                return Err(Error::InvalidPermutation { degree });
            }
            seen[img] = true;
        }
        Ok(Self { images })
    }

    /// Builds the product of the given cycles on `degree` points. Positions
    /// not mentioned are fixed. Cycles must be disjoint; `(c0 c1 .. cm)`
    /// maps `c0 -> c1 -> .. -> cm -> c0`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, Error> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &pos) in cycle.iter().enumerate() {
                if pos >= degree || moved[pos] {
                    return Err(Error::InvalidPermutation { degree });
                }
                moved[pos] = true;
                images[pos] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// Samples a uniformly random permutation of degree `k` whose nontrivial
    /// cycle lengths are exactly `lengths` (each must be at least 2); the
    /// remaining positions are fixed points.
    pub fn random_with_cycle_type<R: Rng + ?Sized>(
        lengths: &[usize],
        degree: usize,
        rng: &mut R,
    ) -> Result<Self, Error> {
        let sum: usize = lengths.iter().sum();
        if sum > degree {
            return Err(Error::CycleTypeTooLarge { sum, degree });
        }
        if lengths.iter().any(|&l| l < 2) {
            return Err(Error::CycleLengthTooShort);
        }
        let mut positions: Vec<usize> = (0..degree).collect();
        positions.shuffle(rng);
        let mut cycles = Vec::with_capacity(lengths.len());
        let mut start = 0;
        for &len in lengths {
            cycles.push(positions[start..start + len].to_vec());
            start += len;
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Function composition `(self . other)(i) = self(other(i))`: `other`
    /// acts first. Panics if the degrees differ.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "permutation degree mismatch: {} vs {}",
            self.degree(),
            other.degree()
        );
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Self { images }
    }

    /// `self` composed with itself `e` times; `e = 0` gives the identity.
    ///
    /// The exponent is reduced per cycle modulo that cycle's length, so the
    /// cost is `O(k)` no matter how large `e` is.
    pub fn pow(&self, e: &BigUint) -> Self {
        let mut images = vec![0; self.degree()];
        for cycle in self.cycle_decomposition().iter_orbits() {
            let m = cycle.len();
            let shift = (e % m).to_usize().expect("residue fits in usize");
            for (i, &pos) in cycle.iter().enumerate() {
                images[pos] = cycle[(i + shift) % m];
            }
        }
        Self { images }
    }

    /// Moves bit `i` of `x` to position `self(i)`. Panics if the degree and
    /// width differ.
    pub fn apply_to_bitstring(&self, x: &Bitstring) -> Bitstring {
        assert_eq!(
            self.degree(),
            x.width(),
            "permutation degree {} does not match bitstring width {}",
            self.degree(),
            x.width()
        );
        let mut out = Bitstring::zeros(x.width()).expect("width is positive");
        for (i, &img) in self.images.iter().enumerate() {
            if x.get(i) {
                out.set(img);
            }
        }
        out
    }

    /// Applies the bit permutation to every entry of `m` independently.
    pub fn apply_to_matrix(&self, m: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(m.dim(), m.width()).expect("operand is well-formed");
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                *out.entry_mut(i, j) = self.apply_to_bitstring(m.entry(i, j));
            }
        }
        out
    }

    /// The canonical disjoint cycle decomposition: each cycle starts at its
    /// smallest element, cycles are ordered by smallest element, length-1
    /// orbits are reported as fixed points. Runs in `O(k)` position visits.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let mut visited = vec![false; self.degree()];
        let mut cycles = Vec::new();
        let mut fixed_points = Vec::new();
        for start in 0..self.degree() {
            if visited[start] {
                continue;
            }
            let mut cycle = vec![start];
            visited[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                visited[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            if cycle.len() == 1 {
                fixed_points.push(start);
            } else {
                cycles.push(cycle);
            }
        }
        CycleDecomposition {
            cycles,
            fixed_points,
            degree: self.degree(),
        }
    }
}

/// The disjoint cycle structure of a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
    fixed_points: Vec<usize>,
    degree: usize,
}

impl CycleDecomposition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The nontrivial cycles, each of length at least 2.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn fixed_points(&self) -> &[usize] {
        &self.fixed_points
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }

    /// All orbits including the fixed points, used by `Permutation::pow`.
    fn iter_orbits(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.cycles
            .iter()
            .cloned()
            .chain(self.fixed_points.iter().map(|&p| vec![p]))
    }

    /// Lifts cycle `j` to a full permutation of `degree` points that fixes
    /// everything outside the cycle's orbit.
    pub fn lift_cycle(&self, j: usize) -> Permutation {
        Permutation::from_cycles(self.degree, &[self.cycles[j].clone()])
            .expect("stored cycles are valid")
    }

    /// Rebuilds the permutation as the product of its cycles.
    pub fn recompose(&self) -> Permutation {
        Permutation::from_cycles(self.degree, &self.cycles).expect("stored cycles are valid")
    }

    /// The order of the permutation: the lcm of the cycle lengths (1 for the
    /// identity). Exact even when the lcm exceeds machine integers.
    pub fn order(&self) -> BigUint {
        self.cycles
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }
}
