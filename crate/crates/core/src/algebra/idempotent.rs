use std::fmt;

use crate::algebra::{Algebra, AlgebraElement};

/// An idempotent of S, `e_T = sum_{i in T} e_i`, stored as the bit set `T`
/// of primitive blocks. The product of idempotents is set intersection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Idempotent(pub u64);

impl Idempotent {
    pub const ZERO: Idempotent = Idempotent(0);

    pub fn one(n: usize) -> Self {
        Idempotent(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn block(i: usize) -> Self {
        Idempotent(1 << i)
    }

    pub fn from_blocks<I: IntoIterator<Item = usize>>(blocks: I) -> Self {
        Idempotent(blocks.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// All `2^n` idempotents of S.
    pub fn all(n: usize) -> impl Iterator<Item = Idempotent> {
        (0..1u64 << n).map(Idempotent)
    }

    pub fn blocks(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 >> i & 1 == 1)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn product(self, other: Idempotent) -> Idempotent {
        Idempotent(self.0 & other.0)
    }

    /// `1 - e`.
    pub fn complement(self, n: usize) -> Idempotent {
        Idempotent(Idempotent::one(n).0 & !self.0)
    }

    pub fn is_orthogonal(self, other: Idempotent) -> bool {
        self.0 & other.0 == 0
    }

    /// `self <= other`, i.e. `self * other = self`.
    pub fn le(self, other: Idempotent) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn element(self, alg: &Algebra) -> AlgebraElement {
        let mut out = alg.zero();
        for i in self.blocks() {
            out = alg.add(&out, &alg.blocks()[i].idempotent);
        }
        out
    }

    pub fn block_list(self) -> Vec<usize> {
        self.blocks().collect()
    }
}

impl fmt::Display for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
