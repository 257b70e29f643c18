//! Static bit sequences with rank and select.
//!
//! Positions are 1-based throughout the public API: `rank(i)` counts the set
//! bits among positions `1..=i` and `select(r)` returns the position of the
//! `r`-th set bit. `rank(0)` is 0.
//!
//! Two layouts are provided:
//!
//! - [`PlainBitvector`]: the raw bits in 64-bit words plus a rank9-style
//!   two-level directory and sampled select hints.
//! - [`SparseBitvector`]: an Elias–Fano split of each set position into
//!   `w = ⌊log2(|B|/b)⌋` low bits, stored verbatim, and a high part stored in
//!   unary, using at most `b(2 + log2(|B|/b))` payload bits.

mod packed;
mod plain;
mod sparse;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use packed::PackedArray;
pub use plain::PlainBitvector;
pub use sparse::SparseBitvector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuccinctError {
    #[error("invalid position set")]
    InvalidPositionSet,
    #[error("invalid position set: a sparse bitvector needs at least one set bit")]
    EmptySparse,
    #[error("rank out of range: {index} > {universe}")]
    RankOutOfRange { index: u64, universe: u64 },
    #[error("select out of range: {rank} not in 1..={ones}")]
    SelectOutOfRange { rank: u64, ones: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BitvectorKind {
    Plain,
    Sparse,
}

impl BitvectorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BitvectorKind::Plain => "plain",
            BitvectorKind::Sparse => "sparse",
        }
    }
}

impl fmt::Display for BitvectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BitvectorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(BitvectorKind::Plain),
            "sparse" => Ok(BitvectorKind::Sparse),
            other => Err(format!("unknown bitvector kind `{other}`")),
        }
    }
}

/// Space accounting in bits.
///
/// `payload_bits` is the data the structure cannot do without; `auxiliary_bits`
/// covers rank/select directories, samples and word padding. `bound_bits` is
/// the analytical budget for the payload.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub payload_bits: u64,
    pub auxiliary_bits: u64,
    pub bound_bits: u64,
}

impl SpaceReport {
    pub fn total_bits(&self) -> u64 {
        self.payload_bits + self.auxiliary_bits
    }
}

/// Read-only rank/select interface shared by both layouts.
pub trait RankSelect {
    /// |B|, the number of bit positions.
    fn universe(&self) -> u64;

    /// b, the number of set bits.
    fn count_ones(&self) -> u64;

    /// Rank without the range check. `i` must be at most `universe()`.
    fn rank_unchecked(&self, i: u64) -> u64;

    /// Select without the range check. `r` must be in `1..=count_ones()`.
    fn select_unchecked(&self, r: u64) -> u64;

    fn kind(&self) -> BitvectorKind;

    fn space(&self) -> SpaceReport;

    fn rank(&self, i: u64) -> Result<u64, SuccinctError> {
        if i > self.universe() {
            return Err(SuccinctError::RankOutOfRange {
                index: i,
                universe: self.universe(),
            });
        }
        Ok(self.rank_unchecked(i))
    }

    fn select(&self, r: u64) -> Result<u64, SuccinctError> {
        if r == 0 || r > self.count_ones() {
            return Err(SuccinctError::SelectOutOfRange {
                rank: r,
                ones: self.count_ones(),
            });
        }
        Ok(self.select_unchecked(r))
    }

    /// Whether the bit at 1-based position `i` is set.
    fn get(&self, i: u64) -> bool {
        i >= 1 && i <= self.universe() && self.rank_unchecked(i) != self.rank_unchecked(i - 1)
    }
}

/// Construction from a strictly increasing list of 1-based set positions.
pub trait BuildBitvector: RankSelect + Sized {
    fn from_positions(positions: &[u64], universe: u64) -> Result<Self, SuccinctError>;
}

pub(crate) fn check_positions(positions: &[u64], universe: u64) -> Result<(), SuccinctError> {
    if universe == 0 {
        return Err(SuccinctError::InvalidPositionSet);
    }
    let increasing = positions.windows(2).all(|w| w[0] < w[1]);
    let in_range = positions.first().is_none_or(|&p| p >= 1)
        && positions.last().is_none_or(|&p| p <= universe);
    if increasing && in_range {
        Ok(())
    } else {
        Err(SuccinctError::InvalidPositionSet)
    }
}

/// `⌈log2(x)⌉` for `x >= 1`, with `lg 1 = 0`.
pub fn ceil_log2(x: u64) -> u64 {
    debug_assert!(x >= 1);
    if x <= 1 {
        0
    } else {
        (64 - (x - 1).leading_zeros()) as u64
    }
}

/// `⌈log2(num / den)⌉` for `num >= den >= 1`, computed exactly.
pub fn ceil_log2_ratio(num: u64, den: u64) -> u64 {
    debug_assert!(den >= 1 && num >= den);
    let mut c = 0u64;
    while (den as u128) << c < num as u128 {
        c += 1;
    }
    c
}

/// The sparse payload budget `b(2 + ⌈log2(|B|/b)⌉) + 1`.
pub fn sparse_bound_bits(universe: u64, ones: u64) -> u64 {
    ones * (2 + ceil_log2_ratio(universe, ones)) + 1
}
