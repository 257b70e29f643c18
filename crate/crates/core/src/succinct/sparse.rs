use super::{
    check_positions, sparse_bound_bits, BitvectorKind, BuildBitvector, PackedArray, PlainBitvector,
    RankSelect, SpaceReport, SuccinctError,
};

/// Elias–Fano encoded bit set.
///
/// Each set position `p` (1-based) is stored as `x = p - 1`, split into
/// `w = ⌊log2(|B|/b)⌋` low bits kept in a packed array and the high part
/// `x >> w`, written in unary: the `r`-th element (0-based) sets bit
/// `(x >> w) + r` of the high bitvector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBitvector {
    universe: u64,
    low: PackedArray,
    high: PlainBitvector,
}

/// `⌊log2(universe / ones)⌋`, 0 when the set is full.
pub(crate) fn low_width(universe: u64, ones: u64) -> u32 {
    (universe / ones).ilog2()
}

impl SparseBitvector {
    pub(crate) fn from_raw_parts(
        universe: u64,
        low: PackedArray,
        high: PlainBitvector,
    ) -> Option<Self> {
        let ones = low.len() as u64;
        if ones == 0
            || ones > universe
            || low.width() != low_width(universe, ones)
            || high.count_ones() != ones
        {
            return None;
        }
        let bv = Self {
            universe,
            low,
            high,
        };
        // the last element must fall inside the universe
        if bv.select_unchecked(ones) > universe {
            return None;
        }
        Some(bv)
    }

    pub fn low(&self) -> &PackedArray {
        &self.low
    }

    pub fn high(&self) -> &PlainBitvector {
        &self.high
    }

    pub fn low_width(&self) -> u32 {
        self.low.width()
    }

    /// Bits that encode the set: `b·w` low bits plus the unary high part.
    pub fn payload_bits(&self) -> u64 {
        self.low.payload_bits() + self.high.len()
    }

    pub fn to_bit_string(&self) -> String {
        let mut bits = vec!['0'; self.universe as usize];
        for r in 1..=self.count_ones() {
            bits[(self.select_unchecked(r) - 1) as usize] = '1';
        }
        bits.into_iter().collect()
    }
}

impl RankSelect for SparseBitvector {
    fn universe(&self) -> u64 {
        self.universe
    }

    fn count_ones(&self) -> u64 {
        self.low.len() as u64
    }

    fn rank_unchecked(&self, i: u64) -> u64 {
        let ones = self.count_ones();
        if i == 0 {
            return 0;
        }
        if i >= self.universe {
            return ones;
        }
        // count elements x < i
        let w = self.low.width();
        let bucket = i >> w;
        let low = i & ((1u64 << w) - 1);
        let buckets_in_use = self.high.len() - ones;
        if bucket > buckets_in_use {
            return ones;
        }
        let mut pos = if bucket == 0 {
            0
        } else {
            self.high.select0_raw(bucket - 1) + 1
        };
        let mut k = pos - bucket;
        while pos < self.high.len() && self.high.get(pos + 1) && self.low.get(k as usize) < low {
            pos += 1;
            k += 1;
        }
        k
    }

    #[inline]
    fn select_unchecked(&self, r: u64) -> u64 {
        let k = r - 1;
        let high = self.high.select1_raw(k) - k;
        ((high << self.low.width()) | self.low.get(k as usize)) + 1
    }

    fn kind(&self) -> BitvectorKind {
        BitvectorKind::Sparse
    }

    fn space(&self) -> SpaceReport {
        let payload = self.payload_bits();
        let high = self.high.space();
        let stored = self.low.storage_bits() + high.payload_bits + high.auxiliary_bits;
        SpaceReport {
            payload_bits: payload,
            auxiliary_bits: stored - payload,
            bound_bits: sparse_bound_bits(self.universe, self.count_ones()),
        }
    }
}

impl BuildBitvector for SparseBitvector {
    fn from_positions(positions: &[u64], universe: u64) -> Result<Self, SuccinctError> {
        check_positions(positions, universe)?;
        if positions.is_empty() {
            return Err(SuccinctError::EmptySparse);
        }
        let ones = positions.len() as u64;
        let w = low_width(universe, ones);
        let mut low = PackedArray::new(w, positions.len());
        let last = positions[positions.len() - 1] - 1;
        let high_len = (last >> w) + ones;
        let mut high = vec![0u64; high_len.div_ceil(64) as usize];
        for (r, &p) in positions.iter().enumerate() {
            let x = p - 1;
            low.set(r, x);
            let h = (x >> w) + r as u64;
            high[(h / 64) as usize] |= 1 << (h % 64);
        }
        Ok(Self {
            universe,
            low,
            high: PlainBitvector::from_words(high, high_len),
        })
    }
}
