use super::{
    check_positions, BitvectorKind, BuildBitvector, RankSelect, SpaceReport, SuccinctError,
};

const WORDS_PER_BLOCK: usize = 8;
const BLOCK_BITS: u64 = 512;
/// One select hint every this many set (or unset) bits.
const SELECT_SAMPLE: u64 = 8192;

/// Uncompressed bitvector with constant-time rank and sampled select.
///
/// The rank directory is rank9: for each 512-bit block one absolute count and
/// seven 9-bit counts relative to the block start, packed into a second word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainBitvector {
    len: u64,
    ones: u64,
    // ⌈len / 64⌉ + 1 words; the trailing word keeps rank(len) in bounds
    words: Vec<u64>,
    // (absolute, packed relative) per block, plus a terminal absolute count
    blocks: Vec<u64>,
    select1: Vec<u64>,
    select0: Vec<u64>,
}

#[inline]
fn select_in_word(mut word: u64, mut r: u32) -> u64 {
    let mut base = 0;
    loop {
        let c = (word & 0xff).count_ones();
        if r < c {
            break;
        }
        r -= c;
        word >>= 8;
        base += 8;
    }
    for _ in 0..r {
        word &= word - 1;
    }
    base + word.trailing_zeros() as u64
}

impl PlainBitvector {
    /// Builds from raw 0-based bits: bit `j` of `words[j / 64]` is position `j + 1`.
    ///
    /// Bits beyond `len` are cleared; missing words are zero-filled.
    pub fn from_words(mut words: Vec<u64>, len: u64) -> Self {
        let n_words = len.div_ceil(64) as usize + 1;
        words.resize(n_words, 0);
        let tail = len % 64;
        let last = (len / 64) as usize;
        words[last] &= if tail == 0 { 0 } else { (1u64 << tail) - 1 };
        for w in &mut words[last + 1..] {
            *w = 0;
        }
        let mut bv = Self {
            len,
            ones: 0,
            words,
            blocks: Vec::new(),
            select1: Vec::new(),
            select0: Vec::new(),
        };
        bv.build_directory();
        bv
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self::from_words(words, bits.len() as u64)
    }

    fn build_directory(&mut self) {
        let n_blocks = self.words.len().div_ceil(WORDS_PER_BLOCK);
        let mut blocks = Vec::with_capacity(2 * n_blocks + 1);
        let mut total = 0u64;
        for block in self.words.chunks(WORDS_PER_BLOCK) {
            blocks.push(total);
            let mut rel = 0u64;
            let mut packed = 0u64;
            for (j, w) in block.iter().enumerate() {
                if j > 0 {
                    packed |= rel << (9 * (j - 1));
                }
                rel += w.count_ones() as u64;
            }
            for j in block.len()..WORDS_PER_BLOCK {
                if j > 0 {
                    packed |= rel << (9 * (j - 1));
                }
            }
            blocks.push(packed);
            total += rel;
        }
        blocks.push(total);
        self.ones = total;
        self.blocks = blocks;

        let mut select1 = Vec::new();
        let mut select0 = Vec::new();
        let (mut seen1, mut seen0) = (0u64, 0u64);
        for pos in 0..self.len {
            if self.bit(pos) {
                if seen1 % SELECT_SAMPLE == 0 {
                    select1.push(pos);
                }
                seen1 += 1;
            } else {
                if seen0 % SELECT_SAMPLE == 0 {
                    select0.push(pos);
                }
                seen0 += 1;
            }
        }
        self.select1 = select1;
        self.select0 = select0;
    }

    #[inline]
    fn bit(&self, pos: u64) -> bool {
        self.words[(pos / 64) as usize] >> (pos % 64) & 1 == 1
    }

    #[inline]
    fn block_ones(&self, block: usize) -> u64 {
        self.blocks[2 * block]
    }

    #[inline]
    fn word_ones_before(&self, block: usize, j: usize) -> u64 {
        if j == 0 {
            0
        } else {
            self.blocks[2 * block + 1] >> (9 * (j - 1)) & 0x1ff
        }
    }

    /// Set bits among 0-based positions `[0, pos)`.
    #[inline]
    pub(crate) fn rank1_raw(&self, pos: u64) -> u64 {
        let w = (pos / 64) as usize;
        let (block, j) = (w / WORDS_PER_BLOCK, w % WORDS_PER_BLOCK);
        let below = self.words[w] & ((1u64 << (pos % 64)) - 1);
        self.block_ones(block) + self.word_ones_before(block, j) + below.count_ones() as u64
    }

    /// 0-based position of the set bit with 0-based rank `k`.
    pub(crate) fn select1_raw(&self, k: u64) -> u64 {
        self.select_raw::<true>(k)
    }

    /// 0-based position of the unset bit with 0-based rank `k`.
    pub(crate) fn select0_raw(&self, k: u64) -> u64 {
        self.select_raw::<false>(k)
    }

    fn select_raw<const ONES: bool>(&self, k: u64) -> u64 {
        let samples = if ONES { &self.select1 } else { &self.select0 };
        let count_before = |block: usize| -> u64 {
            let ones = self.block_ones(block);
            if ONES {
                ones
            } else {
                block as u64 * BLOCK_BITS - ones
            }
        };
        let s = (k / SELECT_SAMPLE) as usize;
        let n_blocks = self.words.len().div_ceil(WORDS_PER_BLOCK);
        let mut lo = (samples[s] / BLOCK_BITS) as usize;
        let mut hi = samples
            .get(s + 1)
            .map_or(n_blocks - 1, |&p| (p / BLOCK_BITS) as usize);
        // last block whose prefix count is <= k
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if count_before(mid) <= k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let block = lo;
        let mut remaining = k - count_before(block);
        let first = block * WORDS_PER_BLOCK;
        let mut j = 0;
        while j + 1 < WORDS_PER_BLOCK && first + j + 1 < self.words.len() {
            let before = if ONES {
                self.word_ones_before(block, j + 1)
            } else {
                (j as u64 + 1) * 64 - self.word_ones_before(block, j + 1)
            };
            if before > remaining {
                break;
            }
            j += 1;
        }
        let before = if ONES {
            self.word_ones_before(block, j)
        } else {
            j as u64 * 64 - self.word_ones_before(block, j)
        };
        remaining -= before;
        let word = self.words[first + j];
        let word = if ONES { word } else { !word };
        (first + j) as u64 * 64 + select_in_word(word, remaining as u32)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bits as a `0`/`1` string, position 1 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|p| if self.bit(p) { '1' } else { '0' })
            .collect()
    }
}

impl RankSelect for PlainBitvector {
    fn universe(&self) -> u64 {
        self.len
    }

    fn count_ones(&self) -> u64 {
        self.ones
    }

    #[inline]
    fn rank_unchecked(&self, i: u64) -> u64 {
        self.rank1_raw(i)
    }

    #[inline]
    fn select_unchecked(&self, r: u64) -> u64 {
        self.select1_raw(r - 1) + 1
    }

    fn kind(&self) -> BitvectorKind {
        BitvectorKind::Plain
    }

    fn get(&self, i: u64) -> bool {
        i >= 1 && i <= self.len && self.bit(i - 1)
    }

    fn space(&self) -> SpaceReport {
        let payload = 64 * self.words.len() as u64;
        let aux = 64 * (self.blocks.len() + self.select1.len() + self.select0.len()) as u64;
        SpaceReport {
            payload_bits: payload,
            auxiliary_bits: aux,
            bound_bits: 64 * (self.len.div_ceil(64) + 1),
        }
    }
}

impl BuildBitvector for PlainBitvector {
    fn from_positions(positions: &[u64], universe: u64) -> Result<Self, SuccinctError> {
        check_positions(positions, universe)?;
        let mut words = vec![0u64; universe.div_ceil(64) as usize + 1];
        for &p in positions {
            let x = p - 1;
            words[(x / 64) as usize] |= 1 << (x % 64);
        }
        Ok(Self::from_words(words, universe))
    }
}
