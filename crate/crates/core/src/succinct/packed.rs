/// Fixed-width unsigned integers packed back to back into 64-bit words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PackedArray {
    width: u32,
    len: usize,
    words: Vec<u64>,
}

impl PackedArray {
    pub fn new(width: u32, len: usize) -> Self {
        assert!(width < 64, "packed width must be below 64 bits");
        let bits = width as usize * len;
        Self {
            width,
            len,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub(crate) fn from_raw_parts(width: u32, len: usize, words: Vec<u64>) -> Option<Self> {
        if width >= 64 || words.len() != (width as usize * len).div_ceil(64) {
            return None;
        }
        Some(Self { width, len, words })
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    fn mask(&self) -> u64 {
        (1u64 << self.width) - 1
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        if self.width == 0 {
            return 0;
        }
        let bit = i * self.width as usize;
        let (word, offset) = (bit / 64, bit % 64);
        let mut value = self.words[word] >> offset;
        if offset + self.width as usize > 64 {
            value |= self.words[word + 1] << (64 - offset);
        }
        value & self.mask()
    }

    pub fn set(&mut self, i: usize, value: u64) {
        assert!(i < self.len);
        if self.width == 0 {
            return;
        }
        let value = value & self.mask();
        let bit = i * self.width as usize;
        let (word, offset) = (bit / 64, bit % 64);
        self.words[word] &= !(self.mask() << offset);
        self.words[word] |= value << offset;
        if offset + self.width as usize > 64 {
            let spill = 64 - offset;
            self.words[word + 1] &= !(self.mask() >> spill);
            self.words[word + 1] |= value >> spill;
        }
    }

    /// Bits actually holding values: `len * width`.
    pub fn payload_bits(&self) -> u64 {
        self.len as u64 * self.width as u64
    }

    pub fn storage_bits(&self) -> u64 {
        self.words.len() as u64 * 64
    }
}
