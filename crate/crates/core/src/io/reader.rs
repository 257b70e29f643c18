use byteorder::{ByteOrder, LittleEndian};

use super::IoError;

/// Bounds-checked little-endian cursor over an in-memory buffer.
pub(crate) struct ByteReader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    pub(crate) fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    pub(crate) fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub(crate) fn bytes(&mut self, len: usize) -> Result<&'a [u8], IoError> {
        if len > self.remaining() {
            return Err(IoError::UnexpectedEof);
        }
        let out = &self.buf[self.pos..self.pos + len];
        self.pos += len;
        Ok(out)
    }

    pub(crate) fn u8(&mut self) -> Result<u8, IoError> {
        Ok(self.bytes(1)?[0])
    }

    pub(crate) fn u32(&mut self) -> Result<u32, IoError> {
        Ok(LittleEndian::read_u32(self.bytes(4)?))
    }

    pub(crate) fn u64(&mut self) -> Result<u64, IoError> {
        Ok(LittleEndian::read_u64(self.bytes(8)?))
    }

    /// `count` u64 values; fails before allocating if the input is too short.
    pub(crate) fn u64_vec(&mut self, count: u64) -> Result<Vec<u64>, IoError> {
        let bytes = count
            .checked_mul(8)
            .filter(|&b| b <= self.remaining() as u64)
            .ok_or(IoError::UnexpectedEof)?;
        let raw = self.bytes(bytes as usize)?;
        Ok(raw.chunks_exact(8).map(LittleEndian::read_u64).collect())
    }

    pub(crate) fn finish(&self) -> Result<(), IoError> {
        if self.remaining() == 0 {
            Ok(())
        } else {
            Err(IoError::Malformed(format!(
                "{} trailing bytes",
                self.remaining()
            )))
        }
    }
}
