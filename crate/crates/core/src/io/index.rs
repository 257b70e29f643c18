use std::io::{Read, Write};

use byteorder::{LittleEndian, WriteBytesExt};

use super::grammar::{read_grammar_section, write_grammar};
use super::reader::ByteReader;
use super::{IoError, INDEX_MAGIC};
use crate::access::{FolkloreIndex, FrasIndex, Index, IndexKind, RandomAccess};
use crate::succinct::{PackedArray, PlainBitvector, RankSelect, SparseBitvector};

const PLAIN_TAG: u8 = 0;
const SPARSE_TAG: u8 = 1;

fn structure_tag(kind: IndexKind) -> u8 {
    match kind {
        IndexKind::Folklore => 0,
        IndexKind::FrasPlain => 1,
        IndexKind::FrasSparse => 2,
    }
}

/// Serializes an index, grammar section included.
pub fn write_index<W: Write>(index: &Index, mut sink: W) -> std::io::Result<()> {
    let mut out = Vec::new();
    out.extend_from_slice(INDEX_MAGIC);
    out.push(structure_tag(index.kind()));
    write_grammar(index.grammar(), &mut out)?;
    out.write_u64::<LittleEndian>(index.text_len())?;
    match index {
        Index::Folklore(idx) => write_u64s(&mut out, idx.left_lengths())?,
        Index::FrasPlain(idx) => {
            write_u64s(&mut out, idx.lengths())?;
            write_plain(&mut out, idx.rule_marks())?;
            write_plain(&mut out, idx.start_marks())?;
        }
        Index::FrasSparse(idx) => {
            write_u64s(&mut out, idx.lengths())?;
            write_sparse(&mut out, idx.rule_marks())?;
            write_sparse(&mut out, idx.start_marks())?;
        }
    }
    sink.write_all(&out)?;
    sink.flush()
}

fn write_u64s(out: &mut Vec<u8>, values: &[u64]) -> std::io::Result<()> {
    out.write_u64::<LittleEndian>(values.len() as u64)?;
    for &v in values {
        out.write_u64::<LittleEndian>(v)?;
    }
    Ok(())
}

fn write_header(out: &mut Vec<u8>, tag: u8, bv: &impl RankSelect) -> std::io::Result<()> {
    out.push(tag);
    out.write_u64::<LittleEndian>(bv.universe())?;
    out.write_u64::<LittleEndian>(bv.count_ones())
}

fn write_plain(out: &mut Vec<u8>, bv: &PlainBitvector) -> std::io::Result<()> {
    write_header(out, PLAIN_TAG, bv)?;
    write_u64s(out, bv.words())
}

fn write_sparse(out: &mut Vec<u8>, bv: &SparseBitvector) -> std::io::Result<()> {
    write_header(out, SPARSE_TAG, bv)?;
    out.push(bv.low_width() as u8);
    write_u64s(out, bv.low().words())?;
    out.write_u64::<LittleEndian>(bv.high().len())?;
    write_u64s(out, bv.high().words())
}

pub fn read_index<R: Read>(mut source: R) -> Result<Index, IoError> {
    let mut buf = Vec::new();
    source.read_to_end(&mut buf)?;
    read_index_bytes(&buf)
}

/// Parses an index file and checks every stored structure against the grammar.
pub fn read_index_bytes(bytes: &[u8]) -> Result<Index, IoError> {
    if !bytes.starts_with(INDEX_MAGIC) {
        return Err(IoError::UnrecognizedFormat);
    }
    let mut reader = ByteReader::new(bytes);
    reader.bytes(INDEX_MAGIC.len())?;
    let tag = reader.u8()?;
    let grammar = read_grammar_section(&mut reader)?;
    let n = reader.u64()?;
    let index = match tag {
        0 => {
            let count = reader.u64()?;
            let left_lengths = reader.u64_vec(count)?;
            Index::Folklore(FolkloreIndex::from_parts(grammar, left_lengths)?)
        }
        1 => {
            let count = reader.u64()?;
            let lengths = reader.u64_vec(count)?;
            let rule_marks = read_plain(&mut reader)?;
            let start_marks = read_plain(&mut reader)?;
            Index::FrasPlain(FrasIndex::from_parts(
                grammar,
                lengths,
                rule_marks,
                start_marks,
            )?)
        }
        2 => {
            let count = reader.u64()?;
            let lengths = reader.u64_vec(count)?;
            let rule_marks = read_sparse(&mut reader)?;
            let start_marks = read_sparse(&mut reader)?;
            Index::FrasSparse(FrasIndex::from_parts(
                grammar,
                lengths,
                rule_marks,
                start_marks,
            )?)
        }
        tag => {
            return Err(IoError::UnknownTag {
                what: "index structure",
                tag,
            })
        }
    };
    reader.finish()?;
    if index.text_len() != n {
        return Err(IoError::Malformed(format!(
            "stored text length {n} disagrees with the grammar's {}",
            index.text_len()
        )));
    }
    Ok(index)
}

fn read_header(reader: &mut ByteReader<'_>, expected: u8) -> Result<(u64, u64), IoError> {
    let tag = reader.u8()?;
    if tag != PLAIN_TAG && tag != SPARSE_TAG {
        return Err(IoError::UnknownTag {
            what: "bitvector kind",
            tag,
        });
    }
    if tag != expected {
        return Err(IoError::Malformed(format!(
            "bitvector kind {tag} does not match the index structure"
        )));
    }
    Ok((reader.u64()?, reader.u64()?))
}

/// Plain words, rejecting set bits in the padding so re-serialization is byte-identical.
fn read_words(reader: &mut ByteReader<'_>, len: u64) -> Result<PlainBitvector, IoError> {
    let count = reader.u64()?;
    let expected = len.div_ceil(64) + 1;
    if count != expected {
        return Err(IoError::Malformed(format!(
            "bitvector of {len} bits needs {expected} words, found {count}"
        )));
    }
    let words = reader.u64_vec(count)?;
    let bv = PlainBitvector::from_words(words.clone(), len);
    if bv.words() != words.as_slice() {
        return Err(IoError::Malformed(
            "bits set beyond the bitvector length".into(),
        ));
    }
    Ok(bv)
}

fn read_plain(reader: &mut ByteReader<'_>) -> Result<PlainBitvector, IoError> {
    let (universe, ones) = read_header(reader, PLAIN_TAG)?;
    let bv = read_words(reader, universe)?;
    if bv.count_ones() != ones {
        return Err(IoError::Malformed(
            "bitvector population count mismatch".into(),
        ));
    }
    Ok(bv)
}

fn read_sparse(reader: &mut ByteReader<'_>) -> Result<SparseBitvector, IoError> {
    let (universe, ones) = read_header(reader, SPARSE_TAG)?;
    let width = reader.u8()? as u32;
    let low_count = reader.u64()?;
    let low_words = reader.u64_vec(low_count)?;
    let len = usize::try_from(ones).map_err(|_| IoError::Malformed("too many set bits".into()))?;
    let low = PackedArray::from_raw_parts(width, len, low_words)
        .ok_or_else(|| IoError::Malformed("low-bit array has the wrong size".into()))?;
    let high_len = reader.u64()?;
    let high = read_words(reader, high_len)?;
    SparseBitvector::from_raw_parts(universe, low, high)
        .ok_or_else(|| IoError::Malformed("inconsistent sparse bitvector".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::worked_example;
    use crate::succinct::BitvectorKind;

    fn all_kinds() -> Vec<Index> {
        let g = worked_example();
        vec![
            Index::folklore(g.binarize_cnf()).unwrap(),
            Index::fras(&g, BitvectorKind::Plain).unwrap(),
            Index::fras(&g, BitvectorKind::Sparse).unwrap(),
        ]
    }

    fn bytes_of(idx: &Index) -> Vec<u8> {
        let mut out = Vec::new();
        write_index(idx, &mut out).unwrap();
        out
    }

    #[test]
    fn round_trip_preserves_answers() {
        for idx in all_kinds() {
            let bytes = bytes_of(&idx);
            let back = read_index_bytes(&bytes).unwrap();
            assert_eq!(back, idx);
            for p in 1..=15 {
                assert_eq!(back.access(p).unwrap(), idx.access(p).unwrap());
            }
            assert_eq!(bytes_of(&back), bytes);
        }
    }

    #[test]
    fn unknown_tags() {
        let mut bytes = bytes_of(&all_kinds()[2]);
        bytes[8] = 9;
        assert!(matches!(
            read_index_bytes(&bytes),
            Err(IoError::UnknownTag { tag: 9, .. })
        ));

        let bytes = bytes_of(&all_kinds()[1]);
        // the B_X kind tag sits right after n, |L| and the three lengths
        let grammar_len = {
            let mut g = Vec::new();
            write_grammar(all_kinds()[1].grammar(), &mut g).unwrap();
            g.len()
        };
        let at = 9 + grammar_len + 8 + 8 + 3 * 8;
        let mut bad = bytes.clone();
        assert_eq!(bad[at], PLAIN_TAG);
        bad[at] = 7;
        assert!(matches!(
            read_index_bytes(&bad),
            Err(IoError::UnknownTag { tag: 7, .. })
        ));
    }

    #[test]
    fn truncated_payload() {
        for idx in all_kinds() {
            let bytes = bytes_of(&idx);
            for cut in [1, 8, 16] {
                let err = read_index_bytes(&bytes[..bytes.len() - cut]).unwrap_err();
                assert_eq!(err.to_string(), "unexpected end of input");
            }
        }
    }

    #[test]
    fn grammar_file_is_not_an_index() {
        let mut g = Vec::new();
        write_grammar(&worked_example(), &mut g).unwrap();
        assert!(matches!(
            read_index_bytes(&g),
            Err(IoError::UnrecognizedFormat)
        ));
    }
}
