use std::io::{Read, Write};

use byteorder::{LittleEndian, WriteBytesExt};

use super::reader::ByteReader;
use super::{IoError, GRAMMAR_MAGIC, TEXT_MAGIC};
use crate::grammar::{Grammar, GrammarError, Symbol};

/// Writes the binary grammar format.
pub fn write_grammar<W: Write>(grammar: &Grammar, mut sink: W) -> std::io::Result<()> {
    sink.write_all(GRAMMAR_MAGIC)?;
    sink.write_u32::<LittleEndian>(grammar.sigma())?;
    sink.write_all(grammar.alphabet())?;
    sink.write_u32::<LittleEndian>(grammar.num_rules() as u32)?;
    let mut buf = Vec::new();
    for body in grammar.bodies() {
        buf.clear();
        buf.reserve(4 * (body.len() + 1));
        buf.write_u32::<LittleEndian>(body.len() as u32)?;
        for s in body {
            buf.write_u32::<LittleEndian>(s.0)?;
        }
        sink.write_all(&buf)?;
    }
    sink.flush()
}

/// Writes the text grammar format: one field group per line.
pub fn write_grammar_text<W: Write>(grammar: &Grammar, mut sink: W) -> std::io::Result<()> {
    writeln!(sink, "{TEXT_MAGIC}")?;
    writeln!(sink, "{}", grammar.sigma())?;
    let alphabet: Vec<String> = grammar.alphabet().iter().map(u8::to_string).collect();
    writeln!(sink, "{}", alphabet.join(" "))?;
    writeln!(sink, "{}", grammar.num_rules())?;
    for body in grammar.bodies() {
        write!(sink, "{}", body.len())?;
        for s in body {
            write!(sink, " {}", s.0)?;
        }
        writeln!(sink)?;
    }
    sink.flush()
}

/// Reads either grammar variant, chosen by the leading magic, and validates it.
pub fn read_grammar<R: Read>(mut source: R) -> Result<Grammar, IoError> {
    let mut buf = Vec::new();
    source.read_to_end(&mut buf)?;
    read_grammar_bytes(&buf)
}

pub fn read_grammar_bytes(bytes: &[u8]) -> Result<Grammar, IoError> {
    if bytes.starts_with(GRAMMAR_MAGIC) {
        let mut reader = ByteReader::new(bytes);
        let g = read_grammar_section(&mut reader)?;
        reader.finish()?;
        Ok(g)
    } else if bytes.starts_with(TEXT_MAGIC.as_bytes()) {
        read_text(&bytes[TEXT_MAGIC.len()..])
    } else {
        Err(IoError::UnrecognizedFormat)
    }
}

/// Parses one binary grammar section, magic included, leaving the cursor after it.
pub(crate) fn read_grammar_section(reader: &mut ByteReader<'_>) -> Result<Grammar, IoError> {
    if reader.bytes(GRAMMAR_MAGIC.len())? != GRAMMAR_MAGIC {
        return Err(IoError::UnrecognizedFormat);
    }
    let sigma = reader.u32()?;
    let alphabet = reader.bytes(sigma as usize)?.to_vec();
    let rules = reader.u32()?;
    let mut symbols = Vec::new();
    let mut offsets = Vec::with_capacity((rules as usize).min(reader.remaining() / 4 + 1) + 1);
    offsets.push(0);
    for _ in 0..rules {
        let k = reader.u32()? as usize;
        let raw = reader.bytes(k.checked_mul(4).ok_or(IoError::UnexpectedEof)?)?;
        symbols.extend(
            raw.chunks_exact(4)
                .map(|c| Symbol(u32::from_le_bytes(c.try_into().unwrap()))),
        );
        offsets.push(symbols.len());
    }
    checked(Grammar::from_flat(alphabet, symbols, offsets))
}

fn checked(grammar: Grammar) -> Result<Grammar, IoError> {
    let report = grammar.validate();
    if report.is_ok() {
        Ok(grammar)
    } else {
        Err(GrammarError::Invalid(report).into())
    }
}

fn read_text(body: &[u8]) -> Result<Grammar, IoError> {
    let text = std::str::from_utf8(body)
        .map_err(|_| IoError::Malformed("text grammar is not UTF-8".into()))?;
    let mut tokens = text.split_ascii_whitespace();
    let mut next = |what: &str| -> Result<u32, IoError> {
        let tok = tokens.next().ok_or(IoError::UnexpectedEof)?;
        tok.parse()
            .map_err(|_| IoError::Malformed(format!("bad {what} `{tok}`")))
    };
    let sigma = next("alphabet size")?;
    let mut alphabet = Vec::with_capacity(sigma.min(256) as usize);
    for _ in 0..sigma {
        let b = next("alphabet byte")?;
        alphabet.push(
            u8::try_from(b)
                .map_err(|_| IoError::Malformed(format!("alphabet byte {b} exceeds 255")))?,
        );
    }
    let rules = next("rule count")?;
    let mut symbols = Vec::new();
    let mut offsets = vec![0];
    for _ in 0..rules {
        let k = next("body length")?;
        for _ in 0..k {
            symbols.push(Symbol(next("symbol code")?));
        }
        offsets.push(symbols.len());
    }
    if let Some(extra) = tokens.next() {
        return Err(IoError::Malformed(format!("trailing token `{extra}`")));
    }
    checked(Grammar::from_flat(alphabet, symbols, offsets))
}
