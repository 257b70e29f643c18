//! On-disk formats for grammars and indexes.
//!
//! All integers are little-endian. A binary grammar file (`.fgz`) is
//!
//! ```text
//! "FRAS1\0"  σ:u32  alphabet:[u8; σ]  m:u32  { k:u32  codes:[u32; k] } × m
//! ```
//!
//! with the start rule last. The text variant (`.fgt`) carries the same
//! fields as whitespace-separated decimals after a first line `FRAS1-TEXT`.
//! [`read_grammar`] accepts either variant.
//!
//! An index file (`.fix`) is
//!
//! ```text
//! "FRAS1IDX"  structure:u8  <binary grammar section>  n:u64  <structure data>
//! ```
//!
//! where structure 0 (folklore) stores `count:u64` left-child lengths as u64,
//! and structures 1 (FRAS, plain) and 2 (FRAS, sparse) store `|L|:u64`, the
//! lengths as u64, then the `B_X` and `B_S` bitvector sections. A bitvector
//! section is `kind:u8 universe:u64 ones:u64` followed by, for kind 0
//! (plain), `count:u64` raw words, and for kind 1 (sparse), `width:u8`,
//! `count:u64` packed low words, `high_len:u64`, `count:u64` high words.
//! Rank/select directories are rebuilt on load.

mod grammar;
mod index;
mod reader;

pub use grammar::{read_grammar, read_grammar_bytes, write_grammar, write_grammar_text};
pub use index::{read_index, read_index_bytes, write_index};

use crate::access::AccessError;
use crate::grammar::GrammarError;

pub const GRAMMAR_MAGIC: &[u8; 6] = b"FRAS1\0";
pub const TEXT_MAGIC: &str = "FRAS1-TEXT";
pub const INDEX_MAGIC: &[u8; 8] = b"FRAS1IDX";

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("unrecognized format")]
    UnrecognizedFormat,
    #[error("unexpected end of input")]
    UnexpectedEof,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown {what} tag {tag}")]
    UnknownTag { what: &'static str, tag: u8 },
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Access(#[from] AccessError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
