//! Random access and substring extraction over grammar-compressed text.
//!
//! Two indexes answer the same queries:
//!
//! - [`FolkloreIndex`] works on CNF grammars and stores, per rule, the
//!   expansion length of its left child.
//! - [`FrasIndex`] works on any straight-line program. Rules are renumbered by
//!   expansion length so that the distinct lengths `L` can be addressed with a
//!   rank over the bitvector `B_X`; the start rule is entered through a
//!   rank/select pair over `B_S`, which marks where each start-rule symbol's
//!   expansion begins in the text.
//!
//! Positions are 1-based. Substrings are extracted by locating the first
//! character once and then walking the derivation tree in order.

mod folklore;
mod fras;
mod traverse;

use std::fmt;

pub use folklore::FolkloreIndex;
pub use fras::FrasIndex;

use crate::grammar::{Grammar, GrammarError};
use crate::succinct::{BitvectorKind, PlainBitvector, SparseBitvector};

#[derive(Debug, thiserror::Error)]
pub enum AccessError {
    #[error("position out of range: [{position}, {position}+{len}) exceeds text length {n}")]
    PositionOutOfRange { position: u64, len: u64, n: u64 },
    #[error("malformed index: {0}")]
    MalformedIndex(String),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

/// Character and substring queries over a compressed text.
pub trait RandomAccess {
    fn grammar(&self) -> &Grammar;

    /// n, the length of the indexed text.
    fn text_len(&self) -> u64;

    /// `T[p]` without range checks. Requires `1 <= p <= n`.
    fn access_unchecked(&self, p: u64) -> u8;

    /// Appends `T[p..p+len-1]` to `out` without range checks.
    fn extract_unchecked(&self, p: u64, len: u64, out: &mut Vec<u8>);

    /// `T[p]`.
    fn access(&self, p: u64) -> Result<u8, AccessError> {
        check_range(p, 1, self.text_len())?;
        Ok(self.access_unchecked(p))
    }

    /// Appends `T[p..p+len-1]` to `out`.
    fn extract_into(&self, p: u64, len: u64, out: &mut Vec<u8>) -> Result<(), AccessError> {
        check_range(p, len, self.text_len())?;
        self.extract_unchecked(p, len, out);
        Ok(())
    }

    fn extract(&self, p: u64, len: u64) -> Result<Vec<u8>, AccessError> {
        let mut out = Vec::with_capacity(len.min(1 << 20) as usize);
        self.extract_into(p, len, &mut out)?;
        Ok(out)
    }
}

fn check_range(position: u64, len: u64, n: u64) -> Result<(), AccessError> {
    let ok =
        position >= 1 && len >= 1 && position.checked_add(len - 1).is_some_and(|last| last <= n);
    if ok {
        Ok(())
    } else {
        Err(AccessError::PositionOutOfRange { position, len, n })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexKind {
    Folklore,
    FrasPlain,
    FrasSparse,
}

impl IndexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IndexKind::Folklore => "folklore",
            IndexKind::FrasPlain => "fras-plain",
            IndexKind::FrasSparse => "fras-sparse",
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Any of the three index flavours, as stored in an index file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Folklore(FolkloreIndex),
    FrasPlain(FrasIndex<PlainBitvector>),
    FrasSparse(FrasIndex<SparseBitvector>),
}

impl Index {
    pub fn kind(&self) -> IndexKind {
        match self {
            Index::Folklore(_) => IndexKind::Folklore,
            Index::FrasPlain(_) => IndexKind::FrasPlain,
            Index::FrasSparse(_) => IndexKind::FrasSparse,
        }
    }

    /// Builds a FRAS index with the requested bitvector layout.
    pub fn fras(grammar: &Grammar, bitvector: BitvectorKind) -> Result<Self, AccessError> {
        Ok(match bitvector {
            BitvectorKind::Plain => Index::FrasPlain(FrasIndex::build(grammar)?),
            BitvectorKind::Sparse => Index::FrasSparse(FrasIndex::build(grammar)?),
        })
    }

    /// Builds a folklore index; the grammar must already be in CNF.
    pub fn folklore(grammar: Grammar) -> Result<Self, AccessError> {
        FolkloreIndex::build(grammar).map(Index::Folklore)
    }
}

macro_rules! dispatch {
    ($self:ident, $idx:ident => $body:expr) => {
        match $self {
            Index::Folklore($idx) => $body,
            Index::FrasPlain($idx) => $body,
            Index::FrasSparse($idx) => $body,
        }
    };
}

impl RandomAccess for Index {
    fn grammar(&self) -> &Grammar {
        dispatch!(self, i => i.grammar())
    }

    fn text_len(&self) -> u64 {
        dispatch!(self, i => i.text_len())
    }

    fn access_unchecked(&self, p: u64) -> u8 {
        dispatch!(self, i => i.access_unchecked(p))
    }

    fn extract_unchecked(&self, p: u64, len: u64, out: &mut Vec<u8>) {
        dispatch!(self, i => i.extract_unchecked(p, len, out))
    }
}
