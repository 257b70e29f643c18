//! Random access and substring extraction over grammar-compressed strings.
//!
//! A text `T` of length `n` is represented by a straight-line program
//! ([`grammar::Grammar`]). The [`access`] module answers `T[p]` and
//! `T[p..p+len-1]` without decompressing, either through the classic
//! left-length descent on CNF grammars or through a length-sorted index that
//! works on arbitrary rule bodies and stores rule lengths with rank/select
//! bitvectors from [`succinct`].
//!
//! [`compress`] builds grammars with RePair and generates synthetic corpora,
//! [`io`] reads and writes grammar and index files, [`space`] evaluates the
//! space formulas against measured sizes and [`bench`] runs seeded query
//! benchmarks.

pub mod access;
pub mod bench;
pub mod compress;
pub mod grammar;
pub mod io;
pub mod space;
pub mod succinct;

pub use access::{FolkloreIndex, FrasIndex, Index, IndexKind, RandomAccess};
pub use grammar::{Grammar, GrammarStats, Symbol};
pub use succinct::{BitvectorKind, PlainBitvector, RankSelect, SparseBitvector};
