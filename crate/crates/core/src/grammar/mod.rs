//! Admissible grammars (straight-line programs) in the array-of-arrays encoding.
//!
//! A grammar over the alphabet `Σ` (σ distinct bytes, sorted) holds `m` rules.
//! Every rule body is a non-empty sequence of [`Symbol`]s, and a body may only
//! reference rules that precede it. The last rule is the start rule.
//!
//! Symbols share a single integer space: codes `0..σ` are terminals (the code
//! is the rank of the byte in the sorted alphabet) and codes `σ..σ+m` are
//! non-terminals, code `σ + i` naming the rule at 0-based index `i`.
//!
//! Rule indexes in this API are 0-based. Human-facing messages use the 1-based
//! rule id `X_{i+1}`.

mod expand;
mod stats;
mod transform;
mod validate;

use std::fmt;

pub use stats::GrammarStats;
pub use validate::{ValidationReport, Violation};

/// A terminal or non-terminal code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Symbol(pub u32);

impl Symbol {
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GrammarError {
    #[error("invalid grammar: {0}")]
    Invalid(ValidationReport),
    #[error("length overflow at rule {rule}")]
    LengthOverflow { rule: usize },
}

/// Expansion length of every rule, indexed by 0-based rule index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthTable(Vec<u64>);

impl LengthTable {
    #[inline]
    pub fn get(&self, rule: usize) -> u64 {
        self.0[rule]
    }

    /// Length of the start rule, i.e. of the whole text.
    pub fn total(&self) -> u64 {
        *self.0.last().expect("grammar has at least one rule")
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }
}

/// An admissible grammar. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    alphabet: Vec<u8>,
    symbols: Vec<Symbol>,
    // offsets[i]..offsets[i + 1] is the body of rule i
    offsets: Vec<usize>,
}

impl Grammar {
    /// Builds a grammar and checks every admissibility invariant.
    pub fn new(alphabet: Vec<u8>, rules: Vec<Vec<Symbol>>) -> Result<Self, GrammarError> {
        let g = Self::new_unchecked(alphabet, rules);
        let report = g.validate();
        if report.is_ok() {
            Ok(g)
        } else {
            Err(GrammarError::Invalid(report))
        }
    }

    /// Builds a grammar without validation. Use [`Grammar::validate`] to inspect it.
    pub fn new_unchecked(alphabet: Vec<u8>, rules: Vec<Vec<Symbol>>) -> Self {
        let mut offsets = Vec::with_capacity(rules.len() + 1);
        offsets.push(0);
        let total = rules.iter().map(Vec::len).sum();
        let mut symbols = Vec::with_capacity(total);
        for body in rules {
            symbols.extend(body);
            offsets.push(symbols.len());
        }
        Self {
            alphabet,
            symbols,
            offsets,
        }
    }

    pub(crate) fn from_flat(alphabet: Vec<u8>, symbols: Vec<Symbol>, offsets: Vec<usize>) -> Self {
        debug_assert_eq!(offsets.first(), Some(&0));
        debug_assert_eq!(offsets.last(), Some(&symbols.len()));
        Self {
            alphabet,
            symbols,
            offsets,
        }
    }

    /// Convenience constructor from a text description, mostly for tests and examples.
    ///
    /// Each rule is a string where a lowercase/uppercase byte stands for itself
    /// and `#k` stands for the 1-based rule id `k`, e.g. `["ag", "cg", "#1#1#2", "#3#3#2c"]`.
    pub fn parse_rules(rules: &[&str]) -> Result<Self, GrammarError> {
        let mut bytes: Vec<u8> = Vec::new();
        let mut parsed: Vec<Vec<Result<u8, usize>>> = Vec::with_capacity(rules.len());
        for rule in rules {
            let raw = rule.as_bytes();
            let mut body = Vec::new();
            let mut i = 0;
            while i < raw.len() {
                if raw[i] == b'#' {
                    let start = i + 1;
                    let mut end = start;
                    while end < raw.len() && raw[end].is_ascii_digit() {
                        end += 1;
                    }
                    let id: usize = std::str::from_utf8(&raw[start..end])
                        .ok()
                        .and_then(|s| s.parse().ok())
                        .unwrap_or(0);
                    body.push(Err(id));
                    i = end;
                } else {
                    bytes.push(raw[i]);
                    body.push(Ok(raw[i]));
                    i += 1;
                }
            }
            parsed.push(body);
        }
        bytes.sort_unstable();
        bytes.dedup();
        let sigma = bytes.len() as u32;
        let rules = parsed
            .into_iter()
            .map(|body| {
                body.into_iter()
                    .map(|s| match s {
                        Ok(b) => Symbol(bytes.binary_search(&b).unwrap() as u32),
                        // id 0 is not a rule; map it out of range so validation reports it
                        Err(0) => Symbol(u32::MAX),
                        Err(id) => Symbol(sigma + id as u32 - 1),
                    })
                    .collect()
            })
            .collect();
        Self::new(bytes, rules)
    }

    /// Sorted, distinct terminal bytes.
    #[inline]
    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    /// σ, the number of terminals.
    #[inline]
    pub fn sigma(&self) -> u32 {
        self.alphabet.len() as u32
    }

    /// m, the number of rules including the start rule.
    #[inline]
    pub fn num_rules(&self) -> usize {
        self.offsets.len() - 1
    }

    /// 0-based index of the start rule (always the last rule).
    #[inline]
    pub fn start(&self) -> usize {
        self.num_rules() - 1
    }

    #[inline]
    pub fn body(&self, rule: usize) -> &[Symbol] {
        &self.symbols[self.offsets[rule]..self.offsets[rule + 1]]
    }

    pub fn bodies(&self) -> impl Iterator<Item = &[Symbol]> + '_ {
        (0..self.num_rules()).map(move |i| self.body(i))
    }

    /// size(G): total length of all right-hand sides, start rule included.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_terminal(&self, s: Symbol) -> bool {
        s.0 < self.sigma()
    }

    /// 0-based rule index of a non-terminal, `None` for terminals.
    #[inline]
    pub fn rule_index(&self, s: Symbol) -> Option<usize> {
        s.0.checked_sub(self.sigma()).map(|i| i as usize)
    }

    /// The byte a terminal stands for.
    #[inline]
    pub fn terminal_byte(&self, s: Symbol) -> u8 {
        self.alphabet[s.0 as usize]
    }

    #[inline]
    pub fn nonterminal(&self, rule: usize) -> Symbol {
        Symbol(self.sigma() + rule as u32)
    }

    pub fn terminal_for(&self, byte: u8) -> Option<Symbol> {
        self.alphabet
            .binary_search(&byte)
            .ok()
            .map(|r| Symbol(r as u32))
    }

    /// Checks the admissibility invariants and reports every violation found.
    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    /// Expansion length of every rule, computed in a single bottom-up pass.
    pub fn expansion_lengths(&self) -> Result<LengthTable, GrammarError> {
        let sigma = self.sigma();
        let mut lengths: Vec<u64> = Vec::with_capacity(self.num_rules());
        for rule in 0..self.num_rules() {
            let mut len: u64 = 0;
            for &s in self.body(rule) {
                let add = if s.0 < sigma {
                    1
                } else {
                    lengths[(s.0 - sigma) as usize]
                };
                len = len
                    .checked_add(add)
                    .ok_or(GrammarError::LengthOverflow { rule: rule + 1 })?;
            }
            lengths.push(len);
        }
        Ok(LengthTable(lengths))
    }

    /// True when every rule, start included, is `X -> c` or `X -> Y Z` with `Y`, `Z` non-terminals.
    pub fn is_cnf(&self) -> bool {
        self.bodies().all(|body| match body {
            [c] => self.is_terminal(*c),
            [l, r] => !self.is_terminal(*l) && !self.is_terminal(*r),
            _ => false,
        })
    }

    pub(crate) fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }
}

#[cfg(test)]
pub(crate) fn worked_example() -> Grammar {
    Grammar::parse_rules(&["ag", "cg", "#1#1#2", "#3#3#2c"]).unwrap()
}
