use super::traverse::{emit_from, Path};
use super::{AccessError, RandomAccess};
use crate::grammar::Grammar;
use crate::succinct::{BuildBitvector, RankSelect};

/// Random access for arbitrary straight-line programs.
///
/// Holds the length-sorted grammar, the distinct expansion lengths `L`
/// (ascending), `B_X` over the `m` rules marking the first rule of each
/// distinct length, and `B_S` over the `n` text positions marking where each
/// start-rule symbol begins. The expansion length of rule `i` (1-based) is
/// `L[rank(B_X, i)]`; terminals count 1 and have no entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrasIndex<B> {
    grammar: Grammar,
    lengths: Vec<u64>,
    rule_marks: B,
    start_marks: B,
}

impl<B: BuildBitvector> FrasIndex<B> {
    pub fn build(grammar: &Grammar) -> Result<Self, AccessError> {
        let (sorted, _) = grammar.sort_and_renumber()?;
        let rule_lengths = sorted.expansion_lengths()?;

        let mut lengths = Vec::new();
        let mut first_of_length = Vec::new();
        for (i, &len) in rule_lengths.as_slice().iter().enumerate() {
            if lengths.last() != Some(&len) {
                lengths.push(len);
                first_of_length.push(i as u64 + 1);
            }
        }

        let mut starts = Vec::with_capacity(sorted.body(sorted.start()).len());
        let mut at = 1u64;
        for &s in sorted.body(sorted.start()) {
            starts.push(at);
            at += sorted.rule_index(s).map_or(1, |c| rule_lengths.get(c));
        }
        let n = rule_lengths.total();

        let rule_marks = B::from_positions(&first_of_length, sorted.num_rules() as u64)
            .map_err(|e| AccessError::MalformedIndex(e.to_string()))?;
        let start_marks = B::from_positions(&starts, n)
            .map_err(|e| AccessError::MalformedIndex(e.to_string()))?;
        Ok(Self {
            grammar: sorted,
            lengths,
            rule_marks,
            start_marks,
        })
    }
}

impl<B: RankSelect> FrasIndex<B> {
    /// Reassembles an index from stored parts, checking the structural invariants.
    pub fn from_parts(
        grammar: Grammar,
        lengths: Vec<u64>,
        rule_marks: B,
        start_marks: B,
    ) -> Result<Self, AccessError> {
        let malformed = |what: &str| Err(AccessError::MalformedIndex(what.to_string()));
        let rule_lengths = grammar.expansion_lengths()?;
        let m = grammar.num_rules() as u64;
        if rule_marks.universe() != m || rule_marks.count_ones() != lengths.len() as u64 {
            return malformed("B_X does not match the rule count or L");
        }
        if lengths.windows(2).any(|w| w[0] >= w[1]) {
            return malformed("L is not strictly increasing");
        }
        for (i, &len) in rule_lengths.as_slice().iter().enumerate() {
            let r = rule_marks.rank_unchecked(i as u64 + 1);
            if r == 0 || lengths[r as usize - 1] != len {
                return malformed("L[rank(B_X, i)] disagrees with a rule length");
            }
        }
        let start = grammar.body(grammar.start());
        let n = rule_lengths.total();
        if start_marks.universe() != n || start_marks.count_ones() != start.len() as u64 {
            return malformed("B_S does not match the start rule");
        }
        let mut at = 1u64;
        for (r, &s) in start.iter().enumerate() {
            if start_marks.select_unchecked(r as u64 + 1) != at {
                return malformed("B_S marks disagree with start-rule symbol lengths");
            }
            at += grammar.rule_index(s).map_or(1, |c| rule_lengths.get(c));
        }
        Ok(Self {
            grammar,
            lengths,
            rule_marks,
            start_marks,
        })
    }

    /// L, the distinct rule expansion lengths in ascending order.
    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    /// B_X.
    pub fn rule_marks(&self) -> &B {
        &self.rule_marks
    }

    /// B_S.
    pub fn start_marks(&self) -> &B {
        &self.start_marks
    }

    /// Expansion length of a 0-based rule index.
    #[inline]
    pub fn rule_length(&self, rule: usize) -> u64 {
        let r = self.rule_marks.rank_unchecked(rule as u64 + 1);
        self.lengths[r as usize - 1]
    }

    /// Enters the start rule via rank/select on `B_S`, then scans each rule
    /// body left to right, reporting each `(rule, symbol index)` step.
    #[inline(always)]
    fn descend(&self, p: u64, mut step: impl FnMut(usize, usize)) -> u8 {
        let g = &self.grammar;
        let sigma = g.sigma();
        let start = g.start();
        let r = self.start_marks.rank_unchecked(p);
        let mut p = p - (self.start_marks.select_unchecked(r) - 1);
        step(start, r as usize - 1);
        let mut symbol = g.body(start)[r as usize - 1];
        while symbol.0 >= sigma {
            let current = (symbol.0 - sigma) as usize;
            for (j, &s) in g.body(current).iter().enumerate() {
                let len = if s.0 < sigma {
                    1
                } else {
                    self.rule_length((s.0 - sigma) as usize)
                };
                if p <= len {
                    step(current, j);
                    symbol = s;
                    break;
                }
                p -= len;
            }
        }
        g.terminal_byte(symbol)
    }

    /// `T[p]` plus the rules visited on the way down, start rule first.
    pub fn access_traced(&self, p: u64) -> Result<(u8, Vec<usize>), AccessError> {
        super::check_range(p, 1, self.text_len())?;
        let mut visited = Vec::new();
        let c = self.descend(p, |rule, _| visited.push(rule));
        Ok((c, visited))
    }
}

impl<B: RankSelect> RandomAccess for FrasIndex<B> {
    fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    fn text_len(&self) -> u64 {
        self.start_marks.universe()
    }

    #[inline]
    fn access_unchecked(&self, p: u64) -> u8 {
        self.descend(p, |_, _| {})
    }

    fn extract_unchecked(&self, p: u64, len: u64, out: &mut Vec<u8>) {
        let mut path: Path = Vec::new();
        self.descend(p, |rule, at| path.push((rule, at)));
        emit_from(&self.grammar, &mut path, len, out);
    }
}
