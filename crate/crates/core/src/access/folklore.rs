use super::traverse::{emit_from, Path};
use super::{AccessError, RandomAccess};
use crate::grammar::Grammar;

/// The classic random-access structure for CNF grammars.
///
/// `left_lengths[i]` is the expansion length of the left child of rule `i`.
/// Terminal proxy rules `X -> c` store 1, which is never read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolkloreIndex {
    grammar: Grammar,
    left_lengths: Vec<u64>,
    n: u64,
}

impl FolkloreIndex {
    pub fn build(grammar: Grammar) -> Result<Self, AccessError> {
        if !grammar.is_cnf() {
            return Err(AccessError::MalformedIndex("grammar is not in CNF".into()));
        }
        let lengths = grammar.expansion_lengths()?;
        let left_lengths = grammar
            .bodies()
            .map(|body| match body {
                [left, _] => lengths.get(grammar.rule_index(*left).unwrap()),
                _ => 1,
            })
            .collect();
        let n = lengths.total();
        Ok(Self {
            grammar,
            left_lengths,
            n,
        })
    }

    /// Reassembles an index from stored parts, checking them against the grammar.
    pub fn from_parts(grammar: Grammar, left_lengths: Vec<u64>) -> Result<Self, AccessError> {
        let built = Self::build(grammar)?;
        if built.left_lengths != left_lengths {
            return Err(AccessError::MalformedIndex(
                "stored left-child lengths disagree with the grammar".into(),
            ));
        }
        Ok(built)
    }

    pub fn left_lengths(&self) -> &[u64] {
        &self.left_lengths
    }

    /// Walks from the start rule to `T[p]`, reporting each `(rule, child)` step.
    #[inline(always)]
    fn descend(&self, mut p: u64, mut step: impl FnMut(usize, usize)) -> u8 {
        let g = &self.grammar;
        let sigma = g.sigma();
        let mut current = g.start();
        loop {
            let body = g.body(current);
            if let [c] = body {
                step(current, 0);
                return g.terminal_byte(*c);
            }
            let left = self.left_lengths[current];
            let next = if p <= left {
                step(current, 0);
                body[0]
            } else {
                p -= left;
                step(current, 1);
                body[1]
            };
            current = (next.0 - sigma) as usize;
        }
    }

    /// `T[p]` plus the rules visited on the way down, start rule first.
    pub fn access_traced(&self, p: u64) -> Result<(u8, Vec<usize>), AccessError> {
        super::check_range(p, 1, self.n)?;
        let mut visited = Vec::new();
        let c = self.descend(p, |rule, _| visited.push(rule));
        Ok((c, visited))
    }
}

impl RandomAccess for FolkloreIndex {
    fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    fn text_len(&self) -> u64 {
        self.n
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_lengths_of_two_leaf_grammar() {
        let g = Grammar::parse_rules(&["a", "b", "#1#2"]).unwrap();
        let idx = FolkloreIndex::build(g).unwrap();
        assert_eq!(idx.left_lengths()[2], 1);
        assert_eq!(idx.extract(1, 2).unwrap(), b"ab");
    }

    #[test]
    fn rejects_non_cnf() {
        let g = Grammar::parse_rules(&["ag", "#1#1"]).unwrap();
        assert!(matches!(
            FolkloreIndex::build(g),
            Err(AccessError::MalformedIndex(_))
        ));
    }

    #[test]
    fn worked_example_endpoints() {
        let g = Grammar::parse_rules(&["ag", "cg", "#1#1#2", "#3#3#2c"]).unwrap();
        let idx = FolkloreIndex::build(g.binarize_cnf()).unwrap();
        assert_eq!(idx.access(1).unwrap(), b'a');
        assert_eq!(idx.access(15).unwrap(), b'c');
        let (c, visited) = idx.access_traced(15).unwrap();
        assert_eq!(c, b'c');
        assert_eq!(visited[0], idx.grammar().start());
        // descent length is bounded by the derivation-tree height
        let height = idx.grammar().heights()[idx.grammar().start()];
        for p in 1..=15 {
            assert!(idx.access_traced(p).unwrap().1.len() as u64 <= height);
        }
    }

    #[test]
    fn single_character_text() {
        let idx = FolkloreIndex::build(Grammar::parse_rules(&["z"]).unwrap()).unwrap();
        assert_eq!(idx.access(1).unwrap(), b'z');
        assert_eq!(idx.access_traced(1).unwrap().1, vec![0]);
    }
}
