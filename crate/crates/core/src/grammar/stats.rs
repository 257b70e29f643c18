use serde::{Deserialize, Serialize};

use super::{Grammar, GrammarError};

/// Summary columns in the order used by grammar statistics tables:
/// rules, depth, start, size, plus the text length `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrammarStats {
    /// Rule count, start rule excluded.
    pub rules: u64,
    /// Edges on the longest root-to-leaf path of the derivation tree.
    pub depth: u64,
    /// Symbols in the start rule.
    pub start: u64,
    /// Total body length, start rule excluded.
    pub size: u64,
    pub n: u64,
}

impl Grammar {
    pub fn stats(&self) -> Result<GrammarStats, GrammarError> {
        let n = self.expansion_lengths()?.total();
        Ok(GrammarStats {
            rules: (self.num_rules() - 1) as u64,
            depth: self.heights()[self.start()],
            start: self.body(self.start()).len() as u64,
            size: (self.size() - self.body(self.start()).len()) as u64,
            n,
        })
    }

    /// Height of every rule's derivation subtree, counted in edges. A terminal leaf has height 0.
    pub fn heights(&self) -> Vec<u64> {
        let mut heights: Vec<u64> = Vec::with_capacity(self.num_rules());
        for rule in 0..self.num_rules() {
            let below = self
                .body(rule)
                .iter()
                .map(|&s| self.rule_index(s).map_or(0, |c| heights[c]))
                .max()
                .unwrap_or(0);
            heights.push(below + 1);
        }
        heights
    }
}
