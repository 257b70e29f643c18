//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::ops::RangeInclusive;

use fras::{Grammar, Symbol};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

/// The running example: X1→ag, X2→cg, X3→X1X1X2, S→X3X3X2c.
pub fn worked_example() -> Grammar {
    Grammar::parse_rules(&["ag", "cg", "#1#1#2", "#3#3#2c"]).unwrap()
}

pub const WORKED_TEXT: &[u8] = b"agagcgagagcgcgc";

/// Expands every rule by memoized recursion on the raw codes.
pub fn naive_expand(grammar: &Grammar) -> Vec<u8> {
    fn go(g: &Grammar, rule: usize, memo: &mut HashMap<usize, Vec<u8>>) -> Vec<u8> {
        if let Some(s) = memo.get(&rule) {
            return s.clone();
        }
        let sigma = g.alphabet().len() as u32;
        let mut out = Vec::new();
        for s in g.body(rule) {
            if s.0 < sigma {
                out.push(g.alphabet()[s.0 as usize]);
            } else {
                out.extend(go(g, (s.0 - sigma) as usize, memo));
            }
        }
        memo.insert(rule, out.clone());
        out
    }
    go(grammar, grammar.num_rules() - 1, &mut HashMap::new())
}

/// Random admissible grammar with σ and m drawn from the given ranges: every non-start rule is referenced, every
/// expansion stays within `max_len`, body lengths in `1..=max_body`.
pub fn random_slp(
    rng: &mut StdRng,
    sigma: RangeInclusive<usize>,
    rules: RangeInclusive<usize>,
    max_body: usize,
    max_len: u64,
) -> Grammar {
    let sigma = rng.gen_range(sigma);
    let rules = rng.gen_range(rules);
    let mut bytes: Vec<u8> = (0..=255u8).collect();
    bytes.shuffle(rng);
    let mut alphabet: Vec<u8> = bytes[..sigma].to_vec();
    alphabet.sort_unstable();
    let sigma = sigma as u32;

    let mut bodies: Vec<Vec<Symbol>> = Vec::new();
    let mut lengths: Vec<u64> = Vec::new();
    let mut used = vec![false; rules];
    for i in 0..rules.saturating_sub(1) {
        let k = rng.gen_range(1..=max_body);
        let mut body = Vec::with_capacity(k);
        let mut len = 0u64;
        for _ in 0..k {
            let budget = max_len / k as u64;
            let candidates: Vec<usize> = (0..i).filter(|&j| lengths[j] <= budget).collect();
            let sym = if !candidates.is_empty() && rng.gen_bool(0.7) {
                let j = candidates[rng.gen_range(0..candidates.len())];
                used[j] = true;
                len += lengths[j];
                Symbol(sigma + j as u32)
            } else {
                len += 1;
                Symbol(rng.gen_range(0..sigma))
            };
            body.push(sym);
        }
        bodies.push(body);
        lengths.push(len);
    }
    let mut start: Vec<Symbol> = Vec::new();
    for (j, &referenced) in used.iter().enumerate().take(rules.saturating_sub(1)) {
        if !referenced || rng.gen_bool(0.2) {
            start.push(Symbol(sigma + j as u32));
        }
    }
    for _ in 0..rng.gen_range(0..4) {
        start.push(Symbol(rng.gen_range(0..sigma)));
    }
    if start.is_empty() {
        start.push(Symbol(0));
    }
    start.shuffle(rng);
    bodies.push(start);
    Grammar::new(alphabet, bodies).unwrap()
}

/// Rank and select on a plain `Vec<bool>`, positions 1-based.
pub struct NaiveBits {
    prefix: Vec<u64>,
    ones: Vec<u64>,
}

impl NaiveBits {
    pub fn new(bits: &[bool]) -> Self {
        let mut prefix = vec![0u64];
        let mut ones = Vec::new();
        for (i, &b) in bits.iter().enumerate() {
            prefix.push(prefix[i] + b as u64);
            if b {
                ones.push(i as u64 + 1);
            }
        }
        Self { prefix, ones }
    }

    pub fn rank(&self, i: u64) -> u64 {
        self.prefix[i as usize]
    }

    pub fn select(&self, r: u64) -> u64 {
        self.ones[r as usize - 1]
    }

    pub fn positions(&self) -> &[u64] {
        &self.ones
    }
}
