use std::cmp::Reverse;
use std::collections::BTreeSet;

use rustc_hash::FxHashMap;

use super::CompressError;
use crate::grammar::{Grammar, Symbol};

const NONE: u32 = u32::MAX;

#[inline]
fn pair_key(a: u32, b: u32) -> u64 {
    (a as u64) << 32 | b as u64
}

#[inline]
fn split_key(key: u64) -> (u32, u32) {
    ((key >> 32) as u32, key as u32)
}

#[derive(Clone, Copy, Debug)]
struct PairInfo {
    count: u32,
    // first position of the occurrence list
    head: u32,
    // count under which the pair currently sits in the queue
    queued: u32,
    dirty: bool,
}

/// Working state of the pair-replacement loop.
///
/// The text is a doubly linked list over array slots. A slot `k` is *counted*
/// when the pair starting at `k` takes part in the non-overlapping count: it
/// has a successor and is not the overlapping second half of an equal-symbol
/// run (`c c c` counts the first `c c` only). Counted slots of each pair are
/// threaded into an intrusive doubly linked occurrence list.
struct RePair {
    sym: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    counted: Vec<bool>,
    occ_next: Vec<u32>,
    occ_prev: Vec<u32>,
    pairs: FxHashMap<u64, PairInfo>,
    queue: BTreeSet<(Reverse<u32>, u64)>,
    dirty: Vec<u64>,
}

impl RePair {
    fn new(codes: Vec<u32>) -> Self {
        let n = codes.len();
        let next = (1..=n as u32)
            .map(|k| if k as usize == n { NONE } else { k })
            .collect();
        let prev = (0..n as u32)
            .map(|k| if k == 0 { NONE } else { k - 1 })
            .collect();
        let mut state = Self {
            sym: codes,
            next,
            prev,
            counted: vec![false; n],
            occ_next: vec![NONE; n],
            occ_prev: vec![NONE; n],
            pairs: FxHashMap::default(),
            queue: BTreeSet::new(),
            dirty: Vec::new(),
        };
        for k in 0..n as u32 {
            state.refresh(k);
        }
        state.flush();
        state
    }

    #[inline]
    fn is_countable(&self, k: u32) -> bool {
        let nx = self.next[k as usize];
        if nx == NONE {
            return false;
        }
        let pv = self.prev[k as usize];
        let s = self.sym[k as usize];
        !(pv != NONE
            && self.counted[pv as usize]
            && self.sym[pv as usize] == s
            && self.sym[nx as usize] == s)
    }

    #[inline]
    fn key_at(&self, k: u32) -> u64 {
        pair_key(
            self.sym[k as usize],
            self.sym[self.next[k as usize] as usize],
        )
    }

    fn count(&mut self, k: u32) {
        let key = self.key_at(k);
        let info = self.pairs.entry(key).or_insert(PairInfo {
            count: 0,
            head: NONE,
            queued: 0,
            dirty: false,
        });
        info.count += 1;
        let old_head = info.head;
        info.head = k;
        if !info.dirty {
            info.dirty = true;
            self.dirty.push(key);
        }
        self.occ_prev[k as usize] = NONE;
        self.occ_next[k as usize] = old_head;
        if old_head != NONE {
            self.occ_prev[old_head as usize] = k;
        }
        self.counted[k as usize] = true;
    }

    fn uncount(&mut self, k: u32) {
        let key = self.key_at(k);
        let (p, n) = (self.occ_prev[k as usize], self.occ_next[k as usize]);
        let info = self
            .pairs
            .get_mut(&key)
            .expect("counted slot has a pair entry");
        info.count -= 1;
        if p == NONE {
            info.head = n;
        } else {
            self.occ_next[p as usize] = n;
        }
        if n != NONE {
            self.occ_prev[n as usize] = p;
        }
        if !info.dirty {
            info.dirty = true;
            self.dirty.push(key);
        }
        self.counted[k as usize] = false;
        self.occ_next[k as usize] = NONE;
        self.occ_prev[k as usize] = NONE;
    }

    /// Re-evaluates whether slot `k` is counted; returns true if that changed.
    fn refresh(&mut self, k: u32) -> bool {
        let want = self.is_countable(k);
        if want == self.counted[k as usize] {
            return false;
        }
        if want {
            self.count(k);
        } else {
            self.uncount(k);
        }
        true
    }

    /// Brings the priority queue in line with the counts changed since the last flush.
    fn flush(&mut self) {
        for key in std::mem::take(&mut self.dirty) {
            let Some(info) = self.pairs.get_mut(&key) else {
                continue;
            };
            info.dirty = false;
            if info.queued != info.count {
                if info.queued >= 2 {
                    self.queue.remove(&(Reverse(info.queued), key));
                }
                if info.count >= 2 {
                    self.queue.insert((Reverse(info.count), key));
                }
                info.queued = info.count;
            }
            if info.count == 0 {
                self.pairs.remove(&key);
            }
        }
    }

    /// Replaces the counted pair at slot `i` with `z`.
    fn replace(&mut self, i: u32, z: u32) {
        let j = self.next[i as usize];
        let x = self.prev[i as usize];
        let y = self.next[j as usize];
        if x != NONE && self.counted[x as usize] {
            self.uncount(x);
        }
        self.uncount(i);
        if self.counted[j as usize] {
            self.uncount(j);
        }

        self.sym[i as usize] = z;
        self.next[i as usize] = y;
        if y != NONE {
            self.prev[y as usize] = i;
        }
        self.next[j as usize] = NONE;
        self.prev[j as usize] = NONE;

        if x != NONE {
            self.refresh(x);
        }
        self.refresh(i);
        let mut k = y;
        while k != NONE && self.refresh(k) {
            k = self.next[k as usize];
        }
    }

    fn occurrences(&self, key: u64) -> Vec<u32> {
        let mut out = Vec::new();
        let mut k = self.pairs.get(&key).map_or(NONE, |info| info.head);
        while k != NONE {
            out.push(k);
            k = self.occ_next[k as usize];
        }
        out.sort_unstable();
        out
    }
}

/// Builds a RePair grammar for `text`.
///
/// Repeatedly replaces the most frequent adjacent pair, counted without
/// overlaps from left to right, by a fresh non-terminal until no pair occurs
/// twice. Ties go to the smallest `(first, second)` code pair. All non-start
/// rules are binary; what remains of the text becomes the start rule.
pub fn repair_compress(text: &[u8]) -> Result<Grammar, CompressError> {
    if text.is_empty() {
        return Err(CompressError::EmptyText);
    }
    if text.len() >= (NONE / 2) as usize {
        return Err(CompressError::TextTooLong(text.len()));
    }
    let mut present = [false; 256];
    for &c in text {
        present[c as usize] = true;
    }
    let alphabet: Vec<u8> = (0..=255u8).filter(|&c| present[c as usize]).collect();
    let mut rank = [0u32; 256];
    for (r, &c) in alphabet.iter().enumerate() {
        rank[c as usize] = r as u32;
    }
    let sigma = alphabet.len() as u32;

    let mut state = RePair::new(text.iter().map(|&c| rank[c as usize]).collect());
    let mut rules: Vec<Vec<Symbol>> = Vec::new();
    while let Some(&(_, key)) = state.queue.first() {
        let (a, b) = split_key(key);
        let z = sigma + rules.len() as u32;
        rules.push(vec![Symbol(a), Symbol(b)]);
        for k in state.occurrences(key) {
            let nx = state.next[k as usize];
            if state.counted[k as usize]
                && nx != NONE
                && state.sym[k as usize] == a
                && state.sym[nx as usize] == b
            {
                state.replace(k, z);
            }
        }
        state.flush();
    }

    let mut start = Vec::new();
    let mut k = 0u32;
    while k != NONE {
        start.push(Symbol(state.sym[k as usize]));
        k = state.next[k as usize];
    }
    rules.push(start);
    Ok(Grammar::new(alphabet, rules).expect("RePair output is admissible"))
}
