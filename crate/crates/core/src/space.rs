//! Analytical space formulas next to the measured size of built indexes.
//!
//! `lg x` in bit-width terms is `⌈log2 x⌉` with `lg 1 = 0`; every formula is
//! also evaluated with the real-valued `log2` for comparison. `m` counts all
//! rules including the start rule and `size` includes the start rule body.

use std::fmt;

use serde::Serialize;

use crate::access::{Index, RandomAccess};
use crate::grammar::Grammar;
use crate::succinct::{ceil_log2, ceil_log2_ratio, RankSelect, SpaceReport};

/// A formula evaluated both ways.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub ceil_bits: u64,
    pub real_bits: f64,
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} bits (real log2: {:.2} bits)",
            self.ceil_bits, self.real_bits
        )
    }
}

fn log2(x: u64) -> f64 {
    (x as f64).log2()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GrammarParams {
    /// Rules, start rule included.
    pub rules: u64,
    pub sigma: u64,
    pub n: u64,
    /// Total body length, start rule included.
    pub size: u64,
    /// |S|, symbols in the start rule.
    pub start_len: u64,
}

impl GrammarParams {
    pub fn of(grammar: &Grammar, n: u64) -> Self {
        Self {
            rules: grammar.num_rules() as u64,
            sigma: grammar.sigma() as u64,
            n,
            size: grammar.size() as u64,
            start_len: grammar.body(grammar.start()).len() as u64,
        }
    }

    /// `2m · lg(m + σ)`: a CNF grammar as pairs of symbol codes.
    pub fn cnf_grammar_bits(&self) -> Estimate {
        let width = self.rules + self.sigma;
        Estimate {
            ceil_bits: 2 * self.rules * ceil_log2(width),
            real_bits: 2.0 * self.rules as f64 * log2(width),
        }
    }

    /// `m · lg n`: one expansion length per rule.
    pub fn cnf_length_bits(&self) -> Estimate {
        Estimate {
            ceil_bits: self.rules * ceil_log2(self.n),
            real_bits: self.rules as f64 * log2(self.n),
        }
    }

    /// `size · lg(m + σ)`: every body symbol as a code.
    pub fn slp_grammar_bits(&self) -> Estimate {
        let width = self.rules + self.sigma;
        Estimate {
            ceil_bits: self.size * ceil_log2(width),
            real_bits: self.size as f64 * log2(width),
        }
    }

    /// `(|S| + m) · lg n`: rule lengths plus start-symbol offsets.
    pub fn slp_length_bits(&self) -> Estimate {
        let count = self.start_len + self.rules;
        Estimate {
            ceil_bits: count * ceil_log2(self.n),
            real_bits: count as f64 * log2(self.n),
        }
    }

    /// `|S|(2 + log(n/|S|)) + |L|(2 + log(m/|L|)) + |L|·lg|L|` for `|L|` distinct lengths.
    pub fn fras_bound_bits(&self, distinct_lengths: u64) -> Estimate {
        let (s, l) = (self.start_len, distinct_lengths);
        let ceil_bits = s * (2 + ceil_log2_ratio(self.n, s))
            + l * (2 + ceil_log2_ratio(self.rules, l))
            + l * ceil_log2(l);
        let real_bits = s as f64 * (2.0 + (self.n as f64 / s as f64).log2())
            + l as f64 * (2.0 + (self.rules as f64 / l as f64).log2())
            + l as f64 * log2(l);
        Estimate {
            ceil_bits,
            real_bits,
        }
    }
}

/// One stored structure of an index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub name: &'static str,
    pub payload_bits: u64,
    pub auxiliary_bits: u64,
}

impl Component {
    fn bitvector(name: &'static str, report: SpaceReport) -> Self {
        Self {
            name,
            payload_bits: report.payload_bits,
            auxiliary_bits: report.auxiliary_bits,
        }
    }
}

/// Formulas and measurements for one index.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexSpace {
    pub kind: &'static str,
    pub params: GrammarParams,
    /// |L|, FRAS only.
    pub distinct_lengths: Option<u64>,
    /// b(B_S), FRAS only.
    pub start_marks: Option<u64>,
    pub cnf_grammar: Option<Estimate>,
    pub cnf_lengths: Option<Estimate>,
    pub slp_grammar: Estimate,
    pub slp_lengths: Estimate,
    pub fras_bound: Option<Estimate>,
    pub components: Vec<Component>,
}

impl IndexSpace {
    pub fn of(index: &Index) -> Self {
        let grammar = index.grammar();
        let params = GrammarParams::of(grammar, index.text_len());
        let cnf = grammar.is_cnf();
        let mut space = Self {
            kind: index.kind().as_str(),
            params,
            distinct_lengths: None,
            start_marks: None,
            cnf_grammar: cnf.then(|| params.cnf_grammar_bits()),
            cnf_lengths: cnf.then(|| params.cnf_length_bits()),
            slp_grammar: params.slp_grammar_bits(),
            slp_lengths: params.slp_length_bits(),
            fras_bound: None,
            components: Vec::new(),
        };
        match index {
            Index::Folklore(idx) => {
                space.components.push(Component {
                    name: "left-child lengths",
                    payload_bits: 64 * idx.left_lengths().len() as u64,
                    auxiliary_bits: 0,
                });
            }
            Index::FrasPlain(idx) => {
                space.set_fras(idx.lengths().len() as u64, idx.start_marks().count_ones());
                space
                    .components
                    .push(Component::bitvector("B_S", idx.start_marks().space()));
                space
                    .components
                    .push(Component::bitvector("B_X", idx.rule_marks().space()));
                space.components.push(length_array(idx.lengths()));
            }
            Index::FrasSparse(idx) => {
                space.set_fras(idx.lengths().len() as u64, idx.start_marks().count_ones());
                space
                    .components
                    .push(Component::bitvector("B_S", idx.start_marks().space()));
                space
                    .components
                    .push(Component::bitvector("B_X", idx.rule_marks().space()));
                space.components.push(length_array(idx.lengths()));
            }
        }
        space
    }

    fn set_fras(&mut self, distinct: u64, start_marks: u64) {
        self.distinct_lengths = Some(distinct);
        self.start_marks = Some(start_marks);
        self.fras_bound = Some(self.params.fras_bound_bits(distinct));
    }

    pub fn measured_payload(&self) -> u64 {
        self.components.iter().map(|c| c.payload_bits).sum()
    }

    pub fn measured_auxiliary(&self) -> u64 {
        self.components.iter().map(|c| c.auxiliary_bits).sum()
    }

    /// Whether the measured payload fits the FRAS bound plus the reported auxiliary bits.
    pub fn within_fras_bound(&self) -> Option<bool> {
        self.fras_bound
            .map(|b| self.measured_payload() <= b.ceil_bits + self.measured_auxiliary())
    }

    /// `|L|=.. |S|=.. b(B_S)=..` for FRAS, empty otherwise.
    pub fn structure_line(&self) -> String {
        match (self.distinct_lengths, self.start_marks) {
            (Some(l), Some(b)) => {
                format!("|L|={} |S|={} b(B_S)={}", l, self.params.start_len, b)
            }
            _ => String::new(),
        }
    }
}

/// L is kept as plain 64-bit words, accounted as auxiliary storage.
fn length_array(lengths: &[u64]) -> Component {
    Component {
        name: "L",
        payload_bits: 0,
        auxiliary_bits: 64 * lengths.len() as u64,
    }
}

impl fmt::Display for IndexSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "structure: {}", self.kind)?;
        writeln!(
            f,
            "m={} sigma={} n={} size={} |S|={}",
            p.rules, p.sigma, p.n, p.size, p.start_len
        )?;
        if !self.structure_line().is_empty() {
            writeln!(f, "{}", self.structure_line())?;
        }
        if let (Some(a), Some(b)) = (self.cnf_grammar, self.cnf_lengths) {
            writeln!(f, "(a) cnf grammar 2m*lg(m+sigma): {a}")?;
            writeln!(f, "(b) cnf lengths m*lg(n): {b}")?;
        }
        writeln!(f, "(c) slp grammar size*lg(m+sigma): {}", self.slp_grammar)?;
        writeln!(f, "(d) slp lengths (|S|+m)*lg(n): {}", self.slp_lengths)?;
        if let Some(bound) = self.fras_bound {
            writeln!(
                f,
                "fras bound |S|(2+log(n/|S|))+|L|(2+log(m/|L|))+|L|*lg|L|: {bound}"
            )?;
        }
        for c in &self.components {
            writeln!(
                f,
                "measured {}: payload {} bits, auxiliary {} bits",
                c.name, c.payload_bits, c.auxiliary_bits
            )?;
        }
        write!(
            f,
            "measured total: payload {} bits, auxiliary {} bits",
            self.measured_payload(),
            self.measured_auxiliary()
        )?;
        if let Some(ok) = self.within_fras_bound() {
            write!(
                f,
                "\npayload within bound + auxiliary: {}",
                if ok { "yes" } else { "no" }
            )?;
        }
        Ok(())
    }
}
