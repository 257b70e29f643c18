//! Seeded query benchmark.
//!
//! For each substring length, query positions are drawn up front from a
//! seeded [`Prng`], then the whole batch of extractions is timed with a
//! monotonic clock and averaged. The same seed yields the same positions for
//! every index kind, and every extracted byte feeds a checksum so the
//! answers of different indexes can be compared.

mod prng;

use std::io::{Read, Write};
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use prng::{splitmix64, Prng};

use crate::access::{AccessError, RandomAccess};

pub const DEFAULT_LENGTHS: [u64; 4] = [1, 10, 100, 1000];
pub const DEFAULT_ITERATIONS: u64 = 10_000;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("substring length {len} exceeds text length {n}")]
    LengthExceedsText { len: u64, n: u64 },
    #[error("substring length must be at least 1")]
    ZeroLength,
    #[error(transparent)]
    Access(#[from] AccessError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// `count` query positions, each `1 + next() mod (n - len + 1)`.
pub fn gen_positions(
    prng: &mut Prng,
    n: u64,
    len: u64,
    count: u64,
) -> Result<Vec<u64>, BenchError> {
    if len == 0 {
        return Err(BenchError::ZeroLength);
    }
    if len > n {
        return Err(BenchError::LengthExceedsText { len, n });
    }
    let span = n - len + 1;
    Ok((0..count).map(|_| 1 + prng.below(span)).collect())
}

/// FNV-1a over the extracted bytes, in query order.
#[derive(Clone, Copy, Debug)]
pub struct Checksum(u64);

impl Default for Checksum {
    fn default() -> Self {
        Checksum(0xcbf2_9ce4_8422_2325)
    }
}

impl Checksum {
    pub fn update(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthRecord {
    pub substring_len: u64,
    pub iterations: u64,
    pub mean_us: f64,
    pub total_us: f64,
    pub checksum: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub seed: u64,
    pub lengths: Vec<u64>,
    pub iterations: u64,
    pub index: String,
    pub corpus: String,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            lengths: DEFAULT_LENGTHS.to_vec(),
            iterations: DEFAULT_ITERATIONS,
            index: String::new(),
            corpus: String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub records: Vec<LengthRecord>,
}

/// One CSV row: `corpus,index,substring_len,iterations,mean_us,checksum,seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub corpus: String,
    pub index: String,
    pub substring_len: u64,
    pub iterations: u64,
    pub mean_us: f64,
    pub checksum: u64,
    pub seed: u64,
}

/// The positions a benchmark run will query, one vector per length, in order.
pub fn query_plan(config: &BenchConfig, n: u64) -> Result<Vec<Vec<u64>>, BenchError> {
    let mut prng = Prng::new(config.seed);
    if config.iterations == 0 {
        return Ok(Vec::new());
    }
    config
        .lengths
        .iter()
        .map(|&len| gen_positions(&mut prng, n, len, config.iterations))
        .collect()
}

/// Times `config.iterations` extractions for each substring length.
///
/// Position generation happens before the clock starts. With zero iterations
/// the report has no records.
pub fn run_benchmark<I: RandomAccess + ?Sized>(
    index: &I,
    config: &BenchConfig,
) -> Result<BenchReport, BenchError> {
    let plan = query_plan(config, index.text_len())?;
    let mut records = Vec::with_capacity(plan.len());
    let mut buf = Vec::new();
    for (&len, positions) in config.lengths.iter().zip(&plan) {
        let mut checksum = Checksum::default();
        let started = Instant::now();
        for &p in positions {
            buf.clear();
            index.extract_into(p, len, &mut buf)?;
            checksum.update(&buf);
        }
        let elapsed = started.elapsed();
        let total_us = elapsed.as_secs_f64() * 1e6;
        records.push(LengthRecord {
            substring_len: len,
            iterations: config.iterations,
            mean_us: total_us / config.iterations as f64,
            total_us,
            checksum: checksum.value(),
        });
    }
    Ok(BenchReport {
        config: config.clone(),
        records,
    })
}

impl BenchReport {
    pub fn rows(&self) -> Vec<BenchRow> {
        self.records
            .iter()
            .map(|r| BenchRow {
                corpus: self.config.corpus.clone(),
                index: self.config.index.clone(),
                substring_len: r.substring_len,
                iterations: r.iterations,
                mean_us: r.mean_us,
                checksum: r.checksum,
                seed: self.config.seed,
            })
            .collect()
    }

    /// Writes the header and one row per substring length.
    pub fn write_csv<W: Write>(&self, sink: W) -> Result<(), BenchError> {
        write_rows(sink, &self.rows())
    }
}

pub fn write_rows<W: Write>(sink: W, rows: &[BenchRow]) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    w.write_record([
        "corpus",
        "index",
        "substring_len",
        "iterations",
        "mean_us",
        "checksum",
        "seed",
    ])?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_rows<R: Read>(source: R) -> Result<Vec<BenchRow>, BenchError> {
    let mut r = csv::Reader::from_reader(source);
    r.deserialize()
        .map(|row| row.map_err(BenchError::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::access::Index;
    use crate::grammar::Grammar;
    use crate::succinct::BitvectorKind;

    fn worked_example() -> Index {
        let g = Grammar::parse_rules(&["ag", "cg", "#1#1#2", "#3#3#2c"]).unwrap();
        Index::fras(&g, BitvectorKind::Sparse).unwrap()
    }

    #[test]
    fn positions_stay_in_range() {
        let mut p = Prng::new(5);
        assert_eq!(gen_positions(&mut p, 7, 7, 10).unwrap(), vec![1; 10]);
        let ps = gen_positions(&mut p, 1000, 10, 100_000).unwrap();
        assert!(ps.iter().all(|&x| (1..=991).contains(&x)));
        assert!(matches!(
            gen_positions(&mut p, 5, 6, 1),
            Err(BenchError::LengthExceedsText { len: 6, n: 5 })
        ));
    }

    #[test]
    fn checksum_matches_oracle() {
        let idx = worked_example();
        let text = b"agagcgagagcgcgc";
        let config = BenchConfig {
            seed: 11,
            lengths: vec![1],
            iterations: 15,
            ..Default::default()
        };
        let report = run_benchmark(&idx, &config).unwrap();

        let mut prng = Prng::new(11);
        let mut expected = Checksum::default();
        for _ in 0..15 {
            let p = 1 + prng.next() % 15;
            expected.update(&[text[p as usize - 1]]);
        }
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.records[0].checksum, expected.value());
        assert!(report.records[0].mean_us.is_finite() && report.records[0].mean_us >= 0.0);
        assert_eq!(
            run_benchmark(&idx, &config).unwrap().records[0].checksum,
            expected.value()
        );
    }

    #[test]
    fn zero_iterations_yield_no_records() {
        let config = BenchConfig {
            iterations: 0,
            lengths: vec![1, 10],
            ..Default::default()
        };
        let report = run_benchmark(&worked_example(), &config).unwrap();
        assert!(report.records.is_empty());
        let mut out = Vec::new();
        report.write_csv(&mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "corpus,index,substring_len,iterations,mean_us,checksum,seed\n"
        );
    }

    #[test]
    fn csv_round_trip() {
        let config = BenchConfig {
            seed: 3,
            lengths: vec![1, 5],
            iterations: 50,
            index: "fras-sparse".into(),
            corpus: "example".into(),
        };
        let report = run_benchmark(&worked_example(), &config).unwrap();
        let mut out = Vec::new();
        report.write_csv(&mut out).unwrap();
        assert_eq!(read_rows(out.as_slice()).unwrap(), report.rows());
    }
}
