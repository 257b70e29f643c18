use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use fras::bench::{self, BenchConfig};
use fras::compress::repair_compress;
use fras::space::IndexSpace;
use fras::{io as fio, Grammar, Index, RandomAccess};

use crate::{Command, Structure, DATA_ERROR};

pub(crate) fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Build {
            input,
            output,
            inline_single_use,
        } => build(&input, &output, inline_single_use),
        Command::Index {
            grammar,
            output,
            structure,
            bitvector,
        } => index(&grammar, &output, structure, bitvector.into()),
        Command::Get {
            index,
            position,
            length,
        } => get(&index, position, length),
        Command::Verify { grammar, text } => verify(&grammar, &text),
        Command::Stats { grammar } => stats(&grammar),
        Command::Space { index } => space(&index),
        Command::Bench {
            index,
            seed,
            iterations,
            lengths,
            out,
            corpus,
            positions_out,
        } => {
            let corpus = corpus.unwrap_or_else(|| {
                index
                    .file_stem()
                    .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
            });
            let config = BenchConfig {
                seed,
                lengths,
                iterations,
                index: String::new(),
                corpus,
            };
            run_bench(&index, config, &out, positions_out.as_deref())
        }
    }
}

fn load_grammar(path: &Path) -> Result<Grammar> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    fio::read_grammar_bytes(&bytes).with_context(|| format!("loading grammar {}", path.display()))
}

fn load_index(path: &Path) -> Result<Index> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    fio::read_index_bytes(&bytes).with_context(|| format!("loading index {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn is_text_grammar(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "fgt")
}

fn build(input: &Path, output: &Path, inline: bool) -> Result<ExitCode> {
    let text = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let mut grammar = repair_compress(&text)?;
    if inline {
        grammar = grammar.inline_single_use();
    }
    let stats = grammar.stats()?;
    let sink = create(output)?;
    if is_text_grammar(output) {
        fio::write_grammar_text(&grammar, sink)?;
    } else {
        fio::write_grammar(&grammar, sink)?;
    }
    println!(
        "rules={} depth={} start={} size={} n={}",
        stats.rules, stats.depth, stats.start, stats.size, stats.n
    );
    Ok(ExitCode::SUCCESS)
}

fn index(
    grammar_path: &Path,
    output: &Path,
    structure: Structure,
    bitvector: fras::BitvectorKind,
) -> Result<ExitCode> {
    let grammar = load_grammar(grammar_path)?;
    let index = match structure {
        Structure::Fras => Index::fras(&grammar, bitvector)?,
        Structure::Folklore => {
            let cnf = if grammar.is_cnf() {
                grammar
            } else {
                eprintln!(
                    "notice: grammar is not in CNF; binarizing before building the folklore index"
                );
                grammar.binarize_cnf()
            };
            Index::folklore(cnf)?
        }
    };
    fio::write_index(&index, create(output)?)?;
    println!("{}", IndexSpace::of(&index));
    Ok(ExitCode::SUCCESS)
}

fn get(index_path: &Path, position: u64, length: u64) -> Result<ExitCode> {
    let index = load_index(index_path)?;
    let bytes = index.extract(position, length)?;
    let mut out = io::stdout().lock();
    out.write_all(&bytes)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

/// Compares streamed expansion output against a reference text.
struct Comparator<'a> {
    expected: &'a [u8],
    matched: usize,
    mismatch: Option<usize>,
}

impl Write for Comparator<'_> {
    fn write(&mut self, chunk: &[u8]) -> io::Result<usize> {
        let rest = &self.expected[self.matched..];
        let common = chunk.len().min(rest.len());
        if let Some(i) = (0..common).find(|&i| chunk[i] != rest[i]) {
            self.mismatch = Some(self.matched + i);
        } else if chunk.len() > rest.len() {
            self.mismatch = Some(self.expected.len());
        }
        if self.mismatch.is_some() {
            return Err(io::Error::other("mismatch"));
        }
        self.matched += chunk.len();
        Ok(chunk.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}

fn verify(grammar_path: &Path, text_path: &Path) -> Result<ExitCode> {
    let grammar = load_grammar(grammar_path)?;
    let text = fs::read(text_path).with_context(|| format!("reading {}", text_path.display()))?;
    let mut cmp = Comparator {
        expected: &text,
        matched: 0,
        mismatch: None,
    };
    let streamed = grammar.expand_into(&mut cmp);
    let mismatch = match (streamed, cmp.mismatch) {
        (_, Some(at)) => Some(at),
        (Err(e), None) => return Err(e.into()),
        (Ok(()), None) if cmp.matched < text.len() => Some(cmp.matched),
        (Ok(()), None) => None,
    };
    match mismatch {
        None => {
            println!("ok: {} bytes match", text.len());
            Ok(ExitCode::SUCCESS)
        }
        Some(at) => {
            println!("mismatch at offset {}", at + 1);
            Ok(ExitCode::from(DATA_ERROR))
        }
    }
}

fn stats(grammar_path: &Path) -> Result<ExitCode> {
    let s = load_grammar(grammar_path)?.stats()?;
    println!("{},{},{},{},{}", s.rules, s.depth, s.start, s.size, s.n);
    Ok(ExitCode::SUCCESS)
}

fn space(index_path: &Path) -> Result<ExitCode> {
    println!("{}", IndexSpace::of(&load_index(index_path)?));
    Ok(ExitCode::SUCCESS)
}

fn run_bench(
    index_path: &Path,
    mut config: BenchConfig,
    out: &Path,
    positions_out: Option<&Path>,
) -> Result<ExitCode> {
    let index = load_index(index_path)?;
    config.index = index.kind().to_string();
    let report = bench::run_benchmark(&index, &config)?;
    report.write_csv(create(out)?)?;
    if let Some(path) = positions_out {
        let mut sink = create(path)?;
        writeln!(sink, "substring_len,position")?;
        let plan = bench::query_plan(&config, index.text_len())?;
        for (len, positions) in config.lengths.iter().zip(&plan) {
            for p in positions {
                writeln!(sink, "{len},{p}")?;
            }
        }
        sink.flush()?;
    }
    for r in &report.records {
        println!(
            "{} len={} iterations={} mean_us={:.3} checksum={:016x}",
            config.index, r.substring_len, r.iterations, r.mean_us, r.checksum
        );
    }
    Ok(ExitCode::SUCCESS)
}
