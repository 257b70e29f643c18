//! End-to-end behaviour of the `fras` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fras::compress::repetitive_text;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tempfile::TempDir;

const EXAMPLE_TEXT: &[u8] = b"agagcgagagcgcgc";
const EXAMPLE_GRAMMAR: &str = "FRAS1-TEXT\n3\n97 99 103\n4\n2 0 2\n2 1 2\n3 3 3 4\n4 5 5 4 1\n";

fn fras(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fras"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self {
            dir: TempDir::new().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, data: &[u8]) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, data).unwrap();
        p
    }

    fn example_index(&self, structure: &str, bitvector: &str) -> PathBuf {
        let g = self.write("example.fgt", EXAMPLE_GRAMMAR.as_bytes());
        let out = self.path(&format!("example-{structure}-{bitvector}.fix"));
        let o = fras(&[
            "index",
            "--grammar",
            s(&g),
            "--output",
            s(&out),
            "--structure",
            structure,
            "--bitvector",
            bitvector,
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        out
    }
}

#[test]
fn build_then_verify_a_megabyte_corpus() {
    let ws = Workspace::new();
    let text = repetitive_text(10_000, 100, 0.01, 3);
    let input = ws.write("corpus.txt", &text);
    let grammar = ws.path("corpus.fgz");
    let o = fras(&["build", "--input", s(&input), "--output", s(&grammar)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains(&format!("n={}", text.len())));
    let o = fras(&["verify", "--grammar", s(&grammar), "--text", s(&input)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn build_rejects_empty_input() {
    let ws = Workspace::new();
    let input = ws.write("empty.txt", b"");
    let out = ws.path("empty.fgz");
    let o = fras(&["build", "--input", s(&input), "--output", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty text"));
    assert!(!out.exists());
}

#[test]
fn inlining_yields_long_bodies() {
    let ws = Workspace::new();
    let input = ws.write("abc.txt", b"abcabcabc");
    let out = ws.path("abc.fgt");
    let o = fras(&[
        "build",
        "--input",
        s(&input),
        "--output",
        s(&out),
        "--inline-single-use",
    ]);
    assert!(o.status.success());
    let g = fras::io::read_grammar_bytes(&fs::read(&out).unwrap()).unwrap();
    assert!(g.bodies().any(|b| b.len() >= 3));
    assert_eq!(g.expand(), b"abcabcabc");
}

#[test]
fn index_reports_structure_sizes() {
    let ws = Workspace::new();
    let g = ws.write("example.fgt", EXAMPLE_GRAMMAR.as_bytes());
    let out = ws.path("example.fix");
    let o = fras(&[
        "index",
        "--grammar",
        s(&g),
        "--output",
        s(&out),
        "--structure",
        "fras",
        "--bitvector",
        "sparse",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("|L|=3 |S|=4 b(B_S)=4"), "{text}");
    assert!(
        text.contains("(c) slp grammar size*lg(m+sigma): 33 bits"),
        "{text}"
    );
    assert!(
        text.contains("(d) slp lengths (|S|+m)*lg(n): 32 bits"),
        "{text}"
    );
}

#[test]
fn folklore_binarizes_only_when_needed() {
    let ws = Workspace::new();
    let g = ws.write("example.fgt", EXAMPLE_GRAMMAR.as_bytes());
    let out = ws.path("f.fix");
    let o = fras(&[
        "index",
        "--grammar",
        s(&g),
        "--output",
        s(&out),
        "--structure",
        "folklore",
    ]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("notice"));

    let cnf = ws.write("cnf.fgt", b"FRAS1-TEXT\n2\n97 98\n3\n1 0\n1 1\n2 2 3\n");
    let o = fras(&[
        "index",
        "--grammar",
        s(&cnf),
        "--output",
        s(&out),
        "--structure",
        "folklore",
    ]);
    assert!(o.status.success());
    assert!(!stderr(&o).contains("notice"), "{}", stderr(&o));
}

#[test]
fn get_returns_raw_bytes() {
    let ws = Workspace::new();
    for (structure, bv) in [("fras", "sparse"), ("fras", "plain"), ("folklore", "plain")] {
        let idx = ws.example_index(structure, bv);
        let o = fras(&["get", "--index", s(&idx), "-p", "5", "-l", "1"]);
        assert_eq!(o.stdout, b"c");
        let o = fras(&["get", "--index", s(&idx), "-p", "1", "-l", "15"]);
        assert_eq!(o.stdout, EXAMPLE_TEXT);
        for (p, l) in [("0", "1"), ("15", "2"), ("16", "1")] {
            let o = fras(&["get", "--index", s(&idx), "-p", p, "-l", l]);
            assert_eq!(o.status.code(), Some(2));
            assert!(o.stdout.is_empty());
        }
    }
}

#[test]
fn plain_and_sparse_agree_with_text() {
    let ws = Workspace::new();
    let mut rng = StdRng::seed_from_u64(8);
    let text: Vec<u8> = repetitive_text(500, 8, 0.02, 4);
    let input = ws.write("t.txt", &text);
    let g = ws.path("t.fgz");
    assert!(fras(&["build", "--input", s(&input), "--output", s(&g)])
        .status
        .success());
    let plain = ws.path("p.fix");
    let sparse = ws.path("s.fix");
    assert!(fras(&[
        "index",
        "--grammar",
        s(&g),
        "--output",
        s(&plain),
        "--bitvector",
        "plain"
    ])
    .status
    .success());
    assert!(fras(&[
        "index",
        "--grammar",
        s(&g),
        "--output",
        s(&sparse),
        "--bitvector",
        "sparse"
    ])
    .status
    .success());
    for _ in 0..30 {
        let p = rng.gen_range(1..=text.len());
        let l = rng.gen_range(1..=(text.len() - p + 1).min(200));
        let (ps, ls) = (p.to_string(), l.to_string());
        let a = fras(&["get", "--index", s(&plain), "-p", &ps, "-l", &ls]);
        let b = fras(&["get", "--index", s(&sparse), "-p", &ps, "-l", &ls]);
        assert_eq!(a.stdout, &text[p - 1..p - 1 + l]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn verify_reports_first_mismatch() {
    let ws = Workspace::new();
    let g = ws.write("example.fgt", EXAMPLE_GRAMMAR.as_bytes());
    let good = ws.write("good.txt", EXAMPLE_TEXT);
    assert_eq!(
        fras(&["verify", "--grammar", s(&g), "--text", s(&good)])
            .status
            .code(),
        Some(0)
    );

    let longer = ws.write("longer.txt", &[EXAMPLE_TEXT, b"x"].concat());
    let o = fras(&["verify", "--grammar", s(&g), "--text", s(&longer)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stdout(&o).contains("mismatch at offset 16"),
        "{}",
        stdout(&o)
    );

    let shorter = ws.write("short.txt", &EXAMPLE_TEXT[..10]);
    let o = fras(&["verify", "--grammar", s(&g), "--text", s(&shorter)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stdout(&o).contains("mismatch at offset 11"),
        "{}",
        stdout(&o)
    );

    let mut changed = EXAMPLE_TEXT.to_vec();
    changed[6] = b't';
    let changed = ws.write("changed.txt", &changed);
    let o = fras(&["verify", "--grammar", s(&g), "--text", s(&changed)]);
    assert!(
        stdout(&o).contains("mismatch at offset 7"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn stats_prints_one_row() {
    let ws = Workspace::new();
    let g = ws.write("example.fgt", EXAMPLE_GRAMMAR.as_bytes());
    let o = fras(&["stats", "--grammar", s(&g)]);
    assert_eq!(stdout(&o), "3,3,4,7,15\n");
    let single = ws.write("single.fgt", b"FRAS1-TEXT\n1\n97\n1\n1 0\n");
    let o = fras(&["stats", "--grammar", s(&single)]);
    assert_eq!(stdout(&o), "0,1,1,0,1\n");
}

#[test]
fn space_reads_an_index() {
    let ws = Workspace::new();
    let idx = ws.example_index("fras", "sparse");
    let o = fras(&["space", "--index", s(&idx)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("measured total: payload 21 bits"), "{text}");
    assert!(
        text.contains("payload within bound + auxiliary: yes"),
        "{text}"
    );
}

#[test]
fn bench_csv_and_determinism() {
    let ws = Workspace::new();
    let idx = ws.example_index("fras", "sparse");
    let a = ws.path("a.csv");
    let b = ws.path("b.csv");
    for out in [&a, &b] {
        let o = fras(&[
            "bench",
            "--index",
            s(&idx),
            "--seed",
            "9",
            "--iterations",
            "200",
            "--lengths",
            "1,3,15",
            "--out",
            s(out),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let rows_a = fras::bench::read_rows(fs::File::open(&a).unwrap()).unwrap();
    let rows_b = fras::bench::read_rows(fs::File::open(&b).unwrap()).unwrap();
    assert_eq!(rows_a.len(), 3);
    let sums = |rows: &[fras::bench::BenchRow]| rows.iter().map(|r| r.checksum).collect::<Vec<_>>();
    assert_eq!(sums(&rows_a), sums(&rows_b));
    assert!(rows_a
        .iter()
        .all(|r| r.mean_us.is_finite() && r.mean_us >= 0.0));
    assert_eq!(rows_a[0].corpus, "example-fras-sparse");

    let empty = ws.path("empty.csv");
    let o = fras(&[
        "bench",
        "--index",
        s(&idx),
        "--iterations",
        "0",
        "--lengths",
        "1",
        "--out",
        s(&empty),
    ]);
    assert!(o.status.success());
    assert_eq!(
        fs::read_to_string(&empty).unwrap(),
        "corpus,index,substring_len,iterations,mean_us,checksum,seed\n"
    );
}

#[test]
fn usage_errors_exit_one_without_writing() {
    let ws = Workspace::new();
    let out = ws.path("never.csv");
    for args in [
        vec!["frobnicate"],
        vec!["get", "--index"],
        vec![
            "index",
            "--grammar",
            "g",
            "--output",
            s(&out),
            "--structure",
            "tree",
        ],
        vec![
            "bench",
            "--index",
            "x",
            "--out",
            s(&out),
            "--lengths",
            "1,zero",
        ],
        vec!["bench", "--index", "x", "--out", s(&out), "--lengths", "0"],
    ] {
        let o = fras(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
    assert!(!out.exists());
    assert_eq!(fras(&["--help"]).status.code(), Some(0));
}

#[test]
fn data_errors_exit_two() {
    let ws = Workspace::new();
    let junk = ws.write("junk.bin", &[1, 2, 3, 4, 5, 6]);
    let o = fras(&["stats", "--grammar", s(&junk)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unrecognized format"));
    let o = fras(&["space", "--index", s(&ws.path("missing.fix"))]);
    assert_eq!(o.status.code(), Some(2));
    let idx = ws.example_index("fras", "plain");
    let out = ws.path("long.csv");
    let o = fras(&["bench", "--index", s(&idx), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}
