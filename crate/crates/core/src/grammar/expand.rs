use std::io::{self, Write};

use super::Grammar;

const CHUNK: usize = 1 << 16;

impl Grammar {
    /// Streams the text derived by the start rule into `sink`.
    ///
    /// Walks the derivation tree with an explicit stack of `(rule, next symbol)`
    /// frames, so memory is bounded by the tree height, not the text length.
    pub fn expand_into<W: Write>(&self, sink: &mut W) -> io::Result<()> {
        self.expand_rule_into(self.start(), sink)
    }

    pub fn expand_rule_into<W: Write>(&self, rule: usize, sink: &mut W) -> io::Result<()> {
        let sigma = self.sigma();
        let mut buf = Vec::with_capacity(CHUNK);
        let mut stack: Vec<(usize, usize)> = vec![(rule, 0)];
        while let Some(top) = stack.last_mut() {
            let body = self.body(top.0);
            if top.1 == body.len() {
                stack.pop();
                continue;
            }
            let s = body[top.1];
            top.1 += 1;
            if s.0 < sigma {
                buf.push(self.alphabet[s.0 as usize]);
                if buf.len() >= CHUNK {
                    sink.write_all(&buf)?;
                    buf.clear();
                }
            } else {
                stack.push(((s.0 - sigma) as usize, 0));
            }
        }
        sink.write_all(&buf)
    }

    /// The whole text, materialized.
    pub fn expand(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.expand_into(&mut out)
            .expect("writing to a Vec cannot fail");
        out
    }

    pub fn expand_rule(&self, rule: usize) -> Vec<u8> {
        let mut out = Vec::new();
        self.expand_rule_into(rule, &mut out)
            .expect("writing to a Vec cannot fail");
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::grammar::{worked_example, Grammar};

    #[test]
    fn expands_worked_example() {
        assert_eq!(worked_example().expand(), b"agagcgagagcgcgc");
        assert_eq!(worked_example().expand_rule(2), b"agagcg");
        assert_eq!(Grammar::parse_rules(&["a"]).unwrap().expand(), b"a");
    }

    #[test]
    fn sink_errors_propagate() {
        struct Broken;
        impl std::io::Write for Broken {
            fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
                Err(std::io::Error::other("sink closed"))
            }
            fn flush(&mut self) -> std::io::Result<()> {
                Ok(())
            }
        }
        assert!(worked_example().expand_into(&mut Broken).is_err());
    }
}
