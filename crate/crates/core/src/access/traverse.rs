use crate::grammar::Grammar;

/// A derivation-tree path: `(rule, symbol index)` frames from the start rule
/// down to a terminal occurrence.
pub(crate) type Path = Vec<(usize, usize)>;

/// Emits `len` characters starting at the terminal the top frame points at,
/// continuing by in-order traversal of the derivation tree.
pub(crate) fn emit_from(grammar: &Grammar, path: &mut Path, len: u64, out: &mut Vec<u8>) {
    let sigma = grammar.sigma();
    let mut remaining = len;
    out.reserve(len.min(1 << 20) as usize);
    loop {
        let &(rule, at) = path.last().expect("traversal ran past the end of the text");
        let s = grammar.body(rule)[at];
        if s.0 >= sigma {
            path.push(((s.0 - sigma) as usize, 0));
            continue;
        }
        out.push(grammar.terminal_byte(s));
        remaining -= 1;
        if remaining == 0 {
            return;
        }
        // advance to the next symbol, popping exhausted rules
        loop {
            let top = path
                .last_mut()
                .expect("traversal ran past the end of the text");
            top.1 += 1;
            if top.1 < grammar.body(top.0).len() {
                break;
            }
            path.pop();
        }
    }
}
