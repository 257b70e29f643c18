use super::{Grammar, GrammarError, Symbol};

impl Grammar {
    /// Reorders the rules by nondecreasing expansion length, start rule last.
    ///
    /// Ties keep their original relative order. Returns the renumbered grammar
    /// and `old_to_new`, mapping every original 0-based rule index to its new one.
    pub fn sort_and_renumber(&self) -> Result<(Grammar, Vec<usize>), GrammarError> {
        let lengths = self.expansion_lengths()?;
        let m = self.num_rules();
        let start = self.start();
        let mut order: Vec<usize> = (0..start).collect();
        order.sort_by_key(|&i| lengths.get(i));
        order.push(start);

        let mut old_to_new = vec![0usize; m];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }

        let sigma = self.sigma();
        let mut symbols = Vec::with_capacity(self.size());
        let mut offsets = Vec::with_capacity(m + 1);
        offsets.push(0);
        for &old in &order {
            symbols.extend(self.body(old).iter().map(|&s| match self.rule_index(s) {
                Some(c) => Symbol(sigma + old_to_new[c] as u32),
                None => s,
            }));
            offsets.push(symbols.len());
        }
        Ok((
            Grammar::from_flat(self.alphabet.clone(), symbols, offsets),
            old_to_new,
        ))
    }

    /// Converts to Chomsky normal form.
    ///
    /// Every terminal in use gets one proxy rule `X -> c`, placed first. Longer
    /// bodies become left-leaning chains: `a b c d` turns into `((a b) c) d`.
    /// Unit rules `X -> Y` are resolved to `Y` and produce no rule of their own.
    pub fn binarize_cnf(&self) -> Grammar {
        let sigma = self.sigma();
        let mut used = vec![false; sigma as usize];
        for &s in self.symbols() {
            if s.0 < sigma {
                used[s.0 as usize] = true;
            }
        }

        let mut symbols: Vec<Symbol> = Vec::new();
        let mut offsets: Vec<usize> = vec![0];
        fn push(body: &[Symbol], symbols: &mut Vec<Symbol>, offsets: &mut Vec<usize>) -> usize {
            symbols.extend_from_slice(body);
            offsets.push(symbols.len());
            offsets.len() - 2
        }

        let mut proxy = vec![usize::MAX; sigma as usize];
        for t in 0..sigma {
            if used[t as usize] {
                proxy[t as usize] = push(&[Symbol(t)], &mut symbols, &mut offsets);
            }
        }

        let mut map = vec![usize::MAX; self.num_rules()];
        for rule in 0..self.num_rules() {
            let target = |s: Symbol| match self.rule_index(s) {
                Some(c) => map[c],
                None => proxy[s.0 as usize],
            };
            let body = self.body(rule);
            let mut acc = target(body[0]);
            for &s in &body[1..] {
                let pair = [Symbol(sigma + acc as u32), Symbol(sigma + target(s) as u32)];
                acc = push(&pair, &mut symbols, &mut offsets);
            }
            map[rule] = acc;
        }
        debug_assert_eq!(map[self.start()], offsets.len() - 2);
        Grammar::from_flat(self.alphabet.clone(), symbols, offsets)
    }

    /// Substitutes every rule referenced exactly once into its referencer.
    ///
    /// Inlining leaves the reference counts of the remaining rules unchanged,
    /// so a single pass reaches the fixpoint.
    pub fn inline_single_use(&self) -> Grammar {
        let m = self.num_rules();
        let sigma = self.sigma();
        let mut refs = vec![0u32; m];
        for &s in self.symbols() {
            if let Some(c) = self.rule_index(s) {
                refs[c] = refs[c].saturating_add(1);
            }
        }
        let inline = |rule: usize| rule != m - 1 && refs[rule] == 1;

        let mut built: Vec<Vec<Symbol>> = Vec::with_capacity(m);
        let mut new_index = vec![usize::MAX; m];
        let mut kept = 0usize;
        for rule in 0..m {
            let mut body = Vec::with_capacity(self.body(rule).len());
            for &s in self.body(rule) {
                match self.rule_index(s) {
                    Some(c) if inline(c) => body.append(&mut built[c]),
                    Some(c) => body.push(Symbol(sigma + new_index[c] as u32)),
                    None => body.push(s),
                }
            }
            if !inline(rule) {
                new_index[rule] = kept;
                kept += 1;
            }
            built.push(body);
        }
        let rules = built
            .into_iter()
            .enumerate()
            .filter(|&(rule, _)| !inline(rule))
            .map(|(_, body)| body)
            .collect();
        Grammar::new_unchecked(self.alphabet.clone(), rules)
    }
}
