use std::fmt;

use super::Grammar;

/// One broken admissibility invariant. Rule ids are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoRules,
    AlphabetNotSorted,
    TooManySymbols { sigma: usize, rules: usize },
    EmptyBody { rule: usize },
    ForwardReference { rule: usize, target: usize },
    SymbolOutOfRange { rule: usize, code: u32 },
    UnusedRule { rule: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoRules => write!(f, "grammar has no rules"),
            Violation::AlphabetNotSorted => write!(f, "alphabet is not sorted and distinct"),
            Violation::TooManySymbols { sigma, rules } => {
                write!(
                    f,
                    "{sigma} terminals plus {rules} rules exceed the 32-bit symbol space"
                )
            }
            Violation::EmptyBody { rule } => write!(f, "empty body at rule {rule}"),
            Violation::ForwardReference { rule, target } => {
                write!(f, "forward reference at rule {rule} (to rule {target})")
            }
            Violation::SymbolOutOfRange { rule, code } => {
                write!(f, "out-of-range symbol {code} at rule {rule}")
            }
            Violation::UnusedRule { rule } => write!(f, "unused rule {rule}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub(super) fn validate(g: &Grammar) -> ValidationReport {
    let mut violations = Vec::new();
    let m = g.num_rules();
    if m == 0 {
        violations.push(Violation::NoRules);
        return ValidationReport { violations };
    }
    if g.alphabet().windows(2).any(|w| w[0] >= w[1]) {
        violations.push(Violation::AlphabetNotSorted);
    }
    let sigma = g.alphabet().len();
    if sigma + m > u32::MAX as usize {
        violations.push(Violation::TooManySymbols { sigma, rules: m });
        return ValidationReport { violations };
    }

    let limit = (sigma + m) as u32;
    let mut used = vec![false; m];
    for rule in 0..m {
        let body = g.body(rule);
        if body.is_empty() {
            violations.push(Violation::EmptyBody { rule: rule + 1 });
        }
        for &s in body {
            if s.0 >= limit {
                violations.push(Violation::SymbolOutOfRange {
                    rule: rule + 1,
                    code: s.0,
                });
            } else if let Some(target) = g.rule_index(s) {
                if target >= rule {
                    violations.push(Violation::ForwardReference {
                        rule: rule + 1,
                        target: target + 1,
                    });
                } else {
                    used[target] = true;
                }
            }
        }
    }
    for (rule, &u) in used.iter().enumerate().take(m - 1) {
        if !u {
            violations.push(Violation::UnusedRule { rule: rule + 1 });
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{worked_example, Symbol};

    #[test]
    fn accepts_admissible_grammars() {
        assert!(worked_example().validate().is_ok());
        assert!(Grammar::parse_rules(&["a"]).unwrap().validate().is_ok());
    }

    #[test]
    fn reports_forward_reference() {
        // X1 -> X2, X2 -> a, S -> X1
        let g = Grammar::new_unchecked(
            vec![b'a'],
            vec![vec![Symbol(2)], vec![Symbol(0)], vec![Symbol(1)]],
        );
        let report = g.validate();
        assert!(report
            .violations
            .contains(&Violation::ForwardReference { rule: 1, target: 2 }));
        assert!(report.to_string().contains("forward reference at rule 1"));
    }

    #[test]
    fn reports_each_kind() {
        let g = Grammar::new_unchecked(
            vec![b'b', b'a'],
            vec![vec![], vec![Symbol(0)], vec![Symbol(9), Symbol(3)]],
        );
        let v = g.validate().violations;
        assert!(v.contains(&Violation::AlphabetNotSorted));
        assert!(v.contains(&Violation::EmptyBody { rule: 1 }));
        assert!(v.contains(&Violation::SymbolOutOfRange { rule: 3, code: 9 }));
        assert!(v.contains(&Violation::UnusedRule { rule: 1 }));
        assert!(!v.contains(&Violation::UnusedRule { rule: 2 }));

        let empty = Grammar::new_unchecked(vec![], vec![]);
        assert_eq!(empty.validate().violations, vec![Violation::NoRules]);
    }

    #[test]
    fn self_reference_is_forward() {
        let g = Grammar::new_unchecked(vec![b'a'], vec![vec![Symbol(1)]]);
        assert_eq!(
            g.validate().violations,
            vec![Violation::ForwardReference { rule: 1, target: 1 }]
        );
    }
}
