//! Conversion of parallel-fragment regexes to parallel-linear grammars.
//!
//! Inside the fragment (atoms, `eps`, `|`, `||` and `^`), a parallel word is a
//! list of atoms, so `||` acts as concatenation and `^` as a star. The
//! grammar is the position automaton of the regex written as productions: a
//! start symbol plus one nonterminal per atom occurrence, standing for "the
//! rest of the word after this position".

use std::collections::BTreeSet;

use super::Regex;
use crate::error::{Error, Result};
use crate::grammar::{Grammar, NonTerminal, Production, SententialForm, Symbol};
use crate::term::{Atom, Term};

/// Nonterminal letters for positions; `S` is reserved for the start symbol.
const POSITION_NAMES: &str = "ABCDEFGHIJKLMNOPQRTUVWXYZ";

struct Info {
    nullable: bool,
    first: BTreeSet<usize>,
    last: BTreeSet<usize>,
}

struct Positions {
    atoms: Vec<Atom>,
    follow: Vec<BTreeSet<usize>>,
}

impl Positions {
    fn visit(&mut self, r: &Regex) -> Result<Info> {
        Ok(match r {
            Regex::Eps => Info {
                nullable: true,
                first: BTreeSet::new(),
                last: BTreeSet::new(),
            },
            Regex::Atom(a) => {
                self.atoms.push(*a);
                self.follow.push(BTreeSet::new());
                let p = self.atoms.len() - 1;
                Info {
                    nullable: false,
                    first: BTreeSet::from([p]),
                    last: BTreeSet::from([p]),
                }
            }
            Regex::Alt(alts) => {
                let mut out = Info {
                    nullable: false,
                    first: BTreeSet::new(),
                    last: BTreeSet::new(),
                };
                for a in alts {
                    let i = self.visit(a)?;
                    out.nullable |= i.nullable;
                    out.first.extend(i.first);
                    out.last.extend(i.last);
                }
                out
            }
            Regex::ParProd(factors) => {
                let mut acc = self.visit(&factors[0])?;
                for f in &factors[1..] {
                    let next = self.visit(f)?;
                    for &p in &acc.last {
                        self.follow[p].extend(next.first.iter().copied());
                    }
                    if acc.nullable {
                        acc.first.extend(next.first.iter().copied());
                    }
                    acc.last = if next.nullable {
                        acc.last.union(&next.last).copied().collect()
                    } else {
                        next.last
                    };
                    acc.nullable &= next.nullable;
                }
                acc
            }
            Regex::ClosePar(body) => {
                let i = self.visit(body)?;
                for &p in &i.last {
                    self.follow[p].extend(i.first.iter().copied());
                }
                Info {
                    nullable: true,
                    ..i
                }
            }
            Regex::EmptySet | Regex::Cat(_) | Regex::CloseSeq(_) | Regex::CloseSp(_) => {
                return Err(Error::Fragment(format!(
                    "{r} uses an operator outside atoms, eps, |, || and ^"
                )))
            }
        })
    }
}

/// Builds a parallel-linear grammar generating the same parallel words as a
/// regex built from atoms, `eps`, `|`, `||` and `^`.
pub fn to_parallel_linear_grammar(r: &Regex) -> Result<Grammar> {
    let mut pos = Positions {
        atoms: Vec::new(),
        follow: Vec::new(),
    };
    let info = pos.visit(r)?;
    if pos.atoms.len() > POSITION_NAMES.len() {
        return Err(Error::Grammar(format!(
            "{} atom occurrences exceed the {} available nonterminal names",
            pos.atoms.len(),
            POSITION_NAMES.len()
        )));
    }
    let start = NonTerminal::new('S').unwrap();
    let names: Vec<NonTerminal> = POSITION_NAMES
        .chars()
        .take(pos.atoms.len())
        .map(|c| NonTerminal::new(c).unwrap())
        .collect();
    let step = |p: usize| -> SententialForm {
        Term::Par(vec![
            Term::Leaf(Symbol::T(pos.atoms[p])),
            Term::Leaf(Symbol::N(names[p])),
        ])
    };

    let mut productions = Vec::new();
    for &p in &info.first {
        productions.push(Production {
            lhs: start,
            rhs: step(p),
        });
    }
    if info.nullable {
        productions.push(Production {
            lhs: start,
            rhs: Term::Eps,
        });
    }
    for (p, &name) in names.iter().enumerate() {
        for &q in &pos.follow[p] {
            productions.push(Production {
                lhs: name,
                rhs: step(q),
            });
        }
        if info.last.contains(&p) {
            productions.push(Production {
                lhs: name,
                rhs: Term::Eps,
            });
        }
    }
    Grammar::new(productions, None)
}
