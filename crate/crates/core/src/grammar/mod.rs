//! Grammars whose right-hand sides are series-parallel terms over terminals
//! (lowercase letters) and nonterminals (uppercase letters).
//!
//! Text format, one or more lines per nonterminal:
//!
//! ```text
//! # comment
//! terminals: a b          (optional; when present every used terminal must be listed)
//! S -> a||b||S | a||b | eps
//! ```
//!
//! The start symbol is the left-hand side of the first production line.

mod classify;
mod derive;
mod random;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lex::{tokenize, Tok, TokKind};
use crate::term::{parse_tokens, Atom, Leaf, Term};

pub use classify::{classify_grammar, classify_production, GrammarClass, ProductionShape};
pub use derive::{generate, is_member, Derivation};
pub use random::random_parallel_linear;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonTerminal(u8);

impl NonTerminal {
    pub fn new(c: char) -> Option<NonTerminal> {
        c.is_ascii_uppercase().then_some(NonTerminal(c as u8))
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }
}

impl fmt::Debug for NonTerminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl fmt::Display for NonTerminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Symbol {
    T(Atom),
    N(NonTerminal),
}

impl Leaf for Symbol {
    fn from_letter(c: char) -> Option<Self> {
        Atom::new(c)
            .map(Symbol::T)
            .or_else(|| NonTerminal::new(c).map(Symbol::N))
    }

    fn write_leaf(&self, out: &mut String) {
        match self {
            Symbol::T(a) => out.push(a.as_char()),
            Symbol::N(n) => out.push(n.as_char()),
        }
    }
}

/// A term over terminals and nonterminals.
pub type SententialForm = Term<Symbol>;

impl SententialForm {
    pub fn nonterminals(&self) -> impl Iterator<Item = NonTerminal> + '_ {
        self.leaves().into_iter().filter_map(|s| match s {
            Symbol::N(n) => Some(*n),
            Symbol::T(_) => None,
        })
    }

    pub fn terminal_count(&self) -> usize {
        self.leaves()
            .into_iter()
            .filter(|s| matches!(s, Symbol::T(_)))
            .count()
    }

    pub fn is_terminal(&self) -> bool {
        self.nonterminals().next().is_none()
    }

    /// The word spelled by a fully terminal form.
    pub fn to_word(&self) -> Option<Term> {
        let mut ok = true;
        let w = self.map_leaves(&mut |s| match s {
            Symbol::T(a) => Term::Leaf(*a),
            Symbol::N(_) => {
                ok = false;
                Term::Eps
            }
        });
        ok.then_some(w)
    }

    pub fn from_word(w: &Term) -> SententialForm {
        w.map_leaves(&mut |a| Term::Leaf(Symbol::T(*a)))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: NonTerminal,
    pub rhs: SententialForm,
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grammar {
    nonterminals: Vec<NonTerminal>,
    terminals: BTreeSet<Atom>,
    productions: Vec<Production>,
    start: NonTerminal,
    declared_terminals: bool,
}

impl Grammar {
    /// Builds a grammar whose start symbol is the first production's
    /// left-hand side. Nonterminals are the left-hand sides; terminals are
    /// `terminals` when given, otherwise those used by the productions.
    pub fn new(productions: Vec<Production>, terminals: Option<BTreeSet<Atom>>) -> Result<Grammar> {
        let start = productions
            .first()
            .ok_or_else(|| Error::Grammar("no productions".into()))?
            .lhs;
        let mut nonterminals = Vec::new();
        for p in &productions {
            if !nonterminals.contains(&p.lhs) {
                nonterminals.push(p.lhs);
            }
        }
        let used: BTreeSet<Atom> = productions
            .iter()
            .flat_map(|p| p.rhs.leaves())
            .filter_map(|s| match s {
                Symbol::T(a) => Some(*a),
                Symbol::N(_) => None,
            })
            .collect();
        let declared_terminals = terminals.is_some();
        let terminals = terminals.unwrap_or_else(|| used.clone());
        if let Some(a) = used.iter().find(|a| !terminals.contains(a)) {
            return Err(Error::UndeclaredSymbol {
                symbol: a.to_string(),
                line: 0,
            });
        }
        for p in &productions {
            if let Some(n) = p.rhs.nonterminals().find(|n| !nonterminals.contains(n)) {
                return Err(Error::UndeclaredSymbol {
                    symbol: n.to_string(),
                    line: 0,
                });
            }
        }
        Ok(Grammar {
            nonterminals,
            terminals,
            productions,
            start,
            declared_terminals,
        })
    }

    pub fn start(&self) -> NonTerminal {
        self.start
    }

    /// Nonterminals in order of first definition.
    pub fn nonterminals(&self) -> &[NonTerminal] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &BTreeSet<Atom> {
        &self.terminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn productions_of(&self, n: NonTerminal) -> impl Iterator<Item = &Production> {
        self.productions.iter().filter(move |p| p.lhs == n)
    }

    /// Parses the grammar text format.
    pub fn parse(text: &str) -> Result<Grammar> {
        let mut productions = Vec::new();
        let mut terminals: Option<BTreeSet<Atom>> = None;
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let line_start = offset;
            offset += raw.len();
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            if let Some(rest) = content.trim_start().strip_prefix("terminals:") {
                let set = terminals.get_or_insert_with(BTreeSet::new);
                for word in rest.split_whitespace() {
                    let mut cs = word.chars();
                    match (cs.next().and_then(Atom::new), cs.next()) {
                        (Some(a), None) => {
                            set.insert(a);
                        }
                        _ => {
                            return Err(Error::syntax(line_start, format!("bad terminal {word:?}")))
                        }
                    }
                }
                continue;
            }
            let Some(arrow) = content.find("->") else {
                return Err(Error::syntax(line_start, "expected `A -> ...`"));
            };
            let lhs_text = content[..arrow].trim();
            let mut lhs_chars = lhs_text.chars();
            let lhs = match (
                lhs_chars.next().and_then(NonTerminal::new),
                lhs_chars.next(),
            ) {
                (Some(n), None) => n,
                _ => {
                    return Err(Error::syntax(
                        line_start,
                        format!("left-hand side must be one uppercase letter, found {lhs_text:?}"),
                    ))
                }
            };
            let rhs_start = line_start + arrow + 2;
            let rhs_text = &content[arrow + 2..];
            let toks = tokenize(rhs_text, rhs_start)?;
            let rhs_end = rhs_start + rhs_text.trim_end().len();
            for (alt, alt_end) in split_alternatives(&toks, rhs_end) {
                if alt.is_empty() {
                    return Err(Error::syntax(alt_end, "empty alternative"));
                }
                let rhs = parse_tokens::<Symbol>(alt, alt_end)?;
                productions.push(Production { lhs, rhs });
            }
        }
        Grammar::new(productions, terminals).map_err(|e| match e {
            // recover the line of the first offending use
            Error::UndeclaredSymbol { symbol, .. } => {
                let line = prod_lines_of(&symbol, text).unwrap_or(0);
                Error::UndeclaredSymbol { symbol, line }
            }
            other => other,
        })
    }
}

fn prod_lines_of(symbol: &str, text: &str) -> Option<usize> {
    text.lines().enumerate().find_map(|(i, l)| {
        let content = l.split('#').next().unwrap_or("");
        let rhs = content.split_once("->")?.1;
        rhs.contains(symbol).then_some(i + 1)
    })
}

/// Splits a token list on single `|`, pairing each alternative with the
/// offset to report if it is empty or truncated.
fn split_alternatives(toks: &[Tok], end: usize) -> Vec<(&[Tok], usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, t) in toks.iter().enumerate() {
        if t.kind == TokKind::Bar {
            out.push((&toks[start..i], t.offset));
            start = i + 1;
        }
    }
    out.push((&toks[start..], end));
    out
}

impl FromStr for Grammar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Grammar> {
        Grammar::parse(s)
    }
}

impl fmt::Display for Grammar {
    /// Serializes in the text format, one line per nonterminal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.declared_terminals {
            f.write_str("terminals:")?;
            for a in &self.terminals {
                write!(f, " {a}")?;
            }
            writeln!(f)?;
        }
        for &n in &self.nonterminals {
            write!(f, "{n} ->")?;
            for (i, p) in self.productions_of(n).enumerate() {
                if i > 0 {
                    f.write_str(" |")?;
                }
                write!(f, " {}", p.rhs)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
