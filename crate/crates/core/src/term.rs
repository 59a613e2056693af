//! Series-parallel terms.
//!
//! A term is built from single-letter atoms with two associative operators,
//! sequential composition `.` and parallel composition `||`, both with `eps`
//! as identity. Terms are kept in a flat canonical form: no operator node has
//! a child of its own kind, no `eps` appears below an operator, and every
//! operator node has at least two children. In [`Mode::Commutative`] the
//! children of every parallel node are additionally sorted.
//!
//! The leaf type is generic so grammar sentential forms (which mix terminals
//! and nonterminals) reuse the same algebra.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lex::{tokenize, Tok, TokKind};

/// Whether `||` is read as an ordered or a commutative operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Mode {
    #[default]
    Ordered,
    Commutative,
}

impl Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ordered => "ordered",
            Mode::Commutative => "commutative",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ordered" => Ok(Mode::Ordered),
            "commutative" => Ok(Mode::Commutative),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// A member of the alphabet: one lowercase ASCII letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(u8);

impl Atom {
    pub fn new(c: char) -> Option<Atom> {
        c.is_ascii_lowercase().then_some(Atom(c as u8))
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }
}

impl Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Leaf symbols a [`Term`] can carry.
pub trait Leaf: Clone + Eq + Ord + Hash + Debug {
    fn from_letter(c: char) -> Option<Self>;
    fn write_leaf(&self, out: &mut String);
}

impl Leaf for Atom {
    fn from_letter(c: char) -> Option<Self> {
        Atom::new(c)
    }

    fn write_leaf(&self, out: &mut String) {
        out.push(self.as_char());
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term<L = Atom> {
    Eps,
    Leaf(L),
    Seq(Vec<Term<L>>),
    Par(Vec<Term<L>>),
}

/// Multiset of atoms, as a count per atom.
pub type AtomMultiset = BTreeMap<Atom, usize>;

/// Flag pair returned by [`Term::classify`]; an atom or `eps` sets both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermClass {
    /// No parallel node: a word of Σ* (or `eps`).
    pub sequential: bool,
    /// `eps`, an atom, or a parallel node over atoms only: a word of Σ^⊕.
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Sequential,
    Parallel,
    Mixed,
}

impl Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Sequential => "SEQUENTIAL",
            Class::Parallel => "PARALLEL",
            Class::Mixed => "MIXED",
        })
    }
}

impl TermClass {
    /// Single-valued reading; terms in both classes report `Sequential`.
    pub fn primary(self) -> Class {
        if self.sequential {
            Class::Sequential
        } else if self.parallel {
            Class::Parallel
        } else {
            Class::Mixed
        }
    }
}

impl<L: Leaf> Term<L> {
    pub fn leaf(l: L) -> Self {
        Term::Leaf(l)
    }

    /// Canonical sequential product of two canonical terms.
    pub fn then(self, other: Term<L>, mode: Mode) -> Term<L> {
        Term::Seq(vec![self, other]).canonicalize(mode)
    }

    /// Canonical parallel product of two canonical terms.
    pub fn par_with(self, other: Term<L>, mode: Mode) -> Term<L> {
        Term::Par(vec![self, other]).canonicalize(mode)
    }

    pub fn is_eps(&self) -> bool {
        matches!(self, Term::Eps)
    }

    pub fn canonicalize(&self, mode: Mode) -> Term<L> {
        match self {
            Term::Eps => Term::Eps,
            Term::Leaf(l) => Term::Leaf(l.clone()),
            Term::Seq(cs) => {
                let mut flat = Vec::with_capacity(cs.len());
                for c in cs {
                    match c.canonicalize(mode) {
                        Term::Eps => {}
                        Term::Seq(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                Self::rebuild(flat, Term::Seq)
            }
            Term::Par(cs) => {
                let mut flat = Vec::with_capacity(cs.len());
                for c in cs {
                    match c.canonicalize(mode) {
                        Term::Eps => {}
                        Term::Par(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                if mode == Mode::Commutative {
                    flat.sort_by_cached_key(|t| t.to_string());
                }
                Self::rebuild(flat, Term::Par)
            }
        }
    }

    /// Re-forms an already-flat children list: zero children become `eps`,
    /// one child stands for itself.
    pub(crate) fn rebuild(
        mut children: Vec<Term<L>>,
        wrap: fn(Vec<Term<L>>) -> Term<L>,
    ) -> Term<L> {
        match children.len() {
            0 => Term::Eps,
            1 => children.pop().unwrap(),
            _ => wrap(children),
        }
    }

    /// Whether the term satisfies every canonical-form invariant for `mode`.
    pub fn is_canonical(&self, mode: Mode) -> bool {
        match self {
            Term::Eps | Term::Leaf(_) => true,
            Term::Seq(cs) => {
                cs.len() >= 2
                    && cs
                        .iter()
                        .all(|c| !matches!(c, Term::Eps | Term::Seq(_)) && c.is_canonical(mode))
            }
            Term::Par(cs) => {
                cs.len() >= 2
                    && cs
                        .iter()
                        .all(|c| !matches!(c, Term::Eps | Term::Par(_)) && c.is_canonical(mode))
                    && (mode == Mode::Ordered
                        || cs.windows(2).all(|w| w[0].to_string() <= w[1].to_string()))
            }
        }
    }

    /// Sequential extent: `eps` is 0, atoms 1, `.` adds, `||` takes the max.
    pub fn length(&self) -> usize {
        match self {
            Term::Eps => 0,
            Term::Leaf(_) => 1,
            Term::Seq(cs) => cs.iter().map(Term::length).sum(),
            Term::Par(cs) => cs.iter().map(Term::length).max().unwrap_or(0),
        }
    }

    /// Parallel width: `eps` is 0, atoms 1, `.` takes the max, `||` adds.
    pub fn depth(&self) -> usize {
        match self {
            Term::Eps => 0,
            Term::Leaf(_) => 1,
            Term::Seq(cs) => cs.iter().map(Term::depth).max().unwrap_or(0),
            Term::Par(cs) => cs.iter().map(Term::depth).sum(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Term::Eps => 0,
            Term::Leaf(_) => 1,
            Term::Seq(cs) | Term::Par(cs) => cs.iter().map(Term::leaf_count).sum(),
        }
    }

    /// Leaves in left-to-right (serialization) order.
    pub fn leaves(&self) -> Vec<&L> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a L>) {
        match self {
            Term::Eps => {}
            Term::Leaf(l) => out.push(l),
            Term::Seq(cs) | Term::Par(cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Reversal: sequential children are reversed, parallel children keep
    /// their order, and the rule applies recursively. A flat parallel word is
    /// its own reverse. The result is canonical in ordered mode; callers in
    /// commutative mode re-canonicalize.
    pub fn reverse(&self) -> Term<L> {
        match self {
            Term::Eps => Term::Eps,
            Term::Leaf(l) => Term::Leaf(l.clone()),
            Term::Seq(cs) => Term::Seq(cs.iter().rev().map(Term::reverse).collect()),
            Term::Par(cs) => Term::Par(cs.iter().map(Term::reverse).collect()),
        }
    }

    pub fn classify(&self) -> TermClass {
        let sequential = !self.has_par();
        let parallel = match self {
            Term::Eps | Term::Leaf(_) => true,
            Term::Par(cs) => cs.iter().all(|c| matches!(c, Term::Leaf(_))),
            Term::Seq(_) => false,
        };
        TermClass {
            sequential,
            parallel,
        }
    }

    pub fn has_par(&self) -> bool {
        match self {
            Term::Eps | Term::Leaf(_) => false,
            Term::Par(_) => true,
            Term::Seq(cs) => cs.iter().any(Term::has_par),
        }
    }

    pub fn has_seq(&self) -> bool {
        match self {
            Term::Eps | Term::Leaf(_) => false,
            Term::Seq(_) => true,
            Term::Par(cs) => cs.iter().any(Term::has_seq),
        }
    }

    /// Children of the top-level sequential product: `eps` has none, a
    /// non-sequential term is its own single factor.
    pub fn seq_factors(&self) -> &[Term<L>] {
        match self {
            Term::Eps => &[],
            Term::Seq(cs) => cs,
            other => std::slice::from_ref(other),
        }
    }

    /// Children of the top-level parallel product, as [`Term::seq_factors`].
    pub fn par_factors(&self) -> &[Term<L>] {
        match self {
            Term::Eps => &[],
            Term::Par(cs) => cs,
            other => std::slice::from_ref(other),
        }
    }

    pub fn map_leaves<M: Leaf>(&self, f: &mut impl FnMut(&L) -> Term<M>) -> Term<M> {
        match self {
            Term::Eps => Term::Eps,
            Term::Leaf(l) => f(l),
            Term::Seq(cs) => Term::Seq(cs.iter().map(|c| c.map_leaves(f)).collect()),
            Term::Par(cs) => Term::Par(cs.iter().map(|c| c.map_leaves(f)).collect()),
        }
    }

    fn write_to(&self, out: &mut String) {
        match self {
            Term::Eps => out.push_str("eps"),
            Term::Leaf(l) => l.write_leaf(out),
            Term::Seq(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.push('.');
                    }
                    let wrap = matches!(c, Term::Par(_) | Term::Seq(_));
                    if wrap {
                        out.push('(');
                    }
                    c.write_to(out);
                    if wrap {
                        out.push(')');
                    }
                }
            }
            Term::Par(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.push_str("||");
                    }
                    let wrap = matches!(c, Term::Par(_));
                    if wrap {
                        out.push('(');
                    }
                    c.write_to(out);
                    if wrap {
                        out.push(')');
                    }
                }
            }
        }
    }

    /// Parses the term text format and returns the ordered canonical form.
    pub fn parse(text: &str) -> Result<Term<L>> {
        let toks = tokenize(text, 0)?;
        parse_tokens(&toks, text.len())
    }
}

impl Term<Atom> {
    pub fn atom(c: char) -> Term {
        Term::Leaf(Atom::new(c).expect("atoms are lowercase letters"))
    }

    pub fn atoms_multiset(&self) -> AtomMultiset {
        let mut m = AtomMultiset::new();
        for a in self.leaves() {
            *m.entry(*a).or_default() += 1;
        }
        m
    }
}

impl<L: Leaf> Display for Term<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl<L: Leaf> Debug for Term<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl FromStr for Term<Atom> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Term::parse(s)
    }
}

/// Parses a whole token slice as one term. `end` is the offset reported for
/// premature end of input.
pub(crate) fn parse_tokens<L: Leaf>(toks: &[Tok], end: usize) -> Result<Term<L>> {
    let mut p = TermParser { toks, pos: 0, end };
    let t = p.par()?;
    if let Some(tok) = p.peek() {
        return Err(Error::syntax(
            tok.offset,
            format!("unexpected {}", tok.kind.describe()),
        ));
    }
    Ok(t.canonicalize(Mode::Ordered))
}

struct TermParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    end: usize,
}

impl TermParser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn par<L: Leaf>(&mut self) -> Result<Term<L>> {
        let mut items = vec![self.seq()?];
        while self.peek().map(|t| t.kind) == Some(TokKind::ParBar) {
            self.pos += 1;
            items.push(self.seq()?);
        }
        Ok(Term::rebuild(items, Term::Par))
    }

    fn seq<L: Leaf>(&mut self) -> Result<Term<L>> {
        let mut items = vec![self.prim()?];
        while self.peek().map(|t| t.kind) == Some(TokKind::Dot) {
            self.pos += 1;
            items.push(self.prim()?);
        }
        Ok(Term::rebuild(items, Term::Seq))
    }

    fn prim<L: Leaf>(&mut self) -> Result<Term<L>> {
        let Some(tok) = self.peek() else {
            return Err(Error::syntax(self.end, "unexpected end of input"));
        };
        self.pos += 1;
        match tok.kind {
            TokKind::Eps => Ok(Term::Eps),
            TokKind::Letter(c) => L::from_letter(c).map(Term::Leaf).ok_or_else(|| {
                Error::syntax(tok.offset, format!("symbol {c:?} is not allowed here"))
            }),
            TokKind::LParen => {
                let inner = self.par()?;
                match self.peek() {
                    Some(Tok {
                        kind: TokKind::RParen,
                        ..
                    }) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(t) => Err(Error::syntax(
                        t.offset,
                        format!("expected ')', found {}", t.kind.describe()),
                    )),
                    None => Err(Error::syntax(self.end, "expected ')'")),
                }
            }
            other => Err(Error::syntax(
                tok.offset,
                format!("unexpected {}", other.describe()),
            )),
        }
    }
}
