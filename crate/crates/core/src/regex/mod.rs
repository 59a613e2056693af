//! Series-parallel regular expressions.
//!
//! Text syntax: atoms `a`-`z`, `eps`, `0` for the empty set, postfix `*`
//! (sequential closure), `^` (parallel closure) and `@` (series-parallel
//! closure), infix `.`, `||` and `|`. Postfix operators bind tightest, then
//! `.`, then `||`, then `|`.

mod linear;
mod matcher;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lang::FiniteLang;
use crate::lex::{tokenize, Tok, TokKind};
use crate::term::{Atom, Mode};
use crate::universe::{enumerate_terms, Alphabet};

pub use linear::to_parallel_linear_grammar;
pub use matcher::Matcher;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    EmptySet,
    Eps,
    Atom(Atom),
    Cat(Vec<Regex>),
    Alt(Vec<Regex>),
    ParProd(Vec<Regex>),
    /// `R*`
    CloseSeq(Box<Regex>),
    /// `R^`
    ClosePar(Box<Regex>),
    /// `R@`
    CloseSp(Box<Regex>),
}

impl Regex {
    pub fn atom(c: char) -> Regex {
        Regex::Atom(Atom::new(c).expect("atoms are lowercase letters"))
    }

    pub fn cat(items: Vec<Regex>) -> Regex {
        Self::variadic(items, Regex::Cat, |r| match r {
            Regex::Cat(v) => Ok(v),
            other => Err(other),
        })
    }

    pub fn alt(items: Vec<Regex>) -> Regex {
        Self::variadic(items, Regex::Alt, |r| match r {
            Regex::Alt(v) => Ok(v),
            other => Err(other),
        })
    }

    pub fn par_prod(items: Vec<Regex>) -> Regex {
        Self::variadic(items, Regex::ParProd, |r| match r {
            Regex::ParProd(v) => Ok(v),
            other => Err(other),
        })
    }

    /// Flattens same-kind children and collapses singletons. An empty list is
    /// not a valid variadic node; callers always pass at least one item.
    fn variadic(
        items: Vec<Regex>,
        wrap: fn(Vec<Regex>) -> Regex,
        split: fn(Regex) -> std::result::Result<Vec<Regex>, Regex>,
    ) -> Regex {
        let mut flat = Vec::with_capacity(items.len());
        for r in items {
            match split(r) {
                Ok(inner) => flat.extend(inner),
                Err(other) => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "variadic regex node needs a child");
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            wrap(flat)
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Regex::EmptySet | Regex::Eps | Regex::Atom(_) => 1,
            Regex::Cat(v) | Regex::Alt(v) | Regex::ParProd(v) => {
                1 + v.iter().map(Regex::size).sum::<usize>()
            }
            Regex::CloseSeq(r) | Regex::ClosePar(r) | Regex::CloseSp(r) => 1 + r.size(),
        }
    }

    /// Atoms occurring in the expression.
    pub fn atoms(&self) -> Alphabet {
        fn go(r: &Regex, out: &mut Alphabet) {
            match r {
                Regex::EmptySet | Regex::Eps => {}
                Regex::Atom(a) => {
                    out.insert(*a);
                }
                Regex::Cat(v) | Regex::Alt(v) | Regex::ParProd(v) => {
                    v.iter().for_each(|c| go(c, out))
                }
                Regex::CloseSeq(r) | Regex::ClosePar(r) | Regex::CloseSp(r) => go(r, out),
            }
        }
        let mut out = Alphabet::new();
        go(self, &mut out);
        out
    }

    pub fn parse(text: &str) -> Result<Regex> {
        let toks = tokenize(text, 0)?;
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            end: text.len(),
        };
        let r = p.alt()?;
        if let Some(t) = p.toks.get(p.pos) {
            return Err(Error::syntax(
                t.offset,
                format!("unexpected {}", t.kind.describe()),
            ));
        }
        Ok(r)
    }

    fn prec(&self) -> u8 {
        match self {
            Regex::Alt(_) => 0,
            Regex::ParProd(_) => 1,
            Regex::Cat(_) => 2,
            Regex::CloseSeq(_) | Regex::ClosePar(_) | Regex::CloseSp(_) => 3,
            Regex::EmptySet | Regex::Eps | Regex::Atom(_) => 4,
        }
    }

    fn write_child(&self, child: &Regex, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Variadic children of equal precedence only appear in non-flat
        // trees; parenthesize them so the text re-parses to the same shape.
        let needs = match self {
            Regex::CloseSeq(_) | Regex::ClosePar(_) | Regex::CloseSp(_) => child.prec() < 3,
            _ => child.prec() <= self.prec(),
        };
        if needs {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::EmptySet => f.write_str("0"),
            Regex::Eps => f.write_str("eps"),
            Regex::Atom(a) => write!(f, "{a}"),
            Regex::Cat(v) | Regex::Alt(v) | Regex::ParProd(v) => {
                let sep = match self {
                    Regex::Cat(_) => ".",
                    Regex::Alt(_) => "|",
                    _ => "||",
                };
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    self.write_child(c, f)?;
                }
                Ok(())
            }
            Regex::CloseSeq(r) | Regex::ClosePar(r) | Regex::CloseSp(r) => {
                self.write_child(r, f)?;
                f.write_str(match self {
                    Regex::CloseSeq(_) => "*",
                    Regex::ClosePar(_) => "^",
                    _ => "@",
                })
            }
        }
    }
}

impl fmt::Debug for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Regex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Regex> {
        Regex::parse(s)
    }
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn eat(&mut self, kind: TokKind) -> bool {
        if self.toks.get(self.pos).map(|t| t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn alt(&mut self) -> Result<Regex> {
        let mut items = vec![self.par()?];
        while self.eat(TokKind::Bar) {
            items.push(self.par()?);
        }
        Ok(Regex::alt(items))
    }

    fn par(&mut self) -> Result<Regex> {
        let mut items = vec![self.cat()?];
        while self.eat(TokKind::ParBar) {
            items.push(self.cat()?);
        }
        Ok(Regex::par_prod(items))
    }

    fn cat(&mut self) -> Result<Regex> {
        let mut items = vec![self.postfix()?];
        while self.eat(TokKind::Dot) {
            items.push(self.postfix()?);
        }
        Ok(Regex::cat(items))
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.prim()?;
        loop {
            r = if self.eat(TokKind::Star) {
                Regex::CloseSeq(Box::new(r))
            } else if self.eat(TokKind::Caret) {
                Regex::ClosePar(Box::new(r))
            } else if self.eat(TokKind::At) {
                Regex::CloseSp(Box::new(r))
            } else {
                return Ok(r);
            };
        }
    }

    fn prim(&mut self) -> Result<Regex> {
        let Some(tok) = self.toks.get(self.pos).copied() else {
            return Err(Error::syntax(self.end, "unexpected end of input"));
        };
        self.pos += 1;
        match tok.kind {
            TokKind::Zero => Ok(Regex::EmptySet),
            TokKind::Eps => Ok(Regex::Eps),
            TokKind::Letter(c) => Atom::new(c)
                .map(Regex::Atom)
                .ok_or_else(|| Error::syntax(tok.offset, format!("{c:?} is not an atom"))),
            TokKind::LParen => {
                let inner = self.alt()?;
                if self.eat(TokKind::RParen) {
                    Ok(inner)
                } else {
                    let at = self.toks.get(self.pos).map_or(self.end, |t| t.offset);
                    Err(Error::syntax(at, "expected ')'"))
                }
            }
            other => Err(Error::syntax(
                tok.offset,
                format!("unexpected {}", other.describe()),
            )),
        }
    }
}

/// Whether `t` belongs to the language of `r` (structural matching).
pub fn matches(r: &Regex, t: &crate::Term, mode: Mode) -> bool {
    Matcher::new(r, mode).matches(&t.canonicalize(mode))
}

/// Members of the bounded universe over `alphabet` that `r` matches.
pub fn regex_enumerate(
    r: &Regex,
    alphabet: &Alphabet,
    max_atoms: usize,
    mode: Mode,
    cap: usize,
) -> Result<FiniteLang> {
    let mut lang = enumerate_terms(alphabet, max_atoms, mode, cap)?;
    let mut m = Matcher::new(r, mode);
    lang.retain(|t| m.matches(t));
    Ok(lang)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Regex {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            r("(a||b)^"),
            Regex::ClosePar(Box::new(Regex::ParProd(vec![
                Regex::atom('a'),
                Regex::atom('b')
            ])))
        );
        assert_eq!(
            r("a|b"),
            Regex::Alt(vec![Regex::atom('a'), Regex::atom('b')])
        );
        assert_eq!(r("a@"), Regex::CloseSp(Box::new(Regex::atom('a'))));
        assert_eq!(r("0"), Regex::EmptySet);
    }

    #[test]
    fn precedence() {
        // postfix > . > || > |
        assert_eq!(
            r("a.b*||c|d"),
            Regex::Alt(vec![
                Regex::ParProd(vec![
                    Regex::Cat(vec![
                        Regex::atom('a'),
                        Regex::CloseSeq(Box::new(Regex::atom('b')))
                    ]),
                    Regex::atom('c')
                ]),
                Regex::atom('d')
            ])
        );
        assert_eq!(r("a.(b.c)"), r("a.b.c"));
        assert_eq!(r("(a|b)|c"), r("a|b|c"));
    }

    #[test]
    fn format_round_trip() {
        for s in [
            "(a||b)^",
            "a|b",
            "a@",
            "a*.b",
            "(a|b).c||d",
            "((a.b)^||c)*",
            "a**^",
            "eps|0",
            "(a||b).(c|d)",
        ] {
            assert_eq!(r(s).to_string(), s);
            assert_eq!(r(&r(s).to_string()), r(s));
        }
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            Regex::parse("(a|b"),
            Err(Error::Syntax { offset: 4, .. })
        ));
        assert!(matches!(
            Regex::parse("a..b"),
            Err(Error::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            Regex::parse("*a"),
            Err(Error::Syntax { offset: 0, .. })
        ));
        assert!(matches!(
            Regex::parse("A"),
            Err(Error::Syntax { offset: 0, .. })
        ));
    }
}
