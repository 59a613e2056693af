//! Bounded enumeration of every canonical term over an alphabet.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lang::FiniteLang;
use crate::term::{Atom, Mode, Term};

pub type Alphabet = BTreeSet<Atom>;

/// Parses an alphabet written as a run of letters, e.g. `"ab"`.
pub fn parse_alphabet(s: &str) -> Option<Alphabet> {
    let set: Option<Alphabet> = s.chars().map(Atom::new).collect();
    set.filter(|s| !s.is_empty())
}

/// All canonical terms in `mode` with at most `max_atoms` atoms, `eps`
/// included. Fails once more than `cap` ordered terms have been built.
pub fn enumerate_terms(
    alphabet: &Alphabet,
    max_atoms: usize,
    mode: Mode,
    cap: usize,
) -> Result<FiniteLang> {
    let mut builder = Builder {
        alphabet,
        cap,
        built: 0,
        non_seq: vec![Vec::new()],
        non_par: vec![Vec::new()],
    };
    let mut lang = FiniteLang::new(mode);
    lang.insert(Term::Eps);
    for k in 1..=max_atoms {
        builder.grow(k)?;
        for t in builder.non_seq[k].iter().chain(&builder.non_par[k]) {
            lang.insert(t.clone());
        }
    }
    Ok(lang)
}

struct Builder<'a> {
    alphabet: &'a Alphabet,
    cap: usize,
    built: usize,
    /// `non_seq[k]`: ordered canonical terms of size k whose root is not `.`.
    non_seq: Vec<Vec<Term>>,
    /// `non_par[k]`: same for roots other than `||`.
    non_par: Vec<Vec<Term>>,
}

impl Builder<'_> {
    fn grow(&mut self, k: usize) -> Result<()> {
        let atoms: Vec<Term> = if k == 1 {
            self.alphabet.iter().map(|a| Term::Leaf(*a)).collect()
        } else {
            Vec::new()
        };
        let seqs: Vec<Term> = self
            .products(k, &self.non_seq)
            .into_iter()
            .map(Term::Seq)
            .collect();
        let pars: Vec<Term> = self
            .products(k, &self.non_par)
            .into_iter()
            .map(Term::Par)
            .collect();
        self.built += atoms.len() + seqs.len() + pars.len();
        if self.built > self.cap {
            return Err(Error::CapExceeded { cap: self.cap });
        }
        self.non_seq
            .push(atoms.iter().cloned().chain(pars).collect());
        self.non_par.push(atoms.into_iter().chain(seqs).collect());
        Ok(())
    }

    /// Children lists of length >= 2 drawn from `pool` whose sizes sum to k.
    fn products(&self, k: usize, pool: &[Vec<Term>]) -> Vec<Vec<Term>> {
        let mut out = Vec::new();
        for first in 1..k {
            for rest in lists(k - first, pool) {
                for head in &pool[first] {
                    let mut v = Vec::with_capacity(rest.len() + 1);
                    v.push(head.clone());
                    v.extend(rest.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }
}

/// Nonempty lists from `pool` with sizes summing to k.
fn lists(k: usize, pool: &[Vec<Term>]) -> Vec<Vec<Term>> {
    let mut out: Vec<Vec<Term>> = pool[k].iter().map(|t| vec![t.clone()]).collect();
    for first in 1..k {
        for rest in lists(k - first, pool) {
            for head in &pool[first] {
                let mut v = vec![head.clone()];
                v.extend(rest.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}
