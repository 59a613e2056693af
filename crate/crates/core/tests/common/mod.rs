//! Reference implementations used as oracles. They work on the text format
//! or on plain sets and share no algorithm with the code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use splang::lang;
use splang::regex::Regex;
use splang::universe::Alphabet;
use splang::{FiniteLang, Mode, Term};

/// Length, depth and atom count read straight off the text of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TextMetrics {
    pub lg: usize,
    pub dp: usize,
    pub atoms: usize,
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl Cursor<'_> {
    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.i..].starts_with(lit.as_bytes()) {
            self.i += lit.len();
            true
        } else {
            false
        }
    }

    fn par(&mut self) -> TextMetrics {
        let mut acc = self.seq();
        while self.eat("||") {
            let m = self.seq();
            acc = TextMetrics {
                lg: acc.lg.max(m.lg),
                dp: acc.dp + m.dp,
                atoms: acc.atoms + m.atoms,
            };
        }
        acc
    }

    fn seq(&mut self) -> TextMetrics {
        let mut acc = self.prim();
        while self.eat(".") {
            let m = self.prim();
            acc = TextMetrics {
                lg: acc.lg + m.lg,
                dp: acc.dp.max(m.dp),
                atoms: acc.atoms + m.atoms,
            };
        }
        acc
    }

    fn prim(&mut self) -> TextMetrics {
        if self.eat("eps") {
            TextMetrics {
                lg: 0,
                dp: 0,
                atoms: 0,
            }
        } else if self.eat("(") {
            let m = self.par();
            assert!(self.eat(")"), "unbalanced parenthesis");
            m
        } else {
            assert!(self.s[self.i].is_ascii_lowercase(), "expected an atom");
            self.i += 1;
            TextMetrics {
                lg: 1,
                dp: 1,
                atoms: 1,
            }
        }
    }
}

pub fn text_metrics(s: &str) -> TextMetrics {
    let mut c = Cursor {
        s: s.as_bytes(),
        i: 0,
    };
    let m = c.par();
    assert_eq!(c.i, s.len(), "trailing input in {s:?}");
    m
}

/// Number of canonical nonempty terms with exactly `k` atoms over `n`
/// letters, by counting sequences (ordered) or multisets (commutative) of
/// smaller terms of the other operator.
pub fn count_terms(n: usize, max_atoms: usize, mode: Mode) -> Vec<u128> {
    // sequential and parallel products with k atoms
    let mut seq = vec![0u128; max_atoms + 1];
    let mut par = vec![0u128; max_atoms + 1];
    let atom = |k: usize| if k == 1 { n as u128 } else { 0 };
    for k in 1..=max_atoms {
        // sequences of >= 2 factors, each an atom or parallel product
        let factor: Vec<u128> = (0..=max_atoms).map(|j| atom(j) + par[j]).collect();
        seq[k] = compositions(&factor, k);
        let factor: Vec<u128> = (0..=max_atoms).map(|j| atom(j) + seq[j]).collect();
        par[k] = match mode {
            Mode::Ordered => compositions(&factor, k),
            Mode::Commutative => multisets(&factor, k),
        };
    }
    (0..=max_atoms).map(|k| atom(k) + seq[k] + par[k]).collect()
}

/// Ordered lists of at least two items with sizes summing to `k`, where
/// `items[j]` counts the items of size `j`.
fn compositions(items: &[u128], k: usize) -> u128 {
    // one[t]: single items of total t; many[t]: lists of two or more
    let mut one = vec![0u128; k + 1];
    let mut many = vec![0u128; k + 1];
    for t in 1..=k {
        one[t] = items[t];
        for j in 1..t {
            many[t] += (one[t - j] + many[t - j]) * items[j];
        }
    }
    many[k]
}

/// Multisets of at least two items with sizes summing to `k`.
fn multisets(items: &[u128], k: usize) -> u128 {
    // all multisets (any cardinality) via the Euler transform, then drop the
    // empty multiset and the singletons
    let mut all = vec![0u128; k + 1];
    all[0] = 1;
    for size in 1..=k {
        let kinds = items[size];
        if kinds == 0 {
            continue;
        }
        // multiply by (1 - x^size)^(-kinds)
        for _ in 0..kinds {
            for t in size..=k {
                all[t] += all[t - size];
            }
        }
    }
    all[k] - items[k]
}

/// Bounded language of a regex computed bottom-up with set operations,
/// keeping only members with at most `max_atoms` atoms.
pub fn naive_regex_lang(r: &Regex, max_atoms: usize, mode: Mode) -> FiniteLang {
    let trim = |mut l: FiniteLang| {
        l.retain(|t| t.leaf_count() <= max_atoms);
        l
    };
    match r {
        Regex::EmptySet => FiniteLang::new(mode),
        Regex::Eps => FiniteLang::unit(mode),
        Regex::Atom(a) => FiniteLang::from_terms(mode, [Term::Leaf(*a)]),
        Regex::Alt(v) => v.iter().fold(FiniteLang::new(mode), |acc, x| {
            lang::union(&acc, &naive_regex_lang(x, max_atoms, mode)).unwrap()
        }),
        Regex::Cat(v) => v.iter().fold(FiniteLang::unit(mode), |acc, x| {
            trim(lang::concat(&acc, &naive_regex_lang(x, max_atoms, mode)).unwrap())
        }),
        Regex::ParProd(v) => v.iter().fold(FiniteLang::unit(mode), |acc, x| {
            trim(lang::parallel(&acc, &naive_regex_lang(x, max_atoms, mode)).unwrap())
        }),
        Regex::CloseSeq(x) => fixpoint(&naive_regex_lang(x, max_atoms, mode), max_atoms, false),
        Regex::ClosePar(x) => fixpoint(&naive_regex_lang(x, max_atoms, mode), max_atoms, true),
        Regex::CloseSp(x) => {
            let body = naive_regex_lang(x, max_atoms, mode);
            lang::union(
                &fixpoint(&body, max_atoms, false),
                &fixpoint(&body, max_atoms, true),
            )
            .unwrap()
        }
    }
}

/// Least `X ⊇ {eps}` closed under `X ↦ X op body`, truncated by atoms.
fn fixpoint(body: &FiniteLang, max_atoms: usize, parallel: bool) -> FiniteLang {
    let mut acc = FiniteLang::unit(body.mode());
    loop {
        let mut next = if parallel {
            lang::parallel(&acc, body).unwrap()
        } else {
            lang::concat(&acc, body).unwrap()
        };
        next.retain(|t| t.leaf_count() <= max_atoms);
        let next = lang::union(&acc, &next).unwrap();
        if next.len() == acc.len() {
            return acc;
        }
        acc = next;
    }
}

/// Every regex over `alphabet` with at most `max_nodes` AST nodes.
pub fn all_regexes(alphabet: &Alphabet, max_nodes: usize) -> Vec<Regex> {
    let mut by_size: Vec<Vec<Regex>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes == 0 {
        return Vec::new();
    }
    by_size[1].push(Regex::EmptySet);
    by_size[1].push(Regex::Eps);
    by_size[1].extend(alphabet.iter().map(|a| Regex::Atom(*a)));
    for size in 2..=max_nodes {
        let mut out = Vec::new();
        for r in &by_size[size - 1] {
            out.push(Regex::CloseSeq(Box::new(r.clone())));
            out.push(Regex::ClosePar(Box::new(r.clone())));
            out.push(Regex::CloseSp(Box::new(r.clone())));
        }
        for left in 1..size - 1 {
            let right = size - 1 - left;
            for x in &by_size[left] {
                for y in &by_size[right] {
                    out.push(Regex::Cat(vec![x.clone(), y.clone()]));
                    out.push(Regex::Alt(vec![x.clone(), y.clone()]));
                    out.push(Regex::ParProd(vec![x.clone(), y.clone()]));
                }
            }
        }
        by_size[size] = out;
    }
    let mut seen = BTreeSet::new();
    by_size
        .into_iter()
        .flatten()
        .filter(|r| seen.insert(r.to_string()))
        .collect()
}

/// Whether a regex uses only atoms, `eps`, `|`, `||` and `^`.
pub fn in_parallel_fragment(r: &Regex) -> bool {
    match r {
        Regex::Eps | Regex::Atom(_) => true,
        Regex::Alt(v) | Regex::ParProd(v) => v.iter().all(in_parallel_fragment),
        Regex::ClosePar(x) => in_parallel_fragment(x),
        Regex::EmptySet | Regex::Cat(_) | Regex::CloseSeq(_) | Regex::CloseSp(_) => false,
    }
}

pub fn alphabet(s: &str) -> Alphabet {
    splang::universe::parse_alphabet(s).unwrap()
}
