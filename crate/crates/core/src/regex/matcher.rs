use std::collections::{HashMap, HashSet};

use super::Regex;
use crate::term::{Atom, Mode, Term};

#[derive(Debug)]
enum Node {
    EmptySet,
    Eps,
    Atom(Atom),
    Cat(Vec<usize>),
    Alt(Vec<usize>),
    ParProd(Vec<usize>),
    CloseSeq(usize),
    ClosePar(usize),
    CloseSp(usize),
}

/// Structural matcher for one regex, memoized on (subexpression, subterm).
///
/// A product node matches a term when the term's top-level factor list (its
/// sequential children for `.`, parallel children for `||`) splits into one
/// part per factor. Parts may be empty and stand for `eps`. Parallel splits
/// are contiguous in ordered mode and arbitrary sub-multisets in commutative
/// mode. Closures accept `eps` or a split into one or more nonempty parts that
/// each match the body.
///
/// Terms passed in must already be canonical for the matcher's mode.
pub struct Matcher {
    nodes: Vec<Node>,
    root: usize,
    mode: Mode,
    memo: HashMap<(usize, Term), bool>,
}

impl Matcher {
    pub fn new(r: &Regex, mode: Mode) -> Matcher {
        let mut nodes = Vec::new();
        let root = lower(r, &mut nodes);
        Matcher {
            nodes,
            root,
            mode,
            memo: HashMap::new(),
        }
    }

    pub fn matches(&mut self, t: &Term) -> bool {
        self.at(self.root, t)
    }

    fn at(&mut self, id: usize, t: &Term) -> bool {
        if let Some(&hit) = self.memo.get(&(id, t.clone())) {
            return hit;
        }
        let result = self.compute(id, t);
        self.memo.insert((id, t.clone()), result);
        result
    }

    fn compute(&mut self, id: usize, t: &Term) -> bool {
        match &self.nodes[id] {
            Node::EmptySet => false,
            Node::Eps => t.is_eps(),
            Node::Atom(a) => matches!(t, Term::Leaf(b) if a == b),
            Node::Alt(alts) => {
                let alts = alts.clone();
                alts.into_iter().any(|a| self.at(a, t))
            }
            Node::Cat(factors) => {
                let factors = factors.clone();
                self.split_contiguous(&factors, t.seq_factors(), Term::Seq)
            }
            Node::ParProd(factors) => {
                let factors = factors.clone();
                match self.mode {
                    Mode::Ordered => self.split_contiguous(&factors, t.par_factors(), Term::Par),
                    Mode::Commutative => self.split_multiset(&factors, t.par_factors()),
                }
            }
            &Node::CloseSeq(body) => {
                t.is_eps() || self.iterate_contiguous(body, t.seq_factors(), Term::Seq)
            }
            &Node::ClosePar(body) => t.is_eps() || self.close_par(body, t),
            &Node::CloseSp(body) => {
                t.is_eps()
                    || self.iterate_contiguous(body, t.seq_factors(), Term::Seq)
                    || self.close_par(body, t)
            }
        }
    }

    fn close_par(&mut self, body: usize, t: &Term) -> bool {
        match self.mode {
            Mode::Ordered => self.iterate_contiguous(body, t.par_factors(), Term::Par),
            Mode::Commutative => self.iterate_multiset(body, t.par_factors()),
        }
    }

    /// Splits `items` into `factors.len()` contiguous, possibly empty parts.
    fn split_contiguous(
        &mut self,
        factors: &[usize],
        items: &[Term],
        wrap: fn(Vec<Term>) -> Term,
    ) -> bool {
        let Some((&first, rest)) = factors.split_first() else {
            return items.is_empty();
        };
        if rest.is_empty() {
            return self.at(first, &Term::rebuild(items.to_vec(), wrap));
        }
        (0..=items.len()).any(|cut| {
            self.at(first, &Term::rebuild(items[..cut].to_vec(), wrap))
                && self.split_contiguous(rest, &items[cut..], wrap)
        })
    }

    /// Splits the multiset `items` into one sub-multiset per factor.
    fn split_multiset(&mut self, factors: &[usize], items: &[Term]) -> bool {
        let Some((&first, rest)) = factors.split_first() else {
            return items.is_empty();
        };
        if rest.is_empty() {
            return self.at(first, &Term::rebuild(items.to_vec(), Term::Par));
        }
        let mut seen = HashSet::new();
        for (chosen, remaining) in sub_multisets(items) {
            if !seen.insert(chosen.clone()) {
                continue;
            }
            if self.at(first, &Term::rebuild(chosen, Term::Par))
                && self.split_multiset(rest, &remaining)
            {
                return true;
            }
        }
        false
    }

    /// Whether nonempty `items` split into one or more nonempty contiguous
    /// runs that each match `body`.
    fn iterate_contiguous(
        &mut self,
        body: usize,
        items: &[Term],
        wrap: fn(Vec<Term>) -> Term,
    ) -> bool {
        let n = items.len();
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for end in 1..=n {
            reach[end] = (0..end).any(|start| {
                reach[start] && self.at(body, &Term::rebuild(items[start..end].to_vec(), wrap))
            });
        }
        n > 0 && reach[n]
    }

    /// Whether the nonempty multiset `items` partitions into nonempty blocks
    /// that each match `body`.
    fn iterate_multiset(&mut self, body: usize, items: &[Term]) -> bool {
        let Some((head, tail)) = items.split_first() else {
            return false;
        };
        let mut seen = HashSet::new();
        for (mut block, remaining) in sub_multisets(tail) {
            block.insert(0, head.clone());
            if !seen.insert(block.clone()) {
                continue;
            }
            if self.at(body, &Term::rebuild(block, Term::Par))
                && (remaining.is_empty() || self.iterate_multiset(body, &remaining))
            {
                return true;
            }
        }
        false
    }
}

/// Every (chosen, remaining) split of `items` by index subset. Both halves
/// keep the input order, so sorted input gives sorted halves.
pub(crate) fn sub_multisets(items: &[Term]) -> Vec<(Vec<Term>, Vec<Term>)> {
    let n = items.len();
    assert!(n < 32, "parallel product too wide to split");
    (0u32..(1 << n))
        .map(|mask| {
            let mut chosen = Vec::new();
            let mut remaining = Vec::new();
            for (i, t) in items.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    chosen.push(t.clone());
                } else {
                    remaining.push(t.clone());
                }
            }
            (chosen, remaining)
        })
        .collect()
}

fn lower(r: &Regex, nodes: &mut Vec<Node>) -> usize {
    let node = match r {
        Regex::EmptySet => Node::EmptySet,
        Regex::Eps => Node::Eps,
        Regex::Atom(a) => Node::Atom(*a),
        Regex::Cat(v) => Node::Cat(v.iter().map(|c| lower(c, nodes)).collect()),
        Regex::Alt(v) => Node::Alt(v.iter().map(|c| lower(c, nodes)).collect()),
        Regex::ParProd(v) => Node::ParProd(v.iter().map(|c| lower(c, nodes)).collect()),
        Regex::CloseSeq(b) => Node::CloseSeq(lower(b, nodes)),
        Regex::ClosePar(b) => Node::ClosePar(lower(b, nodes)),
        Regex::CloseSp(b) => Node::CloseSp(lower(b, nodes)),
    };
    nodes.push(node);
    nodes.len() - 1
}

#[cfg(test)]
mod tests {
    use super::super::{matches, regex_enumerate};
    use super::*;
    use crate::universe::parse_alphabet;
    use crate::FiniteLang;

    fn m(r: &str, t: &str, mode: Mode) -> bool {
        matches(&r.parse().unwrap(), &t.parse().unwrap(), mode)
    }

    #[test]
    fn parallel_closure_examples() {
        assert!(m("(a||b)^", "a||b||a||b", Mode::Ordered));
        assert!(!m("(a||b)^", "a||a||b||b", Mode::Ordered));
        assert!(m("(a||b)^", "a||a||b||b", Mode::Commutative));
        assert!(m("(a||b)^", "eps", Mode::Ordered));
    }

    #[test]
    fn sp_closure_examples() {
        for mode in [Mode::Ordered, Mode::Commutative] {
            assert!(m("a@", "a.a", mode));
            assert!(m("a@", "a||a", mode));
            assert!(!m("a@", "a.b", mode));
            assert!(!m("a@", "a.a||a", mode));
            assert!(m("eps", "eps", mode));
            assert!(!m("0", "eps", mode));
        }
    }

    #[test]
    fn products_allow_eps_parts() {
        assert!(m("a*.b", "b", Mode::Ordered));
        assert!(m("(a|eps)||b", "b", Mode::Ordered));
        assert!(m("(a||b).c", "(a||b).c", Mode::Ordered));
        assert!(!m("(a||b).c", "(b||a).c", Mode::Ordered));
        assert!(m("(a||b).c", "(b||a).c", Mode::Commutative));
        assert!(m("a.b||c", "c||a.b", Mode::Commutative));
    }

    #[test]
    fn enumeration_examples() {
        let ab = parse_alphabet("ab").unwrap();
        let e = |r: &str, n| {
            regex_enumerate(&r.parse().unwrap(), &ab, n, Mode::Ordered, 100_000).unwrap()
        };
        assert_eq!(
            e("(a||b)^", 4),
            FiniteLang::from_strs(Mode::Ordered, &["eps", "a||b", "a||b||a||b"])
        );
        assert!(e("0", 3).is_empty());
        assert_eq!(
            e("a*.b", 3),
            FiniteLang::from_strs(Mode::Ordered, &["b", "a.b", "a.a.b"])
        );
        let a = parse_alphabet("a").unwrap();
        assert_eq!(
            regex_enumerate(&"a@".parse().unwrap(), &a, 2, Mode::Ordered, 100).unwrap(),
            FiniteLang::from_strs(Mode::Ordered, &["eps", "a", "a.a", "a||a"])
        );
    }
}
