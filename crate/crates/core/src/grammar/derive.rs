use std::collections::HashSet;
use std::fmt;

use super::{Grammar, SententialForm, Symbol};
use crate::error::{Error, Result};
use crate::lang::FiniteLang;
use crate::term::{Mode, Term};
use crate::Limits;

/// A derivation `S => ... => w`, one sentential form per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation(pub Vec<SententialForm>);

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, form) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" => ")?;
            }
            write!(f, "{form}")?;
        }
        Ok(())
    }
}

struct Node {
    form: SententialForm,
    parent: Option<usize>,
}

/// Breadth-first derivation from the start symbol. Each step rewrites the
/// leftmost nonterminal with every one of its productions. Forms with more
/// than `max_atoms` terminals are dropped and no form is expanded past
/// `max_steps` steps. Returns every form reached, in BFS order.
fn explore(g: &Grammar, max_atoms: usize, max_steps: usize, cap: usize) -> Result<Vec<Node>> {
    let start = Term::Leaf(Symbol::N(g.start()));
    let mut seen: HashSet<SententialForm> = HashSet::from([start.clone()]);
    let mut nodes = vec![Node {
        form: start,
        parent: None,
    }];
    let mut level = 0..1;
    for _ in 0..max_steps {
        let next_start = nodes.len();
        for idx in level.clone() {
            let Some(n) = leftmost_nonterminal(&nodes[idx].form) else {
                continue;
            };
            for p in g.productions_of(n) {
                let next = replace_leftmost(&nodes[idx].form, &p.rhs).canonicalize(Mode::Ordered);
                if next.terminal_count() > max_atoms || !seen.insert(next.clone()) {
                    continue;
                }
                nodes.push(Node {
                    form: next,
                    parent: Some(idx),
                });
                if nodes.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
        }
        if nodes.len() == next_start {
            break;
        }
        level = next_start..nodes.len();
    }
    Ok(nodes)
}

fn leftmost_nonterminal(form: &SententialForm) -> Option<super::NonTerminal> {
    form.nonterminals().next()
}

fn replace_leftmost(form: &SententialForm, rhs: &SententialForm) -> SententialForm {
    fn go(t: &SententialForm, rhs: &SententialForm, done: &mut bool) -> SententialForm {
        if *done {
            return t.clone();
        }
        match t {
            Term::Leaf(Symbol::N(_)) => {
                *done = true;
                rhs.clone()
            }
            Term::Eps | Term::Leaf(Symbol::T(_)) => t.clone(),
            Term::Seq(cs) => Term::Seq(cs.iter().map(|c| go(c, rhs, done)).collect()),
            Term::Par(cs) => Term::Par(cs.iter().map(|c| go(c, rhs, done)).collect()),
        }
    }
    go(form, rhs, &mut false)
}

/// Words derivable within the bounds, canonicalized for `mode`.
pub fn generate(
    g: &Grammar,
    max_atoms: usize,
    max_steps: usize,
    mode: Mode,
    cap: usize,
) -> Result<FiniteLang> {
    let nodes = explore(g, max_atoms, max_steps, cap)?;
    Ok(FiniteLang::from_terms(
        mode,
        nodes.iter().filter_map(|n| n.form.to_word()),
    ))
}

/// Bounded membership: searches derivations of at most
/// `limits.step_budget(atoms)` steps and returns the first (shortest) one
/// that yields `t`.
pub fn is_member(g: &Grammar, t: &Term, mode: Mode, limits: &Limits) -> Result<Option<Derivation>> {
    let target = t.canonicalize(mode);
    let atoms = target.leaf_count();
    let nodes = explore(g, atoms, limits.step_budget(atoms), limits.cap)?;
    let hit = nodes.iter().position(|n| {
        n.form
            .to_word()
            .is_some_and(|w| w.canonicalize(mode) == target)
    });
    Ok(hit.map(|mut idx| {
        let mut trace = vec![nodes[idx].form.clone()];
        while let Some(parent) = nodes[idx].parent {
            trace.push(nodes[parent].form.clone());
            idx = parent;
        }
        trace.reverse();
        Derivation(trace)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAR_PAIRS: &str = "S -> a||b||S | a||b | eps\n";
    const BRANCH_RUNS: &str = "S -> a.A || b.B\nA -> A.a | eps\nB -> b.B | eps\n";
    const PAR_LINEAR: &str = "terminals: a b\nS -> a||B\nB -> b||B | b\n";
    const LEFT_LINEAR: &str = "S -> A.a\nA -> a||A | b\n";

    fn gen(text: &str, atoms: usize, mode: Mode) -> FiniteLang {
        let g = Grammar::parse(text).unwrap();
        generate(
            &g,
            atoms,
            Limits::default().step_budget(atoms),
            mode,
            100_000,
        )
        .unwrap()
    }

    fn member(text: &str, t: &str, mode: Mode) -> Option<Derivation> {
        let g = Grammar::parse(text).unwrap();
        is_member(&g, &t.parse().unwrap(), mode, &Limits::default()).unwrap()
    }

    #[test]
    fn par_pairs_include_eps() {
        assert_eq!(
            gen(PAR_PAIRS, 6, Mode::Ordered),
            FiniteLang::from_strs(
                Mode::Ordered,
                &["eps", "a||b", "a||b||a||b", "a||b||a||b||a||b"]
            )
        );
    }

    #[test]
    fn branch_runs_words() {
        assert_eq!(
            gen(BRANCH_RUNS, 4, Mode::Ordered),
            FiniteLang::from_strs(
                Mode::Ordered,
                &["a||b", "a.a||b", "a||b.b", "a.a||b.b", "a.a.a||b", "a||b.b.b"]
            )
        );
    }

    #[test]
    fn parallel_regular_example_words() {
        assert_eq!(
            gen(PAR_LINEAR, 3, Mode::Ordered),
            FiniteLang::from_strs(Mode::Ordered, &["a||b", "a||b||b"])
        );
    }

    #[test]
    fn membership_trace() {
        let d = member(BRANCH_RUNS, "(a.a)||b", Mode::Ordered).unwrap();
        assert_eq!(
            d.to_string(),
            "S => a.A||b.B => a.A.a||b.B => a.a||b.B => a.a||b"
        );
        assert!(member(BRANCH_RUNS, "a.b", Mode::Ordered).is_none());
        assert!(member(BRANCH_RUNS, "b||a", Mode::Ordered).is_none());
        assert!(member(BRANCH_RUNS, "b||a", Mode::Commutative).is_some());
        assert!(member(LEFT_LINEAR, "(a||b).a", Mode::Ordered).is_some());
    }

    #[test]
    fn step_bound_prunes() {
        let g = Grammar::parse(PAR_PAIRS).unwrap();
        let l = generate(&g, 6, 2, Mode::Ordered, 1000).unwrap();
        assert_eq!(
            l,
            FiniteLang::from_strs(Mode::Ordered, &["eps", "a||b", "a||b||a||b"])
        );
    }

    #[test]
    fn eps_cycles_terminate() {
        let l = gen("S -> S | S.S | eps | a\n", 2, Mode::Ordered);
        assert_eq!(
            l,
            FiniteLang::from_strs(Mode::Ordered, &["eps", "a", "a.a"])
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = Grammar::parse("S -> S.S | S||S | a | b\n").unwrap();
        assert_eq!(
            generate(&g, 6, 30, Mode::Ordered, 50),
            Err(Error::CapExceeded { cap: 50 })
        );
    }
}
