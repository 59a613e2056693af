//! Branching automaton of a parallel-linear grammar.
//!
//! Every nonterminal `V` gets an entry state and a return state; a run from
//! `entry_V` to `ret_V` reads exactly the nonempty words `V` derives. A
//! production `V -> a1||...||am||W` becomes a fork from `entry_V` into one
//! branch per atom plus a branch starting at `entry_W`, and a join of the
//! atom branches and `ret_W` back into `ret_V`. Terminal productions use the
//! same diagram without the `W` branch, or a single sequential transition
//! when `m = 1`.
//!
//! The model has no silent transitions, so `eps` is handled without merging
//! states: a nullable start symbol makes `entry_S` final, and a production
//! whose continuation `W` is nullable also gets its terminal diagram.

use std::collections::BTreeSet;

use super::{
    enumerate_accepted, BranchingAutomaton, ForkTransition, JoinTransition, ParGuard,
    ParTransition, SeqTransition, StateId,
};
use crate::error::{Error, Result};
use crate::grammar::{
    classify_grammar, classify_production, generate, Grammar, NonTerminal, Symbol,
};
use crate::lang::{compare, LangDiff};
use crate::term::{Atom, Mode, Term};
use crate::universe::Alphabet;
use crate::Limits;

fn entry(n: NonTerminal) -> StateId {
    StateId::new(format!("entry_{n}"))
}

fn ret(n: NonTerminal) -> StateId {
    StateId::new(format!("ret_{n}"))
}

#[derive(Default)]
struct Parts {
    states: BTreeSet<StateId>,
    seq: BTreeSet<SeqTransition>,
    forks: Vec<ForkTransition>,
    joins: Vec<JoinTransition>,
    pars: Vec<ParTransition>,
}

impl Parts {
    /// `from –atoms||cont→ to`, where `cont` is an extra (entry, return)
    /// branch pair. `tag` names the fresh states and the fork/join ids.
    fn diagram(
        &mut self,
        tag: &str,
        from: StateId,
        to: StateId,
        atoms: &[Atom],
        cont: Option<(StateId, StateId)>,
    ) {
        if atoms.len() == 1 && cont.is_none() {
            self.seq.insert(SeqTransition {
                from,
                label: atoms[0],
                to,
            });
            return;
        }
        let mut targets = Vec::new();
        let mut sources = Vec::new();
        for (k, &a) in atoms.iter().enumerate() {
            let s = StateId::new(format!("{tag}_s{}", k + 1));
            let t = StateId::new(format!("{tag}_t{}", k + 1));
            self.states.insert(s.clone());
            self.states.insert(t.clone());
            self.seq.insert(SeqTransition {
                from: s.clone(),
                label: a,
                to: t.clone(),
            });
            targets.push(s);
            sources.push(t);
        }
        if let Some((e, r)) = cont {
            targets.push(e);
            sources.push(r);
        }
        let fork = format!("F{tag}");
        let join = format!("J{tag}");
        self.forks.push(ForkTransition {
            id: fork.clone(),
            from,
            targets,
        });
        self.joins.push(JoinTransition {
            id: join.clone(),
            sources,
            to,
        });
        self.pars.push(ParTransition {
            fork,
            guard: ParGuard::Any,
            join,
        });
    }
}

/// Builds the branching automaton of a parallel-linear grammar.
pub fn from_linear_grammar(g: &Grammar) -> Result<BranchingAutomaton> {
    if !classify_grammar(g).parallel_linear {
        let offending: Vec<String> = g
            .productions()
            .iter()
            .filter(|p| {
                let s = classify_production(p);
                !(s.parallel_linear || (s.terminal && p.rhs.classify().parallel))
            })
            .map(|p| p.to_string())
            .collect();
        return Err(Error::NotParallelLinear(offending.join("; ")));
    }
    let nullable: BTreeSet<NonTerminal> = g
        .productions()
        .iter()
        .filter(|p| p.rhs.is_eps())
        .map(|p| p.lhs)
        .collect();

    let mut parts = Parts::default();
    for &n in g.nonterminals() {
        parts.states.insert(entry(n));
        parts.states.insert(ret(n));
    }
    for (i, p) in g.productions().iter().enumerate() {
        let tag = format!("p{i}");
        let (atoms, cont): (Vec<Atom>, Option<NonTerminal>) = match &p.rhs {
            Term::Eps => continue,
            Term::Leaf(Symbol::T(a)) => (vec![*a], None),
            Term::Par(cs) => {
                let mut atoms = Vec::new();
                let mut cont = None;
                for c in cs {
                    match c {
                        Term::Leaf(Symbol::T(a)) => atoms.push(*a),
                        Term::Leaf(Symbol::N(w)) => cont = Some(*w),
                        _ => unreachable!("checked parallel-linear"),
                    }
                }
                (atoms, cont)
            }
            Term::Leaf(Symbol::N(_)) | Term::Seq(_) => unreachable!("checked parallel-linear"),
        };
        match cont {
            None => parts.diagram(&tag, entry(p.lhs), ret(p.lhs), &atoms, None),
            Some(w) => {
                parts.diagram(
                    &tag,
                    entry(p.lhs),
                    ret(p.lhs),
                    &atoms,
                    Some((entry(w), ret(w))),
                );
                if nullable.contains(&w) {
                    parts.diagram(&format!("{tag}e"), entry(p.lhs), ret(p.lhs), &atoms, None);
                }
            }
        }
    }

    let start = g.start();
    let mut finals = BTreeSet::from([ret(start)]);
    if nullable.contains(&start) {
        finals.insert(entry(start));
    }
    BranchingAutomaton::new(
        parts.states,
        BTreeSet::from([entry(start)]),
        finals,
        parts.seq,
        parts.forks,
        parts.joins,
        parts.pars,
    )
}

/// Compares the commutative bounded language of `g` with the words `a`
/// accepts, both up to `max_atoms` atoms over `alphabet`.
pub fn compare_with_grammar(
    g: &Grammar,
    a: &BranchingAutomaton,
    alphabet: &Alphabet,
    max_atoms: usize,
    limits: &Limits,
) -> Result<LangDiff> {
    let generated = generate(
        g,
        max_atoms,
        limits.step_budget(max_atoms),
        Mode::Commutative,
        limits.cap,
    )?;
    let accepted = enumerate_accepted(a, alphabet, max_atoms, limits.cap)?;
    compare(&generated, &accepted)
}

/// Builds the automaton of `g` and compares the two bounded languages.
pub fn check_construction(
    g: &Grammar,
    alphabet: &Alphabet,
    max_atoms: usize,
    limits: &Limits,
) -> Result<LangDiff> {
    let a = from_linear_grammar(g)?;
    compare_with_grammar(g, &a, alphabet, max_atoms, limits)
}
