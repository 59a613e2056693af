//! Branching automata: sequential transitions plus fork/join transitions
//! over multisets of states, paired into guarded parallel transitions.
//!
//! A run on a sequential product composes runs on its factors. A run on a
//! parallel product from state `p` picks a parallel transition whose fork
//! leaves `p`, distributes the parallel factors (as a multiset) over the fork
//! targets in nonempty blocks, runs every block from its target, and requires
//! the multiset of branch end states to be exactly the join's sources. Runs
//! always read `||` commutatively.

mod construct;
mod run;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::term::{Atom, AtomMultiset};

pub use construct::{check_construction, compare_with_grammar, from_linear_grammar};
pub use run::{accepts, enumerate_accepted, observed_par_guards, runs_between};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(String);

impl StateId {
    pub fn new(name: impl Into<String>) -> StateId {
        StateId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqTransition {
    pub from: StateId,
    pub label: Atom,
    pub to: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForkTransition {
    pub id: String,
    pub from: StateId,
    /// Multiset of targets, kept sorted; at least two entries.
    pub targets: Vec<StateId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinTransition {
    pub id: String,
    /// Multiset of sources, kept sorted; at least two entries.
    pub sources: Vec<StateId>,
    pub to: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParGuard {
    Any,
    /// Admits a flat parallel word of atoms whose multiset is listed.
    AtomMultisets(BTreeSet<AtomMultiset>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParTransition {
    pub fork: String,
    pub guard: ParGuard,
    pub join: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BranchingAutomaton {
    states: BTreeSet<StateId>,
    initial: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
    seq: BTreeSet<SeqTransition>,
    forks: BTreeMap<String, ForkTransition>,
    joins: BTreeMap<String, JoinTransition>,
    pars: Vec<ParTransition>,
}

impl BranchingAutomaton {
    /// Assembles and validates an automaton.
    pub fn new(
        states: BTreeSet<StateId>,
        initial: BTreeSet<StateId>,
        finals: BTreeSet<StateId>,
        seq: BTreeSet<SeqTransition>,
        forks: Vec<ForkTransition>,
        joins: Vec<JoinTransition>,
        pars: Vec<ParTransition>,
    ) -> Result<BranchingAutomaton> {
        let mut a = BranchingAutomaton {
            states,
            initial,
            finals,
            seq,
            ..Default::default()
        };
        for mut f in forks {
            f.targets.sort();
            let id = f.id.clone();
            if a.forks.insert(id.clone(), f).is_some() {
                return Err(Error::automaton(0, format!("duplicate fork {id}")));
            }
        }
        for mut j in joins {
            j.sources.sort();
            let id = j.id.clone();
            if a.joins.insert(id.clone(), j).is_some() {
                return Err(Error::automaton(0, format!("duplicate join {id}")));
            }
        }
        a.pars = pars;
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let known = |s: &StateId, what: &str| {
            if self.states.contains(s) {
                Ok(())
            } else {
                Err(Error::automaton(
                    0,
                    format!("undeclared state {s} in {what}"),
                ))
            }
        };
        for s in &self.initial {
            known(s, "initial")?;
        }
        for s in &self.finals {
            known(s, "final")?;
        }
        for t in &self.seq {
            known(&t.from, "seq")?;
            known(&t.to, "seq")?;
        }
        for f in self.forks.values() {
            if f.targets.len() < 2 {
                return Err(Error::automaton(
                    0,
                    format!("fork {} needs at least two targets", f.id),
                ));
            }
            known(&f.from, "fork")?;
            for s in &f.targets {
                known(s, "fork")?;
            }
        }
        for j in self.joins.values() {
            if j.sources.len() < 2 {
                return Err(Error::automaton(
                    0,
                    format!("join {} needs at least two sources", j.id),
                ));
            }
            known(&j.to, "join")?;
            for s in &j.sources {
                known(s, "join")?;
            }
        }
        for p in &self.pars {
            if !self.forks.contains_key(&p.fork) {
                return Err(Error::automaton(
                    0,
                    format!("par refers to unknown fork {}", p.fork),
                ));
            }
            if !self.joins.contains_key(&p.join) {
                return Err(Error::automaton(
                    0,
                    format!("par refers to unknown join {}", p.join),
                ));
            }
            if let ParGuard::AtomMultisets(sets) = &p.guard {
                if sets.is_empty() {
                    return Err(Error::automaton(0, "empty guard set"));
                }
            }
        }
        for id in self.forks.keys() {
            if !self.pars.iter().any(|p| &p.fork == id) {
                return Err(Error::automaton(
                    0,
                    format!("fork {id} is not used by any par"),
                ));
            }
        }
        for id in self.joins.keys() {
            if !self.pars.iter().any(|p| &p.join == id) {
                return Err(Error::automaton(
                    0,
                    format!("join {id} is not used by any par"),
                ));
            }
        }
        Ok(())
    }

    pub fn states(&self) -> &BTreeSet<StateId> {
        &self.states
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn seq_transitions(&self) -> &BTreeSet<SeqTransition> {
        &self.seq
    }

    pub fn forks(&self) -> impl Iterator<Item = &ForkTransition> {
        self.forks.values()
    }

    pub fn joins(&self) -> impl Iterator<Item = &JoinTransition> {
        self.joins.values()
    }

    pub fn par_transitions(&self) -> &[ParTransition] {
        &self.pars
    }

    pub fn fork(&self, id: &str) -> Option<&ForkTransition> {
        self.forks.get(id)
    }

    pub fn join(&self, id: &str) -> Option<&JoinTransition> {
        self.joins.get(id)
    }

    /// Drops a join together with the parallel transitions using it and any
    /// fork left unused.
    pub fn without_join(&self, id: &str) -> BranchingAutomaton {
        let mut a = self.clone();
        a.joins.remove(id);
        a.pars.retain(|p| p.join != id);
        let used: BTreeSet<String> = a.pars.iter().map(|p| p.fork.clone()).collect();
        a.forks.retain(|k, _| used.contains(k));
        a
    }

    /// Replaces the guard of parallel transition `index`.
    pub fn with_guard(&self, index: usize, guard: ParGuard) -> BranchingAutomaton {
        let mut a = self.clone();
        a.pars[index].guard = guard;
        a
    }
}
