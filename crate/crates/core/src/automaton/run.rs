use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{BranchingAutomaton, ParGuard, StateId};
use crate::error::Result;
use crate::lang::FiniteLang;
use crate::term::{AtomMultiset, Mode, Term};
use crate::universe::{enumerate_terms, Alphabet};

/// Memoized run search over one automaton. Terms must be canonical in
/// commutative mode.
pub(crate) struct Runner<'a> {
    a: &'a BranchingAutomaton,
    memo: HashMap<(StateId, Term), BTreeSet<StateId>>,
    /// Per parallel transition, the atom multisets it fired on (flat words
    /// only), when recording is enabled.
    fired: Option<Vec<BTreeSet<AtomMultiset>>>,
}

impl<'a> Runner<'a> {
    pub fn new(a: &'a BranchingAutomaton) -> Runner<'a> {
        Runner {
            a,
            memo: HashMap::new(),
            fired: None,
        }
    }

    fn recording(a: &'a BranchingAutomaton) -> Runner<'a> {
        Runner {
            fired: Some(vec![BTreeSet::new(); a.pars.len()]),
            ..Runner::new(a)
        }
    }

    pub fn runs(&mut self, p: &StateId, t: &Term) -> BTreeSet<StateId> {
        let key = (p.clone(), t.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = match t {
            Term::Eps => BTreeSet::from([p.clone()]),
            Term::Leaf(a) => self
                .a
                .seq
                .iter()
                .filter(|s| &s.from == p && s.label == *a)
                .map(|s| s.to.clone())
                .collect(),
            Term::Seq(cs) => {
                let mut current = BTreeSet::from([p.clone()]);
                for c in cs {
                    let mut next = BTreeSet::new();
                    for q in &current {
                        next.extend(self.runs(q, c));
                    }
                    current = next;
                    if current.is_empty() {
                        break;
                    }
                }
                current
            }
            Term::Par(cs) => self.par_runs(p, t, cs),
        };
        self.memo.insert(key, out.clone());
        out
    }

    fn par_runs(&mut self, p: &StateId, whole: &Term, cs: &[Term]) -> BTreeSet<StateId> {
        let mut out = BTreeSet::new();
        let flat = cs.iter().all(|c| matches!(c, Term::Leaf(_)));
        let a = self.a;
        for (index, par) in a.pars.iter().enumerate() {
            let fork = &a.forks[&par.fork];
            let join = &a.joins[&par.join];
            let settled = self.fired.is_none() && out.contains(&join.to);
            if &fork.from != p || fork.targets.len() > cs.len() || settled {
                continue;
            }
            let admitted = match &par.guard {
                ParGuard::Any => true,
                ParGuard::AtomMultisets(sets) => flat && sets.contains(&whole.atoms_multiset()),
            };
            if !admitted {
                continue;
            }
            if self.distribute(&fork.targets, &join.sources, cs) {
                out.insert(join.to.clone());
                if let Some(fired) = self.fired.as_mut() {
                    if flat {
                        fired[index].insert(whole.atoms_multiset());
                    }
                }
            }
        }
        out
    }

    /// Whether the factors `cs` split into one nonempty block per fork target
    /// such that the block end states can be matched to the join sources.
    fn distribute(&mut self, targets: &[StateId], sources: &[StateId], cs: &[Term]) -> bool {
        let k = targets.len();
        let n = cs.len();
        let mut assign = vec![0usize; n];
        loop {
            let mut counts = vec![0usize; k];
            for &b in &assign {
                counts[b] += 1;
            }
            if counts.iter().all(|&c| c > 0) {
                let ends: Vec<BTreeSet<StateId>> = (0..k)
                    .map(|b| {
                        let block: Vec<Term> = cs
                            .iter()
                            .zip(&assign)
                            .filter(|(_, &x)| x == b)
                            .map(|(t, _)| t.clone())
                            .collect();
                        let block = Term::rebuild(block, Term::Par);
                        self.runs(&targets[b], &block)
                    })
                    .collect();
                let mut pool: BTreeMap<&StateId, usize> = BTreeMap::new();
                for s in sources {
                    *pool.entry(s).or_default() += 1;
                }
                if match_ends(&ends, &mut pool) {
                    return true;
                }
            }
            // next assignment in base-k counting order
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                assign[i] += 1;
                if assign[i] < k {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
        }
    }
}

/// Picks one end state per branch so that together they use up `pool`.
fn match_ends(ends: &[BTreeSet<StateId>], pool: &mut BTreeMap<&StateId, usize>) -> bool {
    let Some((first, rest)) = ends.split_first() else {
        return pool.values().all(|&c| c == 0);
    };
    for s in first {
        if let Some(c) = pool.get_mut(s) {
            if *c > 0 {
                *c -= 1;
                let ok = match_ends(rest, pool);
                *pool.get_mut(s).unwrap() += 1;
                if ok {
                    return true;
                }
            }
        }
    }
    false
}

/// All states reachable from `p` by a run on `t`.
pub fn runs_between(a: &BranchingAutomaton, p: &StateId, t: &Term) -> BTreeSet<StateId> {
    Runner::new(a).runs(p, &t.canonicalize(Mode::Commutative))
}

/// Whether some initial state has a run on `t` ending in a final state.
pub fn accepts(a: &BranchingAutomaton, t: &Term) -> bool {
    Runner::new(a).accepts(&t.canonicalize(Mode::Commutative))
}

impl Runner<'_> {
    pub fn accepts(&mut self, t: &Term) -> bool {
        let a = self.a;
        a.initial
            .iter()
            .any(|s| self.runs(s, t).iter().any(|q| a.finals.contains(q)))
    }
}

/// Accepted members of the commutative universe over `alphabet`.
pub fn enumerate_accepted(
    a: &BranchingAutomaton,
    alphabet: &Alphabet,
    max_atoms: usize,
    cap: usize,
) -> Result<FiniteLang> {
    let mut lang = enumerate_terms(alphabet, max_atoms, Mode::Commutative, cap)?;
    let mut runner = Runner::new(a);
    lang.retain(|t| runner.accepts(t));
    Ok(lang)
}

/// For each parallel transition, the atom multisets of the flat parallel
/// words it fires on while deciding acceptance of every term in `universe`.
pub fn observed_par_guards(
    a: &BranchingAutomaton,
    universe: &FiniteLang,
) -> Vec<BTreeSet<AtomMultiset>> {
    let mut runner = Runner::recording(a);
    for t in universe.iter() {
        runner.accepts(&t.canonicalize(Mode::Commutative));
    }
    runner.fired.unwrap_or_default()
}
