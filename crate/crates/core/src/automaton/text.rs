//! Line-oriented automaton file format:
//!
//! ```text
//! states: q0 q1 qf
//! initial: q0
//! final: qf
//! seq: q0 a q1
//! fork: F1 q0 -> {q1, q1}
//! join: J1 {q1, q1} -> qf
//! par: F1 * J1
//! par: F1 {a,b;a,a,b} J1
//! ```
//!
//! Sections appear in the order above; `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{
    BranchingAutomaton, ForkTransition, JoinTransition, ParGuard, ParTransition, SeqTransition,
    StateId,
};
use crate::error::{Error, Result};
use crate::term::{Atom, AtomMultiset};

const SECTIONS: [&str; 7] = ["states", "initial", "final", "seq", "fork", "join", "par"];

fn ident(s: &str, line: usize) -> Result<String> {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(s.to_string())
    } else {
        Err(Error::automaton(line, format!("bad identifier {s:?}")))
    }
}

fn state_list(s: &str, line: usize) -> Result<Vec<StateId>> {
    s.split_whitespace()
        .map(|w| ident(w, line).map(StateId))
        .collect()
}

/// Parses `{q1, q2, ...}`.
fn braced_states(s: &str, line: usize) -> Result<Vec<StateId>> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::automaton(line, format!("expected {{...}}, found {s:?}")))?;
    inner
        .split(',')
        .map(|w| ident(w.trim(), line).map(StateId))
        .collect()
}

fn guard(s: &str, line: usize) -> Result<ParGuard> {
    if s == "*" {
        return Ok(ParGuard::Any);
    }
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::automaton(line, format!("bad guard {s:?}")))?;
    let mut sets = BTreeSet::new();
    for group in inner.split(';') {
        let mut m = AtomMultiset::new();
        for a in group.split(',') {
            let a = a.trim();
            let mut cs = a.chars();
            let atom = match (cs.next().and_then(Atom::new), cs.next()) {
                (Some(atom), None) => atom,
                _ => return Err(Error::automaton(line, format!("bad guard atom {a:?}"))),
            };
            *m.entry(atom).or_default() += 1;
        }
        sets.insert(m);
    }
    Ok(ParGuard::AtomMultisets(sets))
}

impl BranchingAutomaton {
    pub fn parse(text: &str) -> Result<BranchingAutomaton> {
        let mut states = BTreeSet::new();
        let mut initial = BTreeSet::new();
        let mut finals = BTreeSet::new();
        let mut seq = BTreeSet::new();
        let mut forks = Vec::new();
        let mut joins = Vec::new();
        let mut pars = Vec::new();
        let mut rank = 0;
        let mut seen_states = false;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content
                .split_once(':')
                .ok_or_else(|| Error::automaton(line, "expected `section: ...`"))?;
            let key = key.trim();
            let rest = rest.trim();
            let r = SECTIONS
                .iter()
                .position(|s| *s == key)
                .ok_or_else(|| Error::automaton(line, format!("unknown section {key:?}")))?;
            if r < rank || (r == rank && r < 3 && (r > 0 || seen_states)) {
                return Err(Error::automaton(
                    line,
                    format!("section {key:?} out of order or repeated"),
                ));
            }
            if r > 0 && !seen_states {
                return Err(Error::automaton(line, "`states:` must come first"));
            }
            rank = r;
            match key {
                "states" => {
                    seen_states = true;
                    states.extend(state_list(rest, line)?);
                }
                "initial" => initial.extend(state_list(rest, line)?),
                "final" => finals.extend(state_list(rest, line)?),
                "seq" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [from, label, to] = parts[..] else {
                        return Err(Error::automaton(line, "expected `seq: p a q`"));
                    };
                    let mut cs = label.chars();
                    let label = match (cs.next().and_then(Atom::new), cs.next()) {
                        (Some(a), None) => a,
                        _ => return Err(Error::automaton(line, format!("bad label {label:?}"))),
                    };
                    seq.insert(SeqTransition {
                        from: StateId(ident(from, line)?),
                        label,
                        to: StateId(ident(to, line)?),
                    });
                }
                "fork" => {
                    let (head, targets) = rest
                        .split_once("->")
                        .ok_or_else(|| Error::automaton(line, "expected `fork: F p -> {...}`"))?;
                    let head: Vec<&str> = head.split_whitespace().collect();
                    let [id, from] = head[..] else {
                        return Err(Error::automaton(line, "expected `fork: F p -> {...}`"));
                    };
                    forks.push(ForkTransition {
                        id: ident(id, line)?,
                        from: StateId(ident(from, line)?),
                        targets: braced_states(targets, line)?,
                    });
                }
                "join" => {
                    let (head, to) = rest
                        .split_once("->")
                        .ok_or_else(|| Error::automaton(line, "expected `join: J {...} -> p`"))?;
                    let head = head.trim();
                    let (id, sources) = head
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| Error::automaton(line, "expected `join: J {...} -> p`"))?;
                    joins.push(JoinTransition {
                        id: ident(id, line)?,
                        sources: braced_states(sources, line)?,
                        to: StateId(ident(to.trim(), line)?),
                    });
                }
                _ => {
                    let (fork, tail) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| Error::automaton(line, "expected `par: F guard J`"))?;
                    let (g, join) = tail
                        .trim()
                        .rsplit_once(char::is_whitespace)
                        .ok_or_else(|| Error::automaton(line, "expected `par: F guard J`"))?;
                    let g: String = g.split_whitespace().collect();
                    pars.push(ParTransition {
                        fork: ident(fork, line)?,
                        guard: guard(&g, line)?,
                        join: ident(join, line)?,
                    });
                }
            }
        }
        if !seen_states {
            return Err(Error::automaton(0, "missing `states:` line"));
        }
        BranchingAutomaton::new(states, initial, finals, seq, forks, joins, pars)
    }

    /// Serializes in the file format with every section sorted.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

fn join_states<'a>(it: impl IntoIterator<Item = &'a StateId>, sep: &str) -> String {
    it.into_iter()
        .map(StateId::as_str)
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for ParGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParGuard::Any => f.write_str("*"),
            ParGuard::AtomMultisets(sets) => {
                let mut groups: Vec<String> = sets
                    .iter()
                    .map(|m| {
                        m.iter()
                            .flat_map(|(a, n)| std::iter::repeat_n(a.to_string(), *n))
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                groups.sort();
                write!(f, "{{{}}}", groups.join(";"))
            }
        }
    }
}

impl fmt::Display for BranchingAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", join_states(&self.states, " "))?;
        writeln!(f, "initial: {}", join_states(&self.initial, " "))?;
        writeln!(f, "final: {}", join_states(&self.finals, " "))?;
        for t in &self.seq {
            writeln!(f, "seq: {} {} {}", t.from, t.label, t.to)?;
        }
        for k in self.forks.values() {
            writeln!(
                f,
                "fork: {} {} -> {{{}}}",
                k.id,
                k.from,
                join_states(&k.targets, ", ")
            )?;
        }
        for j in self.joins.values() {
            writeln!(
                f,
                "join: {} {{{}}} -> {}",
                j.id,
                join_states(&j.sources, ", "),
                j.to
            )?;
        }
        let mut pars: Vec<String> = self
            .pars
            .iter()
            .map(|p| format!("par: {} {} {}", p.fork, p.guard, p.join))
            .collect();
        pars.sort();
        for p in pars {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for BranchingAutomaton {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BranchingAutomaton::parse(s)
    }
}
