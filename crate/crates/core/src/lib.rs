//! A workbench for series-parallel languages.
//!
//! * [`term`]: the term algebra (parsing, canonical forms, length/depth,
//!   reversal) and [`universe`] for bounded enumeration of all terms.
//! * [`lang`]: finite languages with concatenation, parallel product and the
//!   bounded sequential, parallel and series-parallel closures.
//! * [`regex`]: series-parallel regular expressions with a structural matcher
//!   and the conversion of the parallel fragment to a linear grammar.
//! * [`grammar`]: grammars over series-parallel right-hand sides, their
//!   classification, bounded generation and membership.
//! * [`automaton`]: branching automata with fork/join transitions, run
//!   semantics, and the construction from parallel-linear grammars.

pub mod automaton;
pub mod error;
pub mod grammar;
pub mod lang;
mod lex;
pub mod regex;
pub mod term;
pub mod universe;

pub use error::{Error, Result};
pub use lang::FiniteLang;
pub use term::{Atom, Mode, Term};

/// Search bounds shared by enumeration, generation and membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of terms (or sentential forms) a search may build.
    pub cap: usize,
    /// Membership step budget is `step_factor * atoms + step_offset`.
    pub step_factor: usize,
    pub step_offset: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cap: 200_000,
            step_factor: 4,
            step_offset: 8,
        }
    }
}

impl Limits {
    pub fn step_budget(&self, atoms: usize) -> usize {
        self.step_factor * atoms + self.step_offset
    }
}
