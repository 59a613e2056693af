use std::fmt;

use super::{Grammar, Production, SententialForm, Symbol};
use crate::term::Term;

/// Shape flags of a single production `A -> rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProductionShape {
    /// rhs has no nonterminal (`eps` included).
    pub terminal: bool,
    /// rhs is `x.B` with `x` a nonempty terminal term, or a bare `B`.
    pub right_linear: bool,
    /// rhs is `B.x`, or a bare `B`.
    pub left_linear: bool,
    /// rhs is `x||B` or `B||x` with `x` a nonempty parallel word of terminals.
    pub parallel_linear: bool,
}

impl ProductionShape {
    pub fn is_regular(&self) -> bool {
        self.terminal || self.right_linear || self.left_linear || self.parallel_linear
    }

    fn label(&self) -> &'static str {
        if self.terminal {
            "terminal"
        } else if self.parallel_linear {
            "parallel-linear"
        } else if self.right_linear && self.left_linear {
            "unit"
        } else if self.right_linear {
            "right-linear"
        } else if self.left_linear {
            "left-linear"
        } else {
            "other"
        }
    }
}

impl fmt::Display for ProductionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn no_nonterminal(items: &[SententialForm]) -> bool {
    items.iter().all(SententialForm::is_terminal)
}

fn is_nonterminal(t: &SententialForm) -> bool {
    matches!(t, Term::Leaf(Symbol::N(_)))
}

fn is_terminal_atom(t: &SententialForm) -> bool {
    matches!(t, Term::Leaf(Symbol::T(_)))
}

pub fn classify_production(p: &Production) -> ProductionShape {
    let rhs = &p.rhs;
    let mut shape = ProductionShape {
        terminal: rhs.is_terminal(),
        ..Default::default()
    };
    match rhs {
        Term::Leaf(Symbol::N(_)) => {
            shape.right_linear = true;
            shape.left_linear = true;
        }
        Term::Seq(cs) => {
            let (last, init) = cs.split_last().expect("sequences have two children");
            shape.right_linear = is_nonterminal(last) && no_nonterminal(init);
            let (first, tail) = cs.split_first().expect("sequences have two children");
            shape.left_linear = is_nonterminal(first) && no_nonterminal(tail);
        }
        Term::Par(cs) => {
            let n = cs.len();
            let x_then_b = is_nonterminal(&cs[n - 1]) && cs[..n - 1].iter().all(is_terminal_atom);
            let b_then_x = is_nonterminal(&cs[0]) && cs[1..].iter().all(is_terminal_atom);
            shape.parallel_linear = x_then_b || b_then_x;
        }
        Term::Eps | Term::Leaf(Symbol::T(_)) => {}
    }
    shape
}

/// Grammar-level classification flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrammarClass {
    /// Every rhs is free of `||`.
    pub cf_sequential: bool,
    /// Every rhs is free of `.`.
    pub cf_parallel: bool,
    /// Every rhs is a series-parallel term; always true for a parsed grammar.
    pub cf_sp: bool,
    /// Every production is right-linear or terminal.
    pub right_linear: bool,
    /// Every production is left-linear or terminal.
    pub left_linear: bool,
    /// Every production is parallel-linear, or terminal with a parallel word
    /// (possibly `eps`) as rhs.
    pub parallel_linear: bool,
    /// Every production is right-linear, left-linear, parallel-linear or
    /// terminal.
    pub sp_regular: bool,
}

impl GrammarClass {
    /// Names of the set flags, in a fixed order.
    pub fn names(&self) -> Vec<&'static str> {
        [
            (self.parallel_linear, "PARALLEL_LINEAR"),
            (self.sp_regular, "SP_REGULAR"),
            (self.right_linear, "RIGHT_LINEAR"),
            (self.left_linear, "LEFT_LINEAR"),
            (self.cf_sequential, "CF_SEQUENTIAL"),
            (self.cf_parallel, "CF_PARALLEL"),
            (self.cf_sp, "CF_SP"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect()
    }
}

impl fmt::Display for GrammarClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(" "))
    }
}

pub fn classify_grammar(g: &Grammar) -> GrammarClass {
    let shapes: Vec<(ProductionShape, &Production)> = g
        .productions()
        .iter()
        .map(|p| (classify_production(p), p))
        .collect();
    let all =
        |f: &dyn Fn(&ProductionShape, &Production) -> bool| shapes.iter().all(|(s, p)| f(s, p));
    GrammarClass {
        cf_sequential: all(&|_, p| !p.rhs.has_par()),
        cf_parallel: all(&|_, p| !p.rhs.has_seq()),
        cf_sp: true,
        right_linear: all(&|s, _| s.right_linear || s.terminal),
        left_linear: all(&|s, _| s.left_linear || s.terminal),
        parallel_linear: all(&|s, p| {
            s.parallel_linear || (s.terminal && p.rhs.classify().parallel)
        }),
        sp_regular: all(&|s, _| s.is_regular()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(text: &str) -> GrammarClass {
        classify_grammar(&Grammar::parse(text).unwrap())
    }

    #[test]
    fn parallel_regular_example() {
        let c = class("S -> a||B\nB -> b||B | b\n");
        assert!(c.parallel_linear && c.sp_regular && c.cf_parallel);
        assert!(!c.right_linear && !c.left_linear);
        assert_eq!(
            c.to_string(),
            "PARALLEL_LINEAR SP_REGULAR CF_PARALLEL CF_SP"
        );
    }

    #[test]
    fn sp_regular_example_mixes_shapes() {
        let g = Grammar::parse("S -> A.a\nA -> a||A | b\n").unwrap();
        let shapes: Vec<String> = g
            .productions()
            .iter()
            .map(|p| classify_production(p).to_string())
            .collect();
        assert_eq!(shapes, ["left-linear", "parallel-linear", "terminal"]);
        let c = classify_grammar(&g);
        assert!(c.sp_regular);
        assert!(!c.parallel_linear && !c.left_linear && !c.right_linear);
    }

    #[test]
    fn branch_runs_is_not_regular() {
        let c = class("S -> a.A || b.B\nA -> A.a | eps\nB -> b.B | eps\n");
        assert!(c.cf_sp);
        assert!(!c.sp_regular && !c.cf_parallel && !c.parallel_linear);
    }

    #[test]
    fn parallel_linear_positions() {
        // the nonterminal must sit at one end of the parallel word
        assert!(!class("S -> a||S||b | eps").parallel_linear);
        assert!(class("S -> S||a||b | eps").parallel_linear);
        assert!(!class("S -> a.b||S | eps").parallel_linear);
        // a terminal rhs with `.` is not a parallel word
        assert!(!class("S -> a||S | a.b").parallel_linear);
        assert!(class("S -> a.b.S | eps").right_linear);
        assert!(class("S -> S.(a||b) | a").left_linear);
    }
}
