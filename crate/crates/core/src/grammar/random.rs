use rand::seq::SliceRandom;
use rand::Rng;

use super::{Grammar, NonTerminal, Production, SententialForm, Symbol};
use crate::term::{Atom, Mode, Term};

/// A random parallel-linear grammar over `{a, b}` with one to three
/// nonterminals (`S`, `A`, `B`). Every nonterminal is reachable from `S`
/// and has a terminal production, so no language is empty.
pub fn random_parallel_linear<R: Rng + ?Sized>(rng: &mut R) -> Grammar {
    let names: Vec<NonTerminal> = ['S', 'A', 'B']
        .into_iter()
        .take(rng.gen_range(1..=3))
        .map(|c| NonTerminal::new(c).unwrap())
        .collect();
    let mut productions = Vec::new();
    let mut push = |lhs: NonTerminal, rhs: SententialForm| {
        let p = Production {
            lhs,
            rhs: rhs.canonicalize(Mode::Ordered),
        };
        if !productions.contains(&p) {
            productions.push(p);
        }
    };
    for (i, &lhs) in names.iter().enumerate() {
        push(
            lhs,
            if rng.gen_bool(0.3) {
                Term::Eps
            } else {
                word(rng)
            },
        );
        if let Some(&next) = names.get(i + 1) {
            push(lhs, linear(rng, Term::Leaf(Symbol::N(next))));
        }
        for _ in 0..rng.gen_range(0..=2) {
            let rhs = match rng.gen_range(0..4) {
                0 => word(rng),
                _ => {
                    let n = nonterminal(rng, &names);
                    linear(rng, n)
                }
            };
            push(lhs, rhs);
        }
    }
    Grammar::new(productions, None).expect("every nonterminal has a production")
}

/// `x||N` or `N||x` for a random terminal word `x`.
fn linear<R: Rng + ?Sized>(rng: &mut R, n: SententialForm) -> SententialForm {
    if rng.gen_bool(0.5) {
        Term::Par(vec![word(rng), n])
    } else {
        Term::Par(vec![n, word(rng)])
    }
}

fn word<R: Rng + ?Sized>(rng: &mut R) -> SententialForm {
    let atoms = (0..rng.gen_range(1..=2))
        .map(|_| {
            let c = if rng.gen_bool(0.5) { 'a' } else { 'b' };
            Term::Leaf(Symbol::T(Atom::new(c).unwrap()))
        })
        .collect();
    Term::Par(atoms)
}

fn nonterminal<R: Rng + ?Sized>(rng: &mut R, names: &[NonTerminal]) -> SententialForm {
    Term::Leaf(Symbol::N(*names.choose(rng).unwrap()))
}
