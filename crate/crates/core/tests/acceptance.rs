//! Acceptance suite: one line per criterion, `PASS` or `FAIL` with the reason.
//! Runs without the libtest harness so the lines are always printed.

mod common;

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use splang::automaton::{check_construction, compare_with_grammar, from_linear_grammar};
use splang::grammar::{classify_grammar, generate, is_member, random_parallel_linear, Grammar};
use splang::lang::{kleene_bounded, power, ClosureKind, PowerKind};
use splang::regex::{regex_enumerate, to_parallel_linear_grammar, Matcher};
use splang::universe::enumerate_terms;
use splang::{FiniteLang, Limits, Mode, Term};

use common::{all_regexes, alphabet, in_parallel_fragment, naive_regex_lang, text_metrics};

const PAR_PAIRS: &str = include_str!("../../../fixtures/par_pairs.g");
const BRANCH_RUNS: &str = include_str!("../../../fixtures/branch_runs.g");
const PAR_LINEAR: &str = include_str!("../../../fixtures/par_linear.g");
const LEFT_LINEAR: &str = include_str!("../../../fixtures/left_linear.g");

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(what: &str, got: &FiniteLang, want: &FiniteLang) -> Outcome {
    check(got == want, || {
        format!("{what}: got {got:?}, want {want:?}")
    })
}

fn ordered(terms: &[&str]) -> FiniteLang {
    FiniteLang::from_strs(Mode::Ordered, terms)
}

fn grammar(text: &str) -> Grammar {
    Grammar::parse(text).expect("fixture grammar parses")
}

fn gen(g: &Grammar, max_atoms: usize, mode: Mode) -> FiniteLang {
    let limits = Limits::default();
    generate(
        g,
        max_atoms,
        limits.step_budget(max_atoms),
        mode,
        limits.cap,
    )
    .unwrap()
}

fn parallel_closure_fixture() -> Outcome {
    let l = ordered(&["a", "a||b"]);
    let l2 = ordered(&["a||a", "a||a||b", "a||b||a", "a||b||a||b"]);
    same("L_2", &power(&l, 2, PowerKind::Par), &l2)?;
    let mut union = ordered(&["eps", "a", "a||b"]);
    for t in l2.iter() {
        union.insert(t.clone());
    }
    same(
        "L_0 ∪ L_1 ∪ L_2",
        &kleene_bounded(&l, ClosureKind::Par, 2),
        &union,
    )
}

fn sp_closure_fixture() -> Outcome {
    let l = ordered(&["a.b", "a||b"]);
    same(
        "L^2",
        &power(&l, 2, PowerKind::Seq),
        &ordered(&["a.b.a.b", "a.b.(a||b)", "(a||b).a.b", "(a||b).(a||b)"]),
    )?;
    same(
        "L_2",
        &power(&l, 2, PowerKind::Par),
        &ordered(&[
            "(a.b)||(a.b)",
            "(a.b)||(a||b)",
            "(a||b)||(a.b)",
            "(a||b)||(a||b)",
        ]),
    )?;
    for n in 0..=2 {
        let star = kleene_bounded(&l, ClosureKind::Star, n);
        let par = kleene_bounded(&l, ClosureKind::Par, n);
        let sp = kleene_bounded(&l, ClosureKind::Sp, n);
        same(
            &format!("SP closure at n={n}"),
            &sp,
            &splang::lang::union(&star, &par).unwrap(),
        )?;
    }
    Ok(())
}

fn par_pairs_grammar() -> Outcome {
    let words = gen(&grammar(PAR_PAIRS), 6, Mode::Ordered);
    same(
        "generated words",
        &words,
        &ordered(&["eps", "a||b", "a||b||a||b", "a||b||a||b||a||b"]),
    )?;
    // The production S -> eps puts eps in the language although the stated
    // language only has n > 0; the member is expected here.
    check(words.contains(&Term::Eps), || "eps missing".into())
}

fn branch_runs_grammar() -> Outcome {
    let g = grammar(BRANCH_RUNS);
    let mut want = FiniteLang::new(Mode::Ordered);
    for m in 1..=4usize {
        for n in 1..=4 - m {
            let a = vec!["a"; m].join(".");
            let b = vec!["b"; n].join(".");
            want.insert(format!("({a})||({b})").parse().unwrap());
        }
    }
    same("generated words", &gen(&g, 4, Mode::Ordered), &want)?;
    let member = |s: &str| {
        is_member(&g, &s.parse().unwrap(), Mode::Ordered, &Limits::default())
            .unwrap()
            .is_some()
    };
    check(member("(a.a)||(b.b)"), || {
        "(a.a)||(b.b) not a member".into()
    })?;
    check(!member("a.b"), || "a.b is a member".into())?;
    check(!member("b||a"), || {
        "b||a is a member in ordered mode".into()
    })
}

fn parallel_linear_example() -> Outcome {
    let g = grammar(PAR_LINEAR);
    let class = classify_grammar(&g);
    check(class.parallel_linear, || format!("classified as {class}"))?;
    let words = gen(&g, 4, Mode::Ordered);
    same(
        "generated words",
        &words,
        &ordered(&["a||b", "a||b||b", "a||b||b||b"]),
    )?;
    for w in words.iter() {
        check(w.classify().parallel, || {
            format!("{w} is not a parallel word")
        })?;
    }
    Ok(())
}

fn automaton_equivalence() -> Outcome {
    let limits = Limits::default();
    let ab = alphabet("ab");
    for (name, text) in [
        ("a||b^n grammar", PAR_LINEAR),
        ("(a||b)^n grammar", PAR_PAIRS),
    ] {
        let d = check_construction(&grammar(text), &ab, 5, &limits).map_err(|e| e.to_string())?;
        check(d.is_equal(), || format!("{name}: {d}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..20 {
        let g = random_parallel_linear(&mut rng);
        let d = check_construction(&g, &ab, 5, &limits).map_err(|e| e.to_string())?;
        check(d.is_equal(), || format!("random grammar {i}:\n{g}{d}"))?;
    }
    let g = grammar(PAR_LINEAR);
    let a = from_linear_grammar(&g).unwrap();
    let join = a.joins().next().unwrap().id.clone();
    let mutated = a.without_join(&join);
    let d = compare_with_grammar(&g, &mutated, &ab, 5, &limits).map_err(|e| e.to_string())?;
    check(!d.is_equal() && !d.left_only.is_empty(), || {
        format!("removing join {join} left the language unchanged")
    })
}

fn left_linear_example() -> Outcome {
    let words = gen(&grammar(LEFT_LINEAR), 5, Mode::Ordered);
    let mut want = FiniteLang::new(Mode::Ordered);
    for n in 1..=3 {
        let t: Term = format!("({}||b).a", vec!["a"; n].join("||"))
            .parse()
            .unwrap();
        check(t.length() == 2, || format!("lg({t}) = {}", t.length()))?;
        check(t.depth() == n + 1, || format!("dp({t}) = {}", t.depth()))?;
        want.insert(t);
    }
    same("generated words", &words, &want)
}

fn regex_agreement() -> Outcome {
    let ab = alphabet("ab");
    let regexes = all_regexes(&ab, 4);
    for mode in [Mode::Ordered, Mode::Commutative] {
        let universe = enumerate_terms(&ab, 3, mode, 100_000).unwrap();
        for r in &regexes {
            let oracle = naive_regex_lang(r, 3, mode);
            let mut m = Matcher::new(r, mode);
            for t in universe.iter() {
                check(m.matches(t) == oracle.contains(t), || {
                    format!("{r} on {t} ({mode}): oracle says {}", oracle.contains(t))
                })?;
            }
        }
    }
    let limits = Limits::default();
    let mut fragment = 0;
    for r in regexes.iter().filter(|r| in_parallel_fragment(r)) {
        fragment += 1;
        let g = to_parallel_linear_grammar(r).map_err(|e| format!("{r}: {e}"))?;
        for mode in [Mode::Ordered, Mode::Commutative] {
            let by_regex = regex_enumerate(r, &ab, 4, mode, limits.cap).unwrap();
            let by_grammar = gen(&g, 4, mode);
            same(&format!("{r} ({mode})"), &by_grammar, &by_regex)?;
        }
    }
    check(fragment > 0, || "no fragment regexes generated".into())
}

fn metric_properties() -> Outcome {
    let ab = alphabet("ab");
    for mode in [Mode::Ordered, Mode::Commutative] {
        for t in enumerate_terms(&ab, 4, mode, 100_000).unwrap().iter() {
            let text = t.to_string();
            let m = text_metrics(&text);
            check(
                (t.length(), t.depth(), t.leaf_count()) == (m.lg, m.dp, m.atoms),
                || {
                    format!(
                        "{text}: library ({}, {}) vs text ({}, {})",
                        t.length(),
                        t.depth(),
                        m.lg,
                        m.dp
                    )
                },
            )?;
            let r = t.reverse();
            check(r.reverse() == *t, || {
                format!("reverse is not an involution on {text}")
            })?;
            check(r.length() == t.length() && r.depth() == t.depth(), || {
                format!("reverse changes metrics of {text}")
            })?;
            let back: Term = text.parse().map_err(|e| format!("{text}: {e}"))?;
            check(back.canonicalize(mode) == *t, || {
                format!("{text} does not round-trip")
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "parallel closure fixture L={a, a||b}",
            parallel_closure_fixture,
        ),
        (
            "series-parallel closure fixture L={ab, a||b}",
            sp_closure_fixture,
        ),
        ("(a||b)^n grammar words up to 6 atoms", par_pairs_grammar),
        ("a^m||b^n grammar words and membership", branch_runs_grammar),
        (
            "a||b^n grammar classification and words",
            parallel_linear_example,
        ),
        (
            "grammar and automaton languages agree",
            automaton_equivalence,
        ),
        ("(a^n||b).a grammar words and metrics", left_linear_example),
        (
            "structural matcher agrees with the set-based oracle",
            regex_agreement,
        ),
        (
            "length, depth, reversal and round-trip properties",
            metric_properties,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = BTreeSet::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {} PASS ({secs:.2}s): {name}", i + 1),
            Err(why) => {
                failed.insert(i + 1);
                println!("criterion {} FAIL ({secs:.2}s): {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {} failed",
        criteria.len() - failed.len(),
        failed.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
