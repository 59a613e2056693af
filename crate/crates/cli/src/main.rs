use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use splang::automaton::{self, BranchingAutomaton};
use splang::grammar::{self, Grammar};
use splang::lang::{self, ClosureKind, PowerKind};
use splang::regex::{self, Regex};
use splang::universe::{self, Alphabet};
use splang::{Error, FiniteLang, Limits, Mode, Term};

/// Workbench for series-parallel terms, languages, regexes, grammars and
/// branching automata.
///
/// Exit codes: 0 success or true, 1 false or not equal, 2 parse or input
/// error, 3 mode mismatch, 4 regex outside the parallel fragment, 5 grammar
/// not parallel-linear, 6 cardinality cap exceeded.
#[derive(Parser)]
#[command(name = "splang", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Reading of `||`: ordered or commutative
    #[arg(long, global = true, default_value = "ordered", value_parser = parse_mode)]
    mode: Mode,
    /// Atom bound for enumeration and generation
    #[arg(long, global = true, default_value_t = 5)]
    max_atoms: usize,
    /// Largest power used by bounded closures
    #[arg(long, global = true, default_value_t = 3)]
    nmax: usize,
    /// Seed for random grammars
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Membership step budget is step-factor * atoms + step-offset
    #[arg(long, global = true, default_value_t = 4)]
    step_factor: usize,
    #[arg(long, global = true, default_value_t = 8)]
    step_offset: usize,
    /// Largest number of terms a search may build
    #[arg(long, global = true, default_value_t = 200_000, value_parser = parse_cap)]
    cap: usize,
}

impl Opts {
    fn limits(&self) -> Limits {
        Limits {
            cap: self.cap,
            step_factor: self.step_factor,
            step_offset: self.step_offset,
        }
    }
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("cap must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Single terms
    #[command(subcommand)]
    Term(TermCmd),
    /// Finite language files
    #[command(subcommand)]
    Lang(LangCmd),
    /// Regular expressions
    #[command(subcommand)]
    Regex(RegexCmd),
    /// Grammar files
    #[command(subcommand)]
    Grammar(GrammarCmd),
    /// Branching automaton files
    #[command(subcommand)]
    Automaton(AutomatonCmd),
    /// Builds the automaton of a parallel-linear grammar and compares the
    /// two bounded languages in commutative mode
    Equiv {
        grammar: String,
        /// Compare against this automaton instead of the constructed one
        #[arg(long)]
        automaton: Option<String>,
        /// Alphabet to enumerate over (default: the grammar's terminals)
        #[arg(long)]
        alphabet: Option<String>,
    },
}

#[derive(Subcommand)]
enum TermCmd {
    /// Prints `lg=<n> dp=<n> atoms=<n> class=<class>`
    Metrics {
        term: String,
    },
    Reverse {
        term: String,
    },
    /// Canonical form under --mode
    Canon {
        term: String,
    },
    /// Every term with at most --max-atoms atoms
    Enum {
        #[arg(long)]
        alphabet: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PowerArg {
    Seq,
    Par,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureArg {
    Star,
    Par,
    Sp,
}

#[derive(Subcommand)]
enum LangCmd {
    Concat {
        left: String,
        right: String,
    },
    Par {
        left: String,
        right: String,
    },
    Union {
        left: String,
        right: String,
    },
    Power {
        file: String,
        #[arg(long, value_enum)]
        kind: PowerArg,
        #[arg(long)]
        n: usize,
    },
    /// Union of the powers 0..=--nmax
    Closure {
        file: String,
        #[arg(long, value_enum)]
        kind: ClosureArg,
    },
    Reverse {
        file: String,
    },
    /// Exits 0 if equal, 1 with a diff on stderr otherwise
    Equal {
        left: String,
        right: String,
    },
}

#[derive(Subcommand)]
enum RegexCmd {
    Match {
        regex: String,
        term: String,
    },
    /// Matching terms with at most --max-atoms atoms
    Enum {
        regex: String,
        /// Default: the atoms of the regex
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Parallel-linear grammar of a regex over atoms, eps, |, || and ^
    ToGrammar {
        regex: String,
    },
}

#[derive(Subcommand)]
enum GrammarCmd {
    Classify {
        file: String,
    },
    /// Words derivable with at most --max-atoms terminals
    Generate {
        file: String,
    },
    Member {
        file: String,
        term: String,
        /// Print the derivation found
        #[arg(long)]
        trace: bool,
    },
    /// Random parallel-linear grammar from --seed
    Random,
}

#[derive(Subcommand)]
enum AutomatonCmd {
    FromGrammar {
        file: String,
    },
    Accepts {
        file: String,
        term: String,
    },
    /// Accepted terms with at most --max-atoms atoms
    Enum {
        file: String,
        /// Default: the labels of the sequential transitions
        #[arg(long)]
        alphabet: Option<String>,
    },
}

enum Failure {
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Lib(e) => match e {
                Error::ModeMismatch { .. } => 3,
                Error::Fragment(_) => 4,
                Error::NotParallelLinear(_) => 5,
                Error::CapExceeded { .. } => 6,
                _ => 2,
            },
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    Ok(text)
}

fn load_lang(path: &str) -> Result<FiniteLang, Failure> {
    FiniteLang::parse(&read_input(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn load_grammar(path: &str) -> Result<Grammar, Failure> {
    Grammar::parse(&read_input(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn load_automaton(path: &str) -> Result<BranchingAutomaton, Failure> {
    BranchingAutomaton::parse(&read_input(path)?)
        .map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn alphabet(s: &str) -> Result<Alphabet, Failure> {
    universe::parse_alphabet(s).ok_or_else(|| {
        Failure::Input(format!(
            "alphabet must be a run of lowercase letters, got {s:?}"
        ))
    })
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("writing output: {e}")))
}

fn truth(out: &mut impl Write, yes: bool) -> Outcome {
    emit(out, if yes { "true\n" } else { "false\n" })?;
    Ok(yes)
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let o = &cli.opts;
    match cli.cmd {
        Cmd::Term(cmd) => term_cmd(o, cmd, out),
        Cmd::Lang(cmd) => lang_cmd(o, cmd, out),
        Cmd::Regex(cmd) => regex_cmd(o, cmd, out),
        Cmd::Grammar(cmd) => grammar_cmd(o, cmd, out),
        Cmd::Automaton(cmd) => automaton_cmd(o, cmd, out),
        Cmd::Equiv {
            grammar,
            automaton,
            alphabet: sigma,
        } => {
            let g = load_grammar(&grammar)?;
            let sigma = match sigma {
                Some(s) => alphabet(&s)?,
                None => g.terminals().clone(),
            };
            let a = match automaton {
                Some(path) => load_automaton(&path)?,
                None => automaton::from_linear_grammar(&g)?,
            };
            let diff = automaton::compare_with_grammar(&g, &a, &sigma, o.max_atoms, &o.limits())?;
            if diff.is_equal() {
                emit(out, "equal\n")?;
                Ok(true)
            } else {
                emit(out, "not equal\n")?;
                eprint!("grammar (<) vs automaton (>): {diff}");
                Ok(false)
            }
        }
    }
}

fn term_cmd(o: &Opts, cmd: TermCmd, out: &mut impl Write) -> Outcome {
    let parse = |s: &str| Term::<splang::Atom>::parse(s).map(|t| t.canonicalize(o.mode));
    let text = match cmd {
        TermCmd::Metrics { term } => {
            let t = parse(&term)?;
            format!(
                "lg={} dp={} atoms={} class={}\n",
                t.length(),
                t.depth(),
                t.leaf_count(),
                t.classify().primary()
            )
        }
        TermCmd::Reverse { term } => format!("{}\n", parse(&term)?.reverse().canonicalize(o.mode)),
        TermCmd::Canon { term } => format!("{}\n", parse(&term)?),
        TermCmd::Enum { alphabet: sigma } => {
            universe::enumerate_terms(&alphabet(&sigma)?, o.max_atoms, o.mode, o.cap)?.serialize()
        }
    };
    emit(out, &text)?;
    Ok(true)
}

fn lang_cmd(o: &Opts, cmd: LangCmd, out: &mut impl Write) -> Outcome {
    let result = match cmd {
        LangCmd::Concat { left, right } => lang::concat(&load_lang(&left)?, &load_lang(&right)?)?,
        LangCmd::Par { left, right } => lang::parallel(&load_lang(&left)?, &load_lang(&right)?)?,
        LangCmd::Union { left, right } => lang::union(&load_lang(&left)?, &load_lang(&right)?)?,
        LangCmd::Power { file, kind, n } => {
            let kind = match kind {
                PowerArg::Seq => PowerKind::Seq,
                PowerArg::Par => PowerKind::Par,
            };
            lang::power(&load_lang(&file)?, n, kind)
        }
        LangCmd::Closure { file, kind } => {
            let kind = match kind {
                ClosureArg::Star => ClosureKind::Star,
                ClosureArg::Par => ClosureKind::Par,
                ClosureArg::Sp => ClosureKind::Sp,
            };
            lang::kleene_bounded(&load_lang(&file)?, kind, o.nmax)
        }
        LangCmd::Reverse { file } => lang::reverse(&load_lang(&file)?),
        LangCmd::Equal { left, right } => {
            let diff = lang::compare(&load_lang(&left)?, &load_lang(&right)?)?;
            if !diff.is_equal() {
                eprint!("{diff}");
            }
            return Ok(diff.is_equal());
        }
    };
    emit(out, &result.serialize())?;
    Ok(true)
}

fn regex_cmd(o: &Opts, cmd: RegexCmd, out: &mut impl Write) -> Outcome {
    match cmd {
        RegexCmd::Match { regex, term } => {
            let r = Regex::parse(&regex)?;
            let t: Term = Term::parse(&term)?;
            truth(out, regex::matches(&r, &t, o.mode))
        }
        RegexCmd::Enum {
            regex,
            alphabet: sigma,
        } => {
            let r = Regex::parse(&regex)?;
            let sigma = match sigma {
                Some(s) => alphabet(&s)?,
                None => r.atoms(),
            };
            let l = regex::regex_enumerate(&r, &sigma, o.max_atoms, o.mode, o.cap)?;
            emit(out, &l.serialize())?;
            Ok(true)
        }
        RegexCmd::ToGrammar { regex } => {
            let g = regex::to_parallel_linear_grammar(&Regex::parse(&regex)?)?;
            emit(out, &g.to_string())?;
            Ok(true)
        }
    }
}

fn grammar_cmd(o: &Opts, cmd: GrammarCmd, out: &mut impl Write) -> Outcome {
    match cmd {
        GrammarCmd::Classify { file } => {
            let c = grammar::classify_grammar(&load_grammar(&file)?);
            emit(out, &format!("{c}\n"))?;
            Ok(true)
        }
        GrammarCmd::Generate { file } => {
            let g = load_grammar(&file)?;
            let budget = o.limits().step_budget(o.max_atoms);
            let l = grammar::generate(&g, o.max_atoms, budget, o.mode, o.cap)?;
            emit(out, &l.serialize())?;
            Ok(true)
        }
        GrammarCmd::Member { file, term, trace } => {
            let g = load_grammar(&file)?;
            let t: Term = Term::parse(&term)?;
            let found = grammar::is_member(&g, &t, o.mode, &o.limits())?;
            truth(out, found.is_some())?;
            if let (true, Some(d)) = (trace, &found) {
                emit(out, &format!("{d}\n"))?;
            }
            Ok(found.is_some())
        }
        GrammarCmd::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
            emit(out, &grammar::random_parallel_linear(&mut rng).to_string())?;
            Ok(true)
        }
    }
}

fn automaton_cmd(o: &Opts, cmd: AutomatonCmd, out: &mut impl Write) -> Outcome {
    match cmd {
        AutomatonCmd::FromGrammar { file } => {
            let a = automaton::from_linear_grammar(&load_grammar(&file)?)?;
            emit(out, &a.serialize())?;
            Ok(true)
        }
        AutomatonCmd::Accepts { file, term } => {
            let a = load_automaton(&file)?;
            let t: Term = Term::parse(&term)?;
            truth(out, automaton::accepts(&a, &t))
        }
        AutomatonCmd::Enum {
            file,
            alphabet: sigma,
        } => {
            let a = load_automaton(&file)?;
            let sigma = match sigma {
                Some(s) => alphabet(&s)?,
                None => a.seq_transitions().iter().map(|s| s.label).collect(),
            };
            let l = automaton::enumerate_accepted(&a, &sigma, o.max_atoms, o.cap)?;
            emit(out, &l.serialize())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let _ = out.flush();
            match &f {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}
