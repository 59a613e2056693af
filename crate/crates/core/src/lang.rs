//! Finite languages of series-parallel terms and their algebra.
//!
//! Closures are infinite unions, so every closure here takes an explicit
//! power bound and returns the truncated union.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::term::{Mode, Term};

/// Sorted, duplicate-free set of canonical terms under one [`Mode`].
///
/// Members are keyed by their serialization, which is the canonical total
/// order on terms.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLang {
    mode: Mode,
    terms: BTreeMap<String, Term>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerKind {
    Seq,
    Par,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureKind {
    /// `L^*`, the union of sequential powers.
    Star,
    /// `L^⊕`, the union of parallel powers.
    Par,
    /// `L^⊗ = L^* ∪ L^⊕`.
    Sp,
}

/// Maximum number of witnesses kept in a [`LangDiff`].
pub const DIFF_WITNESS_CAP: usize = 20;

/// Result of comparing two languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangDiff {
    /// Members of the left language missing from the right (capped).
    pub left_only: Vec<Term>,
    /// Members of the right language missing from the left (capped).
    pub right_only: Vec<Term>,
    pub left_only_total: usize,
    pub right_only_total: usize,
}

impl LangDiff {
    pub fn is_equal(&self) -> bool {
        self.left_only_total == 0 && self.right_only_total == 0
    }
}

impl fmt::Display for LangDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_equal() {
            return writeln!(f, "languages are equal");
        }
        writeln!(
            f,
            "{} only in left, {} only in right",
            self.left_only_total, self.right_only_total
        )?;
        for t in &self.left_only {
            writeln!(f, "< {t}")?;
        }
        for t in &self.right_only {
            writeln!(f, "> {t}")?;
        }
        Ok(())
    }
}

impl FiniteLang {
    pub fn new(mode: Mode) -> FiniteLang {
        FiniteLang {
            mode,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a language, canonicalizing every term for `mode`.
    pub fn from_terms<I: IntoIterator<Item = Term>>(mode: Mode, terms: I) -> FiniteLang {
        let mut l = FiniteLang::new(mode);
        for t in terms {
            l.insert(t);
        }
        l
    }

    /// Parses each string as a term. Panics on malformed input; meant for
    /// fixtures and tests.
    pub fn from_strs(mode: Mode, terms: &[&str]) -> FiniteLang {
        FiniteLang::from_terms(
            mode,
            terms
                .iter()
                .map(|s| s.parse::<Term>().unwrap_or_else(|e| panic!("{s}: {e}"))),
        )
    }

    /// `{eps}`, the unit of both products.
    pub fn unit(mode: Mode) -> FiniteLang {
        FiniteLang::from_terms(mode, [Term::Eps])
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, t: Term) -> bool {
        let t = t.canonicalize(self.mode);
        self.terms.insert(t.to_string(), t).is_none()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms
            .contains_key(&t.canonicalize(self.mode).to_string())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.terms.values()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_subset(&self, other: &FiniteLang) -> bool {
        self.terms.keys().all(|k| other.terms.contains_key(k))
    }

    /// Same members re-canonicalized under another mode.
    pub fn with_mode(&self, mode: Mode) -> FiniteLang {
        FiniteLang::from_terms(mode, self.iter().cloned())
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&Term) -> bool) {
        self.terms.retain(|_, t| keep(t));
    }

    /// Parses the language file format: a `mode:` header, then one term per
    /// line, with `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<FiniteLang> {
        let mut lang: Option<FiniteLang> = None;
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let line_start = offset;
            offset += raw.len();
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            match lang.as_mut() {
                None => {
                    let mode = trimmed
                        .strip_prefix("mode:")
                        .and_then(|m| m.trim().parse::<Mode>().ok())
                        .ok_or_else(|| {
                            Error::syntax(line_start, "expected header `mode: ordered|commutative`")
                        })?;
                    lang = Some(FiniteLang::new(mode));
                }
                Some(l) => {
                    let toks = crate::lex::tokenize(content, line_start)?;
                    let t =
                        crate::term::parse_tokens(&toks, line_start + content.trim_end().len())?;
                    l.insert(t);
                }
            }
        }
        lang.ok_or_else(|| Error::syntax(text.len(), "missing `mode:` header"))
    }

    /// Serializes in the language file format.
    pub fn serialize(&self) -> String {
        let mut out = format!("mode: {}\n", self.mode);
        for k in self.terms.keys() {
            out.push_str(k);
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for FiniteLang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.mode)?;
        for (i, k) in self.terms.keys().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(k)?;
        }
        f.write_str("}")
    }
}

fn same_mode(l1: &FiniteLang, l2: &FiniteLang) -> Result<Mode> {
    if l1.mode != l2.mode {
        return Err(Error::ModeMismatch {
            left: l1.mode,
            right: l2.mode,
        });
    }
    Ok(l1.mode)
}

fn product(l1: &FiniteLang, l2: &FiniteLang, kind: PowerKind) -> Result<FiniteLang> {
    let mode = same_mode(l1, l2)?;
    let mut out = FiniteLang::new(mode);
    for x in l1.iter() {
        for y in l2.iter() {
            let pair = vec![x.clone(), y.clone()];
            out.insert(match kind {
                PowerKind::Seq => Term::Seq(pair),
                PowerKind::Par => Term::Par(pair),
            });
        }
    }
    Ok(out)
}

/// `{x.y | x ∈ l1, y ∈ l2}`.
pub fn concat(l1: &FiniteLang, l2: &FiniteLang) -> Result<FiniteLang> {
    product(l1, l2, PowerKind::Seq)
}

/// `{x||y | x ∈ l1, y ∈ l2}`.
pub fn parallel(l1: &FiniteLang, l2: &FiniteLang) -> Result<FiniteLang> {
    product(l1, l2, PowerKind::Par)
}

pub fn union(l1: &FiniteLang, l2: &FiniteLang) -> Result<FiniteLang> {
    same_mode(l1, l2)?;
    let mut out = l1.clone();
    for (k, t) in &l2.terms {
        out.terms.entry(k.clone()).or_insert_with(|| t.clone());
    }
    Ok(out)
}

/// n-fold sequential (`L^n`) or parallel (`L_n`) power; `n = 0` gives `{eps}`.
pub fn power(l: &FiniteLang, n: usize, kind: PowerKind) -> FiniteLang {
    let mut acc = FiniteLang::unit(l.mode);
    for _ in 0..n {
        acc = product(&acc, l, kind).expect("same language, same mode");
    }
    acc
}

/// Union of the powers `0..=n_max` of the given closure.
pub fn kleene_bounded(l: &FiniteLang, kind: ClosureKind, n_max: usize) -> FiniteLang {
    match kind {
        ClosureKind::Star => power_union(l, PowerKind::Seq, n_max),
        ClosureKind::Par => power_union(l, PowerKind::Par, n_max),
        ClosureKind::Sp => union(
            &power_union(l, PowerKind::Seq, n_max),
            &power_union(l, PowerKind::Par, n_max),
        )
        .expect("same mode"),
    }
}

fn power_union(l: &FiniteLang, kind: PowerKind, n_max: usize) -> FiniteLang {
    let mut layer = FiniteLang::unit(l.mode);
    let mut acc = layer.clone();
    for _ in 0..n_max {
        layer = product(&layer, l, kind).expect("same mode");
        acc = union(&acc, &layer).expect("same mode");
    }
    acc
}

/// Element-wise reversal.
pub fn reverse(l: &FiniteLang) -> FiniteLang {
    FiniteLang::from_terms(l.mode, l.iter().map(Term::reverse))
}

/// Compares two languages of the same mode, reporting up to
/// [`DIFF_WITNESS_CAP`] witnesses of the symmetric difference.
pub fn compare(l1: &FiniteLang, l2: &FiniteLang) -> Result<LangDiff> {
    same_mode(l1, l2)?;
    let left: Vec<&Term> = l1
        .terms
        .iter()
        .filter(|(k, _)| !l2.terms.contains_key(*k))
        .map(|(_, t)| t)
        .collect();
    let right: Vec<&Term> = l2
        .terms
        .iter()
        .filter(|(k, _)| !l1.terms.contains_key(*k))
        .map(|(_, t)| t)
        .collect();
    let left_keep = left.len().min(DIFF_WITNESS_CAP);
    let right_keep = right.len().min(DIFF_WITNESS_CAP - left_keep);
    Ok(LangDiff {
        left_only: left[..left_keep].iter().map(|t| (*t).clone()).collect(),
        right_only: right[..right_keep].iter().map(|t| (*t).clone()).collect(),
        left_only_total: left.len(),
        right_only_total: right.len(),
    })
}
