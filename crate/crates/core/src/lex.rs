//! Tokenizer shared by the term, regex and grammar text formats.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TokKind {
    /// A single ASCII letter, either case.
    Letter(char),
    Eps,
    Zero,
    Dot,
    ParBar,
    Bar,
    Star,
    Caret,
    At,
    LParen,
    RParen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Tok {
    pub kind: TokKind,
    pub offset: usize,
}

impl TokKind {
    pub fn describe(self) -> String {
        match self {
            TokKind::Letter(c) => format!("{c:?}"),
            TokKind::Eps => "'eps'".into(),
            TokKind::Zero => "'0'".into(),
            TokKind::Dot => "'.'".into(),
            TokKind::ParBar => "'||'".into(),
            TokKind::Bar => "'|'".into(),
            TokKind::Star => "'*'".into(),
            TokKind::Caret => "'^'".into(),
            TokKind::At => "'@'".into(),
            TokKind::LParen => "'('".into(),
            TokKind::RParen => "')'".into(),
        }
    }
}

/// Splits `src` into tokens. `base` is added to every reported offset so that
/// callers tokenizing a slice of a larger buffer get absolute positions.
pub(crate) fn tokenize(src: &str, base: usize) -> Result<Vec<Tok>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let offset = base + i;
        let kind = match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'|' if bytes.get(i + 1) == Some(&b'|') => {
                i += 2;
                out.push(Tok {
                    kind: TokKind::ParBar,
                    offset,
                });
                continue;
            }
            b'|' => TokKind::Bar,
            b'.' => TokKind::Dot,
            b'*' => TokKind::Star,
            b'^' => TokKind::Caret,
            b'@' => TokKind::At,
            b'0' => TokKind::Zero,
            b'(' => TokKind::LParen,
            b')' => TokKind::RParen,
            b if b.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word = &src[start..i];
                let kind = if word == "eps" {
                    TokKind::Eps
                } else if word.len() == 1 {
                    TokKind::Letter(word.chars().next().unwrap())
                } else {
                    return Err(Error::syntax(
                        offset,
                        format!("unexpected identifier {word:?} (symbols are single letters)"),
                    ));
                };
                out.push(Tok { kind, offset });
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(Error::UnknownChar { offset, ch });
            }
        };
        out.push(Tok { kind, offset });
        i += 1;
    }
    Ok(out)
}
