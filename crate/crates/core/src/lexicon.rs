//! Lexicon storage and its line-oriented text format.
//!
//! ```text
//! thir :: num -k ; 3
//! @eps :: =num =num +k num ; (lam y (lam x (add y x)))
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::grammar::{validate_syntype, GrammarError, Sign, SynType};
use crate::terms::{format_term, parse_term, ParseError};

pub const EPSILON_TOKEN: &str = "@eps";

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Grammar { line: usize, source: GrammarError },
    #[error("line {line}: {source}")]
    Term { line: usize, source: ParseError },
    #[error("line {line}: invalid syntactic type `{ty}`")]
    InvalidType { line: usize, ty: String },
}

/// Ordered set of lexical signs. Insertion order is kept; exact duplicates
/// are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: Vec<Sign>,
}

impl Lexicon {
    pub fn new() -> Lexicon {
        Lexicon::default()
    }

    pub fn entries(&self) -> &[Sign] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Sign> {
        self.entries.get(i)
    }

    pub fn contains(&self, sign: &Sign) -> bool {
        self.position(sign).is_some()
    }

    /// Position of an entry equal up to alpha-renaming of its semantics.
    pub fn position(&self, sign: &Sign) -> Option<usize> {
        self.entries.iter().position(|e| same_entry(e, sign))
    }

    /// Appends the entry; returns false if it was already present.
    pub fn insert(&mut self, sign: Sign) -> bool {
        if self.contains(&sign) {
            return false;
        }
        self.entries.push(sign);
        true
    }

    pub fn remove(&mut self, sign: &Sign) -> bool {
        match self.position(sign) {
            Some(i) => {
                self.entries.remove(i);
                true
            }
            None => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Sign> {
        self.entries.iter()
    }

    /// Every licensee identifier in use.
    pub fn licensing_idents(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .entries
            .iter()
            .flat_map(|s| s.features().iter())
            .filter(|f| matches!(f.kind, crate::grammar::FeatureKind::Licensee | crate::grammar::FeatureKind::Licensor))
            .map(|f| f.ident.clone())
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }

    pub fn to_text(&self) -> String {
        self.entries.iter().map(|e| format!("{}\n", entry_line(e))).collect()
    }

    /// Resolves a key `exponent` or `exponent#i` (1-based among entries with
    /// that exponent, in file order). `eps` and `@eps` name the empty exponent.
    pub fn resolve_key(&self, key: &str) -> Result<usize, KeyError> {
        let (name, index) = match key.rsplit_once('#') {
            Some((n, i)) => (n, Some(i.parse::<usize>().map_err(|_| KeyError::Unknown(key.into()))?)),
            None => (key, None),
        };
        let mut hits = self.matching(name);
        if hits.is_empty() && (name == "eps" || name == EPSILON_TOKEN) {
            hits = self.matching("");
        }
        match (index, hits.len()) {
            (_, 0) => Err(KeyError::Unknown(key.into())),
            (None, 1) => Ok(hits[0]),
            (None, _) => Err(KeyError::Ambiguous(key.into())),
            (Some(i), n) if i >= 1 && i <= n => Ok(hits[i - 1]),
            (Some(_), _) => Err(KeyError::Unknown(key.into())),
        }
    }

    fn matching(&self, exponent: &str) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.exponent == exponent)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KeyError {
    #[error("no lexicon entry for key `{0}`")]
    Unknown(String),
    #[error("key `{0}` matches several entries; use exponent#i")]
    Ambiguous(String),
}

fn same_entry(a: &Sign, b: &Sign) -> bool {
    a.exponent == b.exponent && a.syntype == b.syntype && a.semantics.alpha_eq(&b.semantics)
}

impl FromIterator<Sign> for Lexicon {
    fn from_iter<I: IntoIterator<Item = Sign>>(iter: I) -> Lexicon {
        let mut lex = Lexicon::new();
        for s in iter {
            lex.insert(s);
        }
        lex
    }
}

impl fmt::Display for Lexicon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Canonical single-line form of an entry.
pub fn entry_line(sign: &Sign) -> String {
    let exponent = if sign.exponent.is_empty() { EPSILON_TOKEN } else { &sign.exponent };
    format!("{exponent} {} ; {}", sign.syntype, format_term(&sign.semantics))
}

pub fn parse_entry_line(line: &str) -> Result<Sign, LexiconError> {
    parse_line(line, 1)
}

fn parse_line(line: &str, lineno: usize) -> Result<Sign, LexiconError> {
    let syntax = |msg: &str| LexiconError::Syntax { line: lineno, msg: msg.to_string() };
    let (left, term) = line.split_once(" ; ").ok_or_else(|| syntax("missing ` ; ` separator"))?;
    let (exponent, ty) = left.split_once(' ').ok_or_else(|| syntax("missing syntactic type"))?;
    if exponent.is_empty() || exponent.contains(char::is_whitespace) {
        return Err(syntax("bad exponent"));
    }
    let exponent = if exponent == EPSILON_TOKEN { "" } else { exponent };
    let syntype = SynType::from_str(ty).map_err(|source| LexiconError::Grammar { line: lineno, source })?;
    if !validate_syntype(&syntype) {
        return Err(LexiconError::InvalidType { line: lineno, ty: ty.to_string() });
    }
    let semantics = parse_term(term.trim()).map_err(|source| LexiconError::Term { line: lineno, source })?;
    Ok(Sign::new(exponent, syntype, semantics))
}

impl FromStr for Lexicon {
    type Err = LexiconError;

    /// Blank lines and lines starting with `#` are skipped.
    fn from_str(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim_end();
            if trimmed.trim().is_empty() || trimmed.starts_with('#') {
                continue;
            }
            lex.insert(parse_line(trimmed, i + 1)?);
        }
        Ok(lex)
    }
}
