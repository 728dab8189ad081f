//! Event log of a training run, serialized as JSON lines.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::Sign;
use crate::lexicon::{entry_line, parse_entry_line, Lexicon, LexiconError};
use crate::teacher::Ump;
use crate::terms::format_term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EventKind {
    RoteAdd,
    SegmentationRevision,
    Reward,
    Punish,
    LicensingReorg,
    SemanticReorg,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UmpRecord {
    pub exponent: String,
    pub term: String,
}

impl From<&Ump> for UmpRecord {
    fn from(u: &Ump) -> UmpRecord {
        UmpRecord { exponent: u.exponent.clone(), term: format_term(&u.semantics) }
    }
}

/// One trace line. Lexicon changes are listed as canonical entry lines;
/// replay applies `removed` before `added`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub t: u64,
    pub kind: EventKind,
    #[serde(default)]
    pub added: Vec<String>,
    #[serde(default)]
    pub removed: Vec<String>,
    #[serde(default)]
    pub ump: Option<UmpRecord>,
    #[serde(default)]
    pub offending: Option<String>,
}

impl TraceEvent {
    pub fn new(t: u64, kind: EventKind) -> TraceEvent {
        TraceEvent { t, kind, added: Vec::new(), removed: Vec::new(), ump: None, offending: None }
    }

    pub fn with_ump(mut self, ump: &Ump) -> TraceEvent {
        self.ump = Some(ump.into());
        self
    }

    pub fn with_changes(mut self, removed: &[Sign], added: &[Sign]) -> TraceEvent {
        self.removed = removed.iter().map(entry_line).collect();
        self.added = added.iter().map(entry_line).collect();
        self
    }

    pub fn with_offending(mut self, exponent: impl Into<String>) -> TraceEvent {
        self.offending = Some(exponent.into());
        self
    }

    pub fn changes_lexicon(&self) -> bool {
        !self.added.is_empty() || !self.removed.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("trace line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("trace line {line}: bad entry: {source}")]
    Entry { line: usize, source: LexiconError },
}

pub fn to_jsonl(events: &[TraceEvent]) -> String {
    let mut out = String::new();
    for e in events {
        out.push_str(&serde_json::to_string(e).expect("trace events serialize"));
        out.push('\n');
    }
    out
}

pub fn from_jsonl(text: &str) -> Result<Vec<TraceEvent>, TraceError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|source| TraceError::Json { line: i + 1, source }))
        .collect()
}

/// Folds the events over the empty lexicon.
pub fn replay(events: &[TraceEvent]) -> Result<Lexicon, TraceError> {
    let mut lex = Lexicon::new();
    for (i, e) in events.iter().enumerate() {
        apply(&mut lex, e).map_err(|source| TraceError::Entry { line: i + 1, source })?;
    }
    Ok(lex)
}

pub(crate) fn apply(lex: &mut Lexicon, e: &TraceEvent) -> Result<(), LexiconError> {
    for line in &e.removed {
        lex.remove(&parse_entry_line(line)?);
    }
    for line in &e.added {
        lex.insert(parse_entry_line(line)?);
    }
    Ok(())
}
