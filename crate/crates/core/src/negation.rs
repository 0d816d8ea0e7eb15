//! Negation/speculation cues, their scopes, and event flagging.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::backend::{Concurrency, Gated};
use crate::error::{BackendError, Error, Result};
use crate::model::{Document, EventMention, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CueKind {
    Negation,
    Speculation,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cue {
    pub span: Span,
    pub kind: CueKind,
}

/// Sentence-local tokens governed by a cue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub cue: Cue,
    pub tokens: BTreeSet<usize>,
}

pub trait CueBackend: Send + Sync {
    fn detect(&self, document: &Document) -> Result<Vec<Cue>, BackendError>;

    fn concurrency(&self) -> Concurrency {
        Concurrency::Shared
    }
}

pub trait ScopeBackend: Send + Sync {
    fn resolve(&self, document: &Document, cue: &Cue) -> Result<BTreeSet<usize>, BackendError>;

    fn concurrency(&self) -> Concurrency {
        Concurrency::Shared
    }
}

impl CueBackend for Gated<dyn CueBackend> {
    fn detect(&self, document: &Document) -> Result<Vec<Cue>, BackendError> {
        let (_g, b) = self.enter();
        b.detect(document)
    }
}

impl ScopeBackend for Gated<dyn ScopeBackend> {
    fn resolve(&self, document: &Document, cue: &Cue) -> Result<BTreeSet<usize>, BackendError> {
        let (_g, b) = self.enter();
        b.resolve(document, cue)
    }
}

/// Cues in document order.
pub fn detect_cues(document: &Document, backend: &dyn CueBackend) -> Result<Vec<Cue>> {
    let mut cues = backend.detect(document)?;
    for c in &cues {
        document.check_span(&c.span)?;
    }
    cues.sort_by_key(|c| (c.span, c.kind));
    Ok(cues)
}

pub fn resolve_scope(document: &Document, cue: &Cue, backend: &dyn ScopeBackend) -> Result<Scope> {
    document.check_span(&cue.span)?;
    let tokens = backend.resolve(document, cue)?;
    let len = document.sentence_len(cue.span.sentence_index);
    if let Some(bad) = tokens.iter().find(|&&k| k >= len) {
        return Err(Error::Contract(format!(
            "scope token {bad} outside a {len}-token sentence"
        )));
    }
    Ok(Scope {
        cue: cue.clone(),
        tokens,
    })
}

/// Set `negated`/`speculated` on events with any trigger token inside a scope
/// of that kind. Flags are only ever set, never cleared.
pub fn flag_events(mut events: Vec<EventMention>, scopes: &[Scope]) -> Vec<EventMention> {
    for ev in &mut events {
        let t = ev.trigger;
        for s in scopes {
            if s.cue.span.sentence_index != t.sentence_index {
                continue;
            }
            if t.tokens().any(|k| s.tokens.contains(&k)) {
                match s.cue.kind {
                    CueKind::Negation => ev.negated = true,
                    CueKind::Speculation => ev.speculated = true,
                }
            }
        }
    }
    events
}
