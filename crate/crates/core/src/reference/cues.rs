use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{BackendError, Result};
use crate::model::{Document, Span};
use crate::negation::{Cue, CueBackend, CueKind, ScopeBackend};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CueLexicon {
    pub negation: Vec<String>,
    pub speculation: Vec<String>,
}

impl CueLexicon {
    pub fn from_json(source: &str) -> Result<Self> {
        Ok(serde_json::from_str(source)?)
    }
}

impl Default for CueLexicon {
    fn default() -> Self {
        Self::from_json(include_str!("../../data/cue_lexicon.json")).expect("bundled cue lexicon is valid")
    }
}

/// Single-token cues looked up case-insensitively; negation wins when a word
/// is listed under both kinds.
#[derive(Debug, Clone)]
pub struct LexiconCueBackend {
    negation: HashSet<String>,
    speculation: HashSet<String>,
}

impl LexiconCueBackend {
    pub fn new(lexicon: CueLexicon) -> Self {
        let lower = |v: Vec<String>| v.into_iter().map(|w| w.to_lowercase()).collect();
        Self {
            negation: lower(lexicon.negation),
            speculation: lower(lexicon.speculation),
        }
    }
}

impl CueBackend for LexiconCueBackend {
    fn detect(&self, document: &Document) -> Result<Vec<Cue>, BackendError> {
        let mut out = Vec::new();
        for s in 0..document.sentence_count() {
            for (k, t) in document.sentence_tokens(s).iter().enumerate() {
                let w = t.surface.to_lowercase();
                let kind = if self.negation.contains(&w) {
                    CueKind::Negation
                } else if self.speculation.contains(&w) {
                    CueKind::Speculation
                } else {
                    continue;
                };
                out.push(Cue {
                    span: Span::single(s, k),
                    kind,
                });
            }
        }
        Ok(out)
    }
}

/// Everything right of the cue up to the end of its sentence, minus closing
/// punctuation.
#[derive(Debug, Clone, Copy, Default)]
pub struct RightwardScopeBackend;

fn is_closing(surface: &str) -> bool {
    surface.chars().all(|c| matches!(c, '.' | '!' | '?' | '"' | '\'' | ')' | ']' | '”' | '’'))
}

impl ScopeBackend for RightwardScopeBackend {
    fn resolve(&self, document: &Document, cue: &Cue) -> Result<BTreeSet<usize>, BackendError> {
        let tokens = document.sentence_tokens(cue.span.sentence_index);
        let mut end = tokens.len();
        while end > cue.span.token_end && is_closing(&tokens[end - 1].surface) {
            end -= 1;
        }
        Ok((cue.span.token_end..end).collect())
    }
}
