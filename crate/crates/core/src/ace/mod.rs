//! Ontology-based extraction: entities, typed triggers and role-labeled
//! arguments, decoded under the entity/trigger/argument constraints.

pub mod bio;
pub mod bundle;
pub mod constraints;
pub mod decode;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use self::bio::{decode_bio, Bio};
pub use self::bundle::{ArgumentScores, ScoreBundle};
pub use self::constraints::{apply_decoding_constraints, verify_constraints, ConstraintKind, ConstraintViolation};
pub use self::decode::{extract_ace_events, DecodingStrategy, SentenceExtraction};

use crate::backend::{Concurrency, Gated};
use crate::error::{BackendError, Result};
use crate::model::{Document, EntityMention, EventMention};
use crate::ontology::Ontology;
use crate::par::{self, Execution};

/// Produces a [`ScoreBundle`] for one sentence.
pub trait AceBackend: Send + Sync {
    fn score_sentence(
        &self,
        document: &Document,
        sentence_index: usize,
        ontology: &Ontology,
    ) -> Result<ScoreBundle, BackendError>;

    fn concurrency(&self) -> Concurrency {
        Concurrency::Shared
    }
}

impl AceBackend for Gated<dyn AceBackend> {
    fn score_sentence(
        &self,
        document: &Document,
        sentence_index: usize,
        ontology: &Ontology,
    ) -> Result<ScoreBundle, BackendError> {
        let (_g, b) = self.enter();
        b.score_sentence(document, sentence_index, ontology)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtractOptions {
    pub strategy: DecodingStrategy,
    pub execution: Execution,
}

/// Entities and typed events for a whole document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extraction {
    pub entities: Vec<EntityMention>,
    pub events: Vec<EventMention>,
}

/// The event-extraction slot of a domain. The default implementation is
/// [`AceExtractor`]; a domain may substitute its own extractor wholesale.
pub trait EventExtractor: Send + Sync {
    fn extract(
        &self,
        document: &Document,
        ontology: &Ontology,
        options: ExtractOptions,
    ) -> Result<Extraction>;

    fn concurrency(&self) -> Concurrency {
        Concurrency::Shared
    }
}

impl EventExtractor for Gated<dyn EventExtractor> {
    fn extract(
        &self,
        document: &Document,
        ontology: &Ontology,
        options: ExtractOptions,
    ) -> Result<Extraction> {
        let (_g, b) = self.enter();
        b.extract(document, ontology, options)
    }
}

/// Scores each sentence with an [`AceBackend`] and decodes it.
pub struct AceExtractor<B: ?Sized> {
    backend: std::sync::Arc<B>,
}

impl<B: ?Sized> AceExtractor<B> {
    pub fn new(backend: std::sync::Arc<B>) -> Self {
        Self { backend }
    }
}

impl<B: AceBackend + ?Sized> EventExtractor for AceExtractor<B> {
    fn extract(
        &self,
        document: &Document,
        ontology: &Ontology,
        options: ExtractOptions,
    ) -> Result<Extraction> {
        let sentences: Vec<usize> = (0..document.sentence_count()).collect();
        let per_sentence = par::try_map(options.execution, &sentences, |&s| {
            let bundle = self.backend.score_sentence(document, s, ontology)?;
            extract_ace_events(document, s, &bundle, ontology, options.strategy)
        })?;
        let mut out = Extraction::default();
        for s in per_sentence {
            out.entities.extend(s.entities);
            out.events.extend(s.events);
        }
        Ok(out)
    }

    fn concurrency(&self) -> Concurrency {
        self.backend.concurrency()
    }
}

/// Serves pre-computed bundles keyed by the sentence's space-joined tokens.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FixtureAceBackend {
    bundles: BTreeMap<String, ScoreBundle>,
}

impl FixtureAceBackend {
    pub fn from_json(source: &str) -> Result<Self> {
        Ok(serde_json::from_str(source)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes")
    }

    pub fn key(document: &Document, sentence_index: usize) -> String {
        document
            .sentence_tokens(sentence_index)
            .iter()
            .map(|t| t.surface.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn insert(&mut self, key: impl Into<String>, bundle: ScoreBundle) {
        self.bundles.insert(key.into(), bundle);
    }
}

impl AceBackend for FixtureAceBackend {
    fn score_sentence(
        &self,
        document: &Document,
        sentence_index: usize,
        _ontology: &Ontology,
    ) -> Result<ScoreBundle, BackendError> {
        let key = Self::key(document, sentence_index);
        self.bundles
            .get(&key)
            .cloned()
            .ok_or_else(|| BackendError::new("fixture", format!("no bundle for sentence `{key}`")))
    }
}
