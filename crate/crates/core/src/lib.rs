//! Temporal event understanding.
//!
//! Raw text goes in; out comes an [`AnnotationResult`] with entities, typed and
//! trigger-only events with arguments, duration categories, negation and
//! speculation flags, pairwise temporal relations and a VAGUE-pruned temporal
//! graph. Every scoring stage sits behind a backend trait; the [`reference`]
//! backends are deterministic and lexicon driven so the whole pipeline runs
//! offline.
//!
//! ```
//! use tempevent_core::{annotate, AnnotateOptions, BackendRegistry};
//!
//! let registry = BackendRegistry::default();
//! let text = "The United States is not considering sending troops to Mozambique.";
//! let result = annotate(text, "news", &registry, &AnnotateOptions::default()).unwrap();
//! let sending = result.events.iter().find(|e| result.document.span_text(&e.trigger) == "sending").unwrap();
//! assert!(sending.negated);
//! ```

pub mod ace;
pub mod backend;
pub mod duration;
pub mod error;
pub mod eval;
pub mod format;
pub mod model;
pub mod negation;
pub mod ontology;
pub mod par;
pub mod pipeline;
pub mod reference;
pub mod registry;
pub mod tokenize;
pub mod triggers;

pub use error::{BackendError, Error, Result, Stage};
pub use model::{
    AnnotationResult, Argument, Document, DurationCategory, DurationScale, EntityMention, EventId, EventMention,
    EventSource, EventType, RelationLabel, RelationLabelSet, Span, TemporalRelation, Token, PSEUDO_ROLE,
    SCHEMA_VERSION,
};
pub use ontology::{load_ontology, Ontology};
pub use par::Execution;
pub use pipeline::{annotate, annotate_batch, annotate_document, AnnotateOptions, TemporalGraph};
pub use registry::{BackendRegistry, DomainBackends, DomainSlots};
