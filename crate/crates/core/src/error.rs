use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure reported by a pluggable scorer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("backend `{backend}`: {message}")]
pub struct BackendError {
    pub backend: String,
    pub message: String,
}

impl BackendError {
    pub fn new(backend: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            backend: backend.into(),
            message: message.into(),
        }
    }
}

/// Pipeline stage names used in error reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Tokenize,
    EventExtraction,
    TriggerExtraction,
    Negation,
    Merge,
    Duration,
    Relations,
    Graph,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Tokenize => "tokenize",
            Stage::EventExtraction => "event_extraction",
            Stage::TriggerExtraction => "trigger_extraction",
            Stage::Negation => "negation",
            Stage::Merge => "merge",
            Stage::Duration => "duration",
            Stage::Relations => "relations",
            Stage::Graph => "graph",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid document: {0}")]
    InvalidDocument(String),

    #[error("span {span} is out of bounds: {reason}")]
    SpanOutOfBounds { span: String, reason: String },

    #[error("ontology validation failed: {0}")]
    Ontology(String),

    #[error("unknown event subtype `{0}`")]
    UnknownSubtype(String),

    #[error("label inventory mismatch: {0}")]
    Inventory(String),

    #[error("no argument scores for trigger at token {trigger_start} with subtype `{subtype}`")]
    MissingArgumentScores { trigger_start: usize, subtype: String },

    #[error(transparent)]
    Backend(#[from] BackendError),

    #[error("backend contract violated: {0}")]
    Contract(String),

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("duplicate event id `{0}`")]
    DuplicateEventId(String),

    #[error("relation endpoint `{0}` is not an event")]
    DanglingEndpoint(String),

    #[error("event `{0}` has no duration")]
    MissingDuration(String),

    #[error("events do not belong to the same document: {0}")]
    CrossDocument(String),

    #[error("unknown domain `{requested}`; registered domains: {}", available.join(", "))]
    UnknownDomain {
        requested: String,
        available: Vec<String>,
    },

    #[error("domain `{domain}` is missing backend slots: {}", missing.join(", "))]
    IncompleteSlots {
        domain: String,
        missing: Vec<&'static str>,
    },

    #[error("{0}")]
    Metrics(String),

    #[error("documents differ between predicted and gold annotations")]
    DocumentMismatch,

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at(stage: Stage) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage {
            stage,
            source: Box::new(source),
        }
    }

    /// The stage a failure came from, if it was raised inside the pipeline.
    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Stage { stage, .. } => Some(*stage),
            _ => None,
        }
    }
}
