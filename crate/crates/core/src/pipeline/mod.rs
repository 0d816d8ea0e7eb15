//! End-to-end orchestration: tokenize, extract (typed and trigger-only in
//! parallel), resolve negation, merge, flag, then durations and relations in
//! parallel, and finally the pruned graph.

pub mod graph;
pub mod merge;

use serde::{Deserialize, Serialize};

pub use self::graph::{build_temporal_graph, GraphEdge, GraphNode, TemporalGraph};
pub use self::merge::merge_events;

use crate::ace::{DecodingStrategy, ExtractOptions};
use crate::duration::predict_duration;
use crate::error::{Error, Result, Stage};
use crate::model::{AnnotationResult, Document, DurationScale};
use crate::negation::{detect_cues, flag_events, resolve_scope, Scope};
use crate::par::{self, Execution};
use crate::registry::{BackendRegistry, DomainBackends};
use crate::tokenize::{RuleTokenizer, Tokenizer};
use crate::triggers::{classify_relations, extract_triggers, RelationOptions, DEFAULT_THRESHOLD};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnnotateOptions {
    /// Minimum event probability for a trigger-only event, in (0, 1).
    pub trigger_threshold: f64,
    /// Only relate events at most this many sentences apart; `None` relates all pairs.
    pub max_sentence_gap: Option<usize>,
    pub decoding: DecodingStrategy,
    pub duration_scale: DurationScale,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for AnnotateOptions {
    fn default() -> Self {
        Self {
            trigger_threshold: DEFAULT_THRESHOLD,
            max_sentence_gap: None,
            decoding: DecodingStrategy::default(),
            duration_scale: DurationScale::default(),
            execution: Execution::default(),
        }
    }
}

impl AnnotateOptions {
    pub fn validate(&self) -> Result<()> {
        let t = self.trigger_threshold;
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidOption(format!("trigger_threshold must be in (0, 1), got {t}")));
        }
        Ok(())
    }
}

/// Annotate `text` with the backends registered for `domain`.
pub fn annotate(
    text: &str,
    domain: &str,
    registry: &BackendRegistry,
    options: &AnnotateOptions,
) -> Result<AnnotationResult> {
    options.validate()?;
    let backends = registry.get(domain)?;
    let document = RuleTokenizer::default().tokenize(text);
    annotate_document(document, &backends, options)
}

/// Annotate many texts. With parallel execution the documents are spread
/// across threads and each one runs its stages sequentially.
pub fn annotate_batch(
    texts: &[String],
    domain: &str,
    registry: &BackendRegistry,
    options: &AnnotateOptions,
) -> Result<Vec<AnnotationResult>> {
    options.validate()?;
    let backends = registry.get(domain)?;
    let tokenizer = RuleTokenizer::default();
    let per_document = AnnotateOptions {
        execution: Execution::Sequential,
        ..options.clone()
    };
    par::try_map(options.execution, texts, |t| {
        annotate_document(tokenizer.tokenize(t), &backends, &per_document)
    })
}

/// Run every stage after tokenization.
pub fn annotate_document(
    document: Document,
    backends: &DomainBackends,
    options: &AnnotateOptions,
) -> Result<AnnotationResult> {
    options.validate()?;
    let exec = options.execution;
    let doc = &document;

    let (typed, generic) = par::join(
        exec,
        || {
            let opts = ExtractOptions {
                strategy: options.decoding,
                execution: exec,
            };
            backends
                .events
                .extract(doc, &backends.ontology, opts)
                .map_err(Error::at(Stage::EventExtraction))
        },
        || {
            extract_triggers(doc, backends.triggers.as_ref(), options.trigger_threshold)
                .map_err(Error::at(Stage::TriggerExtraction))
        },
    );
    let typed = typed?;
    let generic = generic?;

    let scopes = negation_scopes(doc, backends).map_err(Error::at(Stage::Negation))?;
    let merged = merge_events(doc, &typed.events, &generic).map_err(Error::at(Stage::Merge))?;
    let mut events = flag_events(merged, &scopes);

    let (durations, relations) = par::join(
        exec,
        || {
            par::try_map(exec, &events, |e| {
                predict_duration(doc, e, backends.duration.as_ref(), options.duration_scale)
            })
            .map_err(Error::at(Stage::Duration))
        },
        || {
            let opts = RelationOptions {
                max_sentence_gap: options.max_sentence_gap,
                execution: exec,
            };
            classify_relations(doc, &events, backends.triggers.as_ref(), opts).map_err(Error::at(Stage::Relations))
        },
    );
    for (e, d) in events.iter_mut().zip(durations?) {
        e.duration = Some(d);
    }
    let relations = relations?;

    let graph = build_temporal_graph(doc, &events, &relations).map_err(Error::at(Stage::Graph))?;
    AnnotationResult::new(document, typed.entities, events, relations, graph).map_err(Error::at(Stage::Graph))
}

fn negation_scopes(document: &Document, backends: &DomainBackends) -> Result<Vec<Scope>> {
    detect_cues(document, backends.cues.as_ref())?
        .iter()
        .map(|c| resolve_scope(document, c, backends.scopes.as_ref()))
        .collect()
}
