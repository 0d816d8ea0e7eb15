//! Trigger-only event extraction and pairwise temporal relation classification.
//!
//! Both tasks run against a [`TriggerRelationBackend`], which produces a
//! per-token event probability and, for an ordered pair of trigger spans, a
//! distribution over the relation label set. A trained scorer can be dropped in
//! by implementing the trait; [`crate::reference::ReferenceTriggerBackend`] is
//! the deterministic offline stand-in.

use std::collections::BTreeSet;

use crate::backend::{check_distribution, Concurrency, Gated};
use crate::error::{BackendError, Error, Result};
use crate::model::{Document, EventId, EventMention, RelationLabel, RelationLabelSet, Span, TemporalRelation};
use crate::par::{self, Execution};

pub const DEFAULT_THRESHOLD: f64 = 0.5;

pub trait TriggerRelationBackend: Send + Sync {
    fn label_set(&self) -> RelationLabelSet;

    /// Probability of being an event trigger for every document token, in order.
    fn event_scores(&self, document: &Document) -> Result<Vec<f64>, BackendError>;

    /// Distribution over `label_set().labels()` describing `source` relative to
    /// `target`; `source` precedes `target` in the text.
    fn relation_scores(
        &self,
        document: &Document,
        source: &Span,
        target: &Span,
    ) -> Result<Vec<f64>, BackendError>;

    fn concurrency(&self) -> Concurrency {
        Concurrency::Shared
    }
}

impl TriggerRelationBackend for Gated<dyn TriggerRelationBackend> {
    fn label_set(&self) -> RelationLabelSet {
        self.enter().1.label_set()
    }

    fn event_scores(&self, document: &Document) -> Result<Vec<f64>, BackendError> {
        let (_g, b) = self.enter();
        b.event_scores(document)
    }

    fn relation_scores(
        &self,
        document: &Document,
        source: &Span,
        target: &Span,
    ) -> Result<Vec<f64>, BackendError> {
        let (_g, b) = self.enter();
        b.relation_scores(document, source, target)
    }
}

/// One single-token GENERIC event per token scoring at least `threshold`.
pub fn extract_triggers(
    document: &Document,
    backend: &dyn TriggerRelationBackend,
    threshold: f64,
) -> Result<Vec<EventMention>> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidOption(format!(
            "trigger threshold must lie in (0, 1), got {threshold}"
        )));
    }
    let scores = backend.event_scores(document)?;
    if scores.len() != document.tokens().len() {
        return Err(Error::Contract(format!(
            "event_scores returned {} values for {} tokens",
            scores.len(),
            document.tokens().len()
        )));
    }
    if let Some(bad) = scores.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::Contract(format!("event score {bad} outside [0, 1]")));
    }
    let mut events = Vec::new();
    for (g, p) in scores.iter().enumerate() {
        if *p >= threshold {
            let (s, l) = document.locate(g).expect("token index within document");
            events.push(EventMention::generic(
                EventId(format!("t{}", events.len())),
                Span::single(s, l),
            ));
        }
    }
    Ok(events)
}

/// Highest-probability label; ties resolve in label-set order
/// (BEFORE < AFTER < SIMULTANEOUS < VAGUE < INCLUDES < INCLUDED_IN).
pub fn argmax_label(distribution: &[f64], label_set: RelationLabelSet) -> Result<RelationLabel> {
    let labels = label_set.labels();
    if distribution.len() != labels.len() {
        return Err(Error::Contract(format!(
            "relation distribution has {} entries, label set has {}",
            distribution.len(),
            labels.len()
        )));
    }
    check_distribution(distribution, 1e-6).map_err(Error::Contract)?;
    Ok(labels[crate::backend::argmax(distribution)])
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RelationOptions {
    /// Skip pairs whose sentences are further apart than this.
    pub max_sentence_gap: Option<usize>,
    pub execution: Execution,
}

/// Label every unordered pair of events once, earlier event as source.
pub fn classify_relations(
    document: &Document,
    events: &[EventMention],
    backend: &dyn TriggerRelationBackend,
    options: RelationOptions,
) -> Result<Vec<TemporalRelation>> {
    let mut seen = BTreeSet::new();
    for e in events {
        document.check_span(&e.trigger)?;
        if !seen.insert(&e.id) {
            return Err(Error::DuplicateEventId(e.id.to_string()));
        }
    }
    let mut ordered: Vec<&EventMention> = events.iter().collect();
    ordered.sort_by_key(|e| e.position());

    let mut pairs = Vec::new();
    for i in 0..ordered.len() {
        for j in i + 1..ordered.len() {
            let (a, b) = (ordered[i], ordered[j]);
            let gap = b.trigger.sentence_index - a.trigger.sentence_index;
            if options.max_sentence_gap.is_some_and(|max| gap > max) {
                continue;
            }
            pairs.push((a, b));
        }
    }

    let label_set = backend.label_set();
    par::try_map(options.execution, &pairs, |(a, b)| {
        let dist = backend.relation_scores(document, &a.trigger, &b.trigger)?;
        Ok(TemporalRelation {
            source: a.id.clone(),
            target: b.id.clone(),
            label: argmax_label(&dist, label_set)?,
        })
    })
}
