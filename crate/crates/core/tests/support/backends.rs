use rand::Rng;
use tempevent_core::backend::peaked;
use tempevent_core::triggers::TriggerRelationBackend;
use tempevent_core::{BackendError, Document, RelationLabelSet, Span};

use super::gen;

/// Event and relation scores drawn from a seeded hash of the input, covering
/// every label of the set.
pub struct Scrambled {
    pub label_set: RelationLabelSet,
    pub seed: u64,
}

impl TriggerRelationBackend for Scrambled {
    fn label_set(&self) -> RelationLabelSet {
        self.label_set
    }

    fn event_scores(&self, document: &Document) -> Result<Vec<f64>, BackendError> {
        let mut rng = gen::rng(self.seed);
        Ok(document.tokens().iter().map(|_| rng.random_range(0.0..1.0)).collect())
    }

    fn relation_scores(&self, _: &Document, source: &Span, target: &Span) -> Result<Vec<f64>, BackendError> {
        let key = self.seed ^ ((source.sentence_index * 131 + source.token_start * 17 + target.token_start) as u64);
        let mut rng = gen::rng(key);
        let labels = self.label_set.labels();
        Ok(peaked(labels.len(), rng.random_range(0..labels.len()), 0.6))
    }
}
